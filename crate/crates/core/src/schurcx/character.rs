use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lr::{weyl_character, RepSum};
use crate::partitions::Weight;

/// Decomposes a `GL(n)` character (weight ↦ multiplicity) into Weyl characters.
///
/// Peels off the lexicographically largest remaining weight, which is
/// dominant for a symmetric character, together with its full Weyl character.
pub fn character_decompose(character: &BTreeMap<Weight, i64>, n: usize) -> Result<RepSum> {
    let mut residual: BTreeMap<Weight, i64> = BTreeMap::new();
    for (w, &m) in character {
        w.check_len(n)?;
        if m != 0 {
            residual.insert(w.clone(), m);
        }
    }
    for (w, &m) in &residual {
        for i in 0..n.saturating_sub(1) {
            let mut e = w.clone().into_entries();
            e.swap(i, i + 1);
            let s = Weight::new(e);
            if residual.get(&s).copied().unwrap_or(0) != m {
                return Err(Error::NonSymmetricCharacter(format!("{w} has multiplicity {m}, {s} does not")));
            }
        }
    }
    let mut out = RepSum::zero(n);
    while let Some((top, &m)) = residual.last_key_value() {
        let top = top.clone();
        if m < 0 {
            return Err(Error::NegativeResidual(format!("{top} ({m})")));
        }
        for (w, k) in weyl_character(&top) {
            let e = residual.entry(w.clone()).or_insert(0);
            *e -= m * k as i64;
            if *e == 0 {
                residual.remove(&w);
            }
        }
        out.add_term(top, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr::character_of;
    use proptest::prelude::*;

    fn w(e: &[i32]) -> Weight {
        Weight::new(e.to_vec())
    }

    #[test]
    fn small_characters() {
        let c: BTreeMap<Weight, i64> = [(w(&[1, 0, 0]), 1), (w(&[0, 1, 0]), 1), (w(&[0, 0, 1]), 1)].into();
        assert_eq!(character_decompose(&c, 3).unwrap(), RepSum::single(w(&[1, 0, 0]), 1));
        let c: BTreeMap<Weight, i64> = [(w(&[0, 0]), 2)].into();
        assert_eq!(character_decompose(&c, 2).unwrap().mult(&w(&[0, 0])), 2);
        let mut s = RepSum::single(w(&[2, 0]), 1);
        s.add_term(w(&[1, 1]), 1);
        assert_eq!(character_decompose(&character_of(&s), 2).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let c: BTreeMap<Weight, i64> = [(w(&[1, 0]), 1)].into();
        assert!(matches!(character_decompose(&c, 2), Err(Error::NonSymmetricCharacter(_))));
        let c: BTreeMap<Weight, i64> = [(w(&[1, 0]), 1), (w(&[0, 1]), 1), (w(&[0, 0]), 0)].into();
        assert!(character_decompose(&c, 2).is_ok());
        let mut c = character_of(&RepSum::single(w(&[2, 0]), 1));
        *c.get_mut(&w(&[1, 1])).unwrap() -= 2;
        assert!(matches!(character_decompose(&c, 2), Err(Error::NegativeResidual(_))));
    }

    proptest! {
        #[test]
        fn roundtrip(terms in prop::collection::vec((prop::collection::vec(-2i32..3, 3), 1i64..3), 0..4)) {
            let mut s = RepSum::zero(3);
            for (mut e, m) in terms {
                e.sort_unstable_by(|a, b| b.cmp(a));
                s.add_term(Weight::new(e), m);
            }
            prop_assert_eq!(character_decompose(&character_of(&s), 3).unwrap(), s);
        }
    }
}
