//! Super-commutative polynomials in variables `z_{v,j}`, where `v` is a
//! letter (even or odd) and `j` a column index of the auxiliary space `F`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::linalg::{q, Q};

pub type Var = u16;

/// A monomial as a sorted list of variables. Even variables always have
/// smaller ids than odd ones, so the odd factors form a strictly increasing tail.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<Var>);

pub type Poly = HashMap<Monomial, Q>;

/// Variable numbering for a fixed alphabet and a fixed number of `F` columns.
#[derive(Clone, Debug)]
pub struct Alphabet {
    /// `true` for odd letters; even letters come first.
    pub odd: Vec<bool>,
    pub width: usize,
    first_odd: Var,
}

impl Alphabet {
    pub fn new(odd: Vec<bool>, width: usize) -> Self {
        assert!(odd.windows(2).all(|w| w[0] <= w[1]), "even letters must precede odd ones");
        let evens = odd.iter().filter(|&&o| !o).count();
        Alphabet { odd, width: width.max(1), first_odd: (evens * width.max(1)) as Var }
    }

    pub fn var(&self, letter: usize, j: usize) -> Var {
        (letter * self.width + j) as Var
    }

    pub fn letter(&self, v: Var) -> usize {
        v as usize / self.width
    }

    pub fn column(&self, v: Var) -> usize {
        v as usize % self.width
    }

    /// Brings a product of variables (in the given order) to canonical form.
    /// Returns the sign, or `None` if an odd variable repeats.
    pub fn canonical(&self, vars: &mut [Var]) -> Option<i64> {
        let split = partition_in_place(vars, |&v| v < self.first_odd);
        vars[..split].sort_unstable();
        let odd = &mut vars[split..];
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..odd.len() {
            let mut k = i;
            while k > 0 && odd[k - 1] > odd[k] {
                odd.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
            if k > 0 && odd[k - 1] == odd[k] {
                return None;
            }
        }
        Some(sign)
    }

    /// Applies a letter map as a derivation: `targets[l]` lists `(l', c)` with
    /// `z_{l,j} ↦ Σ c · z_{l',j}`. The map is odd exactly when it sends even
    /// letters to odd ones.
    pub fn derive(&self, p: &Poly, targets: &[Vec<(usize, i64)>]) -> Poly {
        let mut out = Poly::new();
        for (m, coef) in p {
            self.derive_monomial(m, targets, &mut |mono, s| {
                let e = out.entry(mono).or_insert_with(Q::zero);
                *e += coef * q(s);
            });
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn derive_monomial(&self, m: &Monomial, targets: &[Vec<(usize, i64)>], emit: &mut dyn FnMut(Monomial, i64)) {
        let vars = &m.0;
        let mut t = 0;
        while t < vars.len() {
            let v = vars[t];
            // repeated even variables: differentiate once, times the exponent
            let mut run = 1;
            while t + run < vars.len() && vars[t + run] == v {
                run += 1;
            }
            let l = self.letter(v);
            let j = self.column(v);
            for &(l2, c) in &targets[l] {
                let w = self.var(l2, j);
                let mut next: Vec<Var> = Vec::with_capacity(vars.len());
                next.extend_from_slice(&vars[..t]);
                next.push(w);
                next.extend_from_slice(&vars[t + 1..]);
                // Replacing an even variable by an odd one: the odd factor
                // starts in front of all odd variables, so `canonical` counts
                // exactly the sign of the odd derivation.
                if let Some(s) = self.canonical(&mut next) {
                    emit(Monomial(next), s * c * run as i64);
                }
            }
            t += run;
        }
    }

    /// `Σ_σ sgn σ · z_{v₁,σ(1)} ⋯ z_{v_h,σ(h)}` for a column `v₁ … v_h`.
    pub fn column_determinant(&self, column: &[usize]) -> Poly {
        let h = column.len();
        let mut out = Poly::new();
        let mut perm: Vec<usize> = (0..h).collect();
        permutations(&mut perm, 0, 1, &mut |perm, sgn| {
            let mut vars: Vec<Var> = column.iter().zip(perm).map(|(&l, &j)| self.var(l, j)).collect();
            if let Some(s) = self.canonical(&mut vars) {
                let e = out.entry(Monomial(vars)).or_insert_with(Q::zero);
                *e += q(s * sgn);
            }
        });
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let mut vars = Vec::with_capacity(ma.0.len() + mb.0.len());
                vars.extend_from_slice(&ma.0);
                vars.extend_from_slice(&mb.0);
                if let Some(s) = self.canonical(&mut vars) {
                    let e = out.entry(Monomial(vars)).or_insert_with(Q::zero);
                    *e += ca * cb * q(s);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Stable partition; returns the number of elements satisfying `pred`.
fn partition_in_place(v: &mut [Var], pred: impl Fn(&Var) -> bool) -> usize {
    let mut tmp: Vec<Var> = v.iter().copied().filter(|x| pred(x)).collect();
    let k = tmp.len();
    tmp.extend(v.iter().copied().filter(|x| !pred(x)));
    v.copy_from_slice(&tmp);
    k
}

fn permutations(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut dyn FnMut(&[usize], i64)) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { sign } else { -sign }, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_variables_anticommute() {
        let a = Alphabet::new(vec![false, true], 2);
        let x0 = a.var(0, 0);
        let (y0, y1) = (a.var(1, 0), a.var(1, 1));
        let mut v = vec![y1, x0, y0];
        assert_eq!(a.canonical(&mut v), Some(-1));
        assert_eq!(v, vec![x0, y0, y1]);
        let mut v = vec![y0, y0];
        assert_eq!(a.canonical(&mut v), None);
    }

    #[test]
    fn column_determinants() {
        let a = Alphabet::new(vec![false, false, true], 2);
        // repeated even letter: the minor vanishes
        assert!(a.column_determinant(&[0, 0]).is_empty());
        assert_eq!(a.column_determinant(&[0, 1]).len(), 2);
        // repeated odd letter: ξ₁ξ₂ − ξ₂ξ₁ = 2ξ₁ξ₂
        let d = a.column_determinant(&[2, 2]);
        assert_eq!(d.len(), 1);
        assert_eq!(d.values().next().unwrap(), &q(2));
    }

    #[test]
    fn odd_derivation_squares_to_zero() {
        let a = Alphabet::new(vec![false, false, true, true], 2);
        let d: Vec<Vec<(usize, i64)>> = vec![vec![(2, 1)], vec![(3, 1)], vec![], vec![]];
        let p = a.multiply(&a.column_determinant(&[0, 1]), &a.column_determinant(&[0]));
        let dp = a.derive(&p, &d);
        assert!(!dp.is_empty());
        assert!(a.derive(&dp, &d).is_empty());
    }
}
