//! Partitions, integer weights and the Bott normalization of a weight.
//!
//! A [`Partition`] never stores trailing zeros, so two partitions that differ
//! only by padding compare (and hash) equal. A [`Weight`] always carries its
//! length explicitly since several general linear groups of different rank
//! coexist in the quiver computations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts.into_iter().map(i64::from).collect()));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds a partition from parts already known to be non-increasing.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        Self::from_sorted(vec![k])
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the stored parts.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.get(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (1..=cols as u32).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect();
        Partition(parts)
    }

    /// Side of the Durfee square.
    pub fn durfee(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &p)| p as usize > *i).count()
    }

    /// Returns `(u, λ⁺, λ⁻)`: the Durfee size, the part right of the square
    /// and the part below it.
    pub fn durfee_split(&self) -> (usize, Partition, Partition) {
        let u = self.durfee();
        let plus = self.0[..u].iter().map(|&p| p - u as u32).collect();
        let minus = self.0[u..].to_vec();
        (u, Partition::from_sorted(plus), Partition::from_sorted(minus))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// Parts padded with zeros to length `n`; `None` if there are more than `n` parts.
    pub fn padded(&self, n: usize) -> Option<Vec<u32>> {
        if self.len() > n {
            return None;
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Some(v)
    }

    pub fn to_weight(&self, n: usize) -> Result<Weight> {
        self.padded(n)
            .map(|v| Weight(v.into_iter().map(|p| p as i32).collect()))
            .ok_or(Error::LengthMismatch { expected: n, found: self.len() })
    }

    /// `(k^r)`, the `r × k` rectangle.
    pub fn rectangle(rows: usize, k: u32) -> Partition {
        Partition::from_sorted(vec![k; rows])
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A sequence of integers of fixed length, e.g. a weight of `GL(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i32>);

impl Weight {
    pub fn new(entries: Vec<i32>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn min(&self) -> i32 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// The weight of the dual representation: reverse and negate.
    pub fn dual(&self) -> Weight {
        Weight(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn shifted(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|&x| x + k).collect())
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    /// The partition with the same entries, if dominant and non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.is_dominant() && self.min() >= 0 {
            Some(Partition::from_sorted(self.0.iter().map(|&x| x as u32).collect()))
        } else {
            None
        }
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, found: self.len() })
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The outcome of normalizing a weight with the exchange rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottNormal {
    /// Minimal number of exchanges.
    pub length: u32,
    /// The resulting non-increasing weight.
    pub weight: Weight,
}

/// Sorts `δ` with the exchange rule `σ_i·δ = (…, δ_{i+1}−1, δ_i+1, …)`.
///
/// Returns `None` when `δ` is singular, i.e. `δ + ρ` has a repeated entry.
/// Otherwise the exchange count equals the number of inversions of `δ + ρ`.
pub fn bott_normalize(delta: &Weight) -> Option<BottNormal> {
    let n = delta.len();
    let shifted: Vec<i64> = delta.entries().iter().enumerate().map(|(i, &d)| d as i64 + (n - 1 - i) as i64).collect();
    let mut inversions = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            match shifted[i].cmp(&shifted[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let weight = sorted.iter().enumerate().map(|(i, &s)| (s - (n - 1 - i) as i64) as i32).collect();
    Some(BottNormal { length: inversions, weight: Weight(weight) })
}

/// All partitions of `size` with at most `max_parts` parts, each at most `max_part`,
/// in lexicographically decreasing order.
pub fn partitions_of(size: u32, max_parts: usize, max_part: u32) -> Vec<Partition> {
    fn rec(rest: u32, max_parts: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        if max_parts == 0 {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            if (p as u64) * (max_parts as u64) < rest as u64 {
                break;
            }
            cur.push(p);
            rec(rest - p, max_parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions fitting in a `rows × cols` box, ordered by size then lexicographically decreasing.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    (0..=rows as u32 * cols).flat_map(|s| partitions_of(s, rows, cols)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Breadth-first search over exchange sequences; independent of the
    /// inversion-count implementation.
    fn exchange_oracle(delta: &[i32]) -> Option<(u32, Vec<i32>)> {
        let n = delta.len();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(delta.to_vec(), 0u32)]);
        seen.insert(delta.to_vec());
        let max_len = (n * n.saturating_sub(1) / 2) as u32;
        while let Some((w, k)) = queue.pop_front() {
            if w.windows(2).all(|x| x[0] >= x[1]) {
                return Some((k, w));
            }
            if k == max_len {
                continue;
            }
            for i in 0..n.saturating_sub(1) {
                let mut next = w.clone();
                next[i] = w[i + 1] - 1;
                next[i + 1] = w[i] + 1;
                if seen.insert(next.clone()) {
                    queue.push_back((next, k + 1));
                }
            }
        }
        None
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 1]).conjugate(), p(&[2, 1, 1, 1]));
    }

    #[test]
    fn durfee_examples() {
        assert_eq!(Partition::empty().durfee_split(), (0, Partition::empty(), Partition::empty()));
        assert_eq!(p(&[3, 3, 3]).durfee_split(), (3, Partition::empty(), Partition::empty()));
        assert_eq!(p(&[4, 1]).durfee_split(), (1, p(&[3]), p(&[1])));
    }

    #[test]
    fn trailing_zeros_normalized() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn bott_examples() {
        let r = bott_normalize(&Weight::new(vec![2, 1, 0])).unwrap();
        assert_eq!((r.length, r.weight), (0, Weight::new(vec![2, 1, 0])));
        assert!(bott_normalize(&Weight::new(vec![0, 1])).is_none());
        let r = bott_normalize(&Weight::new(vec![0, 0, 3])).unwrap();
        assert_eq!((r.length, r.weight), (2, Weight::new(vec![1, 1, 1])));
        assert_eq!(exchange_oracle(&[0, 0, 3]), Some((2, vec![1, 1, 1])));
    }

    #[test]
    fn partitions_in_box_count() {
        // binomial(6, 3) partitions fit in a 3×3 box
        assert_eq!(partitions_in_box(3, 3).len(), 20);
        assert_eq!(partitions_of(4, 4, 4).len(), 5);
    }

    proptest! {
        #[test]
        fn bott_matches_exchange_search(delta in prop::collection::vec(-3i32..=3, 1..=4)) {
            let got = bott_normalize(&Weight::new(delta.clone())).map(|b| (b.length, b.weight.into_entries()));
            prop_assert_eq!(got, exchange_oracle(&delta));
        }

        #[test]
        fn conjugation_is_involutive(parts in prop::collection::vec(0u32..6, 0..6)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
            prop_assert_eq!(lam.conjugate().size(), lam.size());
            let (u, plus, minus) = lam.durfee_split();
            prop_assert_eq!(plus.size() + minus.size() + (u * u) as u32, lam.size());
        }
    }
}
