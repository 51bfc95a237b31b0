//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// A sparse vector: coordinate index to non-zero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `y += a·x`, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&k, v) in x {
        let e = y.entry(k).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(&k);
        }
    }
}

pub fn scale(x: &SparseVec, a: &Q) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(&k, v)| (k, v * a)).collect()
}

pub fn unit(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Q::one());
    v
}

/// Row echelon form built incrementally. Each stored row has its largest
/// coordinate as pivot, normalized to one. Optionally remembers how every
/// row is combined from the inserted vectors.
pub struct Echelon {
    pivots: BTreeMap<usize, usize>,
    rows: Vec<SparseVec>,
    combos: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new(), rows: Vec::new(), combos: None }
    }

    /// An echelon form that records combinations, for kernels and coordinates.
    pub fn tracking() -> Self {
        Echelon { pivots: BTreeMap::new(), rows: Vec::new(), combos: Some(Vec::new()) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`, labelled `id`. If `v` depends on earlier vectors, returns
    /// the relation `Σ c_j · v_j = 0` among inserted labels (when tracking) and
    /// leaves the form unchanged.
    pub fn insert(&mut self, v: SparseVec, id: usize) -> Option<SparseVec> {
        let mut r = v;
        let mut combo = self.combos.as_ref().map(|_| unit(id));
        while let Some((&k, c)) = r.last_key_value() {
            match self.pivots.get(&k) {
                Some(&ri) => {
                    let c = -c.clone();
                    axpy(&mut r, &c, &self.rows[ri]);
                    if let (Some(cb), Some(all)) = (combo.as_mut(), self.combos.as_ref()) {
                        axpy(cb, &c, &all[ri]);
                    }
                }
                None => {
                    let inv = c.recip();
                    let r = scale(&r, &inv);
                    self.pivots.insert(k, self.rows.len());
                    self.rows.push(r);
                    if let (Some(cb), Some(all)) = (combo, self.combos.as_mut()) {
                        all.push(scale(&cb, &inv));
                    }
                    return None;
                }
            }
        }
        Some(combo.unwrap_or_default())
    }

    /// Writes `v` as a combination of the inserted vectors (by label).
    /// Returns `None` if `v` is not in their span. Requires tracking.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let combos = self.combos.as_ref().expect("coordinates need a tracking echelon form");
        let mut r = v.clone();
        let mut out = SparseVec::new();
        while let Some((&k, c)) = r.last_key_value() {
            let ri = *self.pivots.get(&k)?;
            let c = c.clone();
            axpy(&mut r, &-c.clone(), &self.rows[ri]);
            axpy(&mut out, &c, &combos[ri]);
        }
        Some(out)
    }
}

impl Echelon {
    /// The reduced row echelon form: every pivot coordinate is zero in all
    /// other rows. Rows are returned with their pivots, in increasing pivot order.
    pub fn into_reduced(self) -> Vec<(usize, SparseVec)> {
        let order: Vec<(usize, usize)> = self.pivots.iter().map(|(&k, &r)| (k, r)).collect();
        let mut rows: Vec<Option<SparseVec>> = self.rows.into_iter().map(Some).collect();
        let mut done: Vec<(usize, SparseVec)> = Vec::with_capacity(order.len());
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, ri) in order {
            let mut r = rows[ri].take().unwrap();
            let below: Vec<usize> = r.range(..k).map(|(&c, _)| c).filter(|c| index.contains_key(c)).collect();
            for c in below {
                if let Some(coef) = r.get(&c).cloned() {
                    axpy(&mut r, &-coef, &done[index[&c]].1);
                }
            }
            index.insert(k, done.len());
            done.push((k, r));
        }
        done
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for (i, v) in vectors.into_iter().enumerate() {
        e.insert(v, i);
    }
    e.rank()
}

/// A basis of `{a : Σ a_c · images[c] = 0}`, in the coordinates of the labels `c`.
pub fn kernel(images: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for (i, v) in images.into_iter().enumerate() {
        if let Some(rel) = e.insert(v, i) {
            out.push(rel);
        }
    }
    out
}

/// `Σ_c a_c · vectors[c]`.
pub fn combine(a: &SparseVec, vectors: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for (&c, coef) in a {
        axpy(&mut out, coef, &vectors[c]);
    }
    out
}
