//! Borel–Weil–Bott on Grassmannians, the relative pushforward from the
//! two-step flag variety, and the Grassmannian quotient factor.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lr::RepSum;
use crate::partitions::{bott_normalize, Partition, Weight};

/// Whether a cohomology table is known exactly or only as an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    Ambiguous,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Ambiguous => "ambiguous",
        }
    }
}

/// Cohomology groups of a homogeneous bundle, as `GL(n)`-representations by degree.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    n: usize,
    by_degree: BTreeMap<u32, RepSum>,
    pub status: Status,
}

impl CohomologyTable {
    pub fn zero(n: usize) -> Self {
        CohomologyTable { n, by_degree: BTreeMap::new(), status: Status::Exact }
    }

    pub fn single(degree: u32, rep: RepSum) -> Self {
        let mut t = CohomologyTable::zero(rep.rank());
        t.add(degree, &rep);
        t
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, degree: u32, rep: &RepSum) {
        let slot = self.by_degree.entry(degree).or_insert_with(|| RepSum::zero(self.n));
        slot.add(rep);
        if slot.is_empty() {
            self.by_degree.remove(&degree);
        }
    }

    pub fn add_term(&mut self, degree: u32, w: Weight, mult: i64) {
        self.add(degree, &RepSum::single(w, mult));
    }

    pub fn merge(&mut self, other: &CohomologyTable) {
        for (&d, r) in &other.by_degree {
            self.add(d, r);
        }
    }

    pub fn get(&self, degree: u32) -> Option<&RepSum> {
        self.by_degree.get(&degree)
    }

    pub fn mult(&self, degree: u32, w: &Weight) -> i64 {
        self.get(degree).map_or(0, |r| r.mult(w))
    }

    pub fn degrees(&self) -> impl Iterator<Item = (u32, &RepSum)> {
        self.by_degree.iter().map(|(&d, r)| (d, r))
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// At most one degree is populated.
    pub fn is_concentrated(&self) -> bool {
        self.by_degree.len() <= 1
    }

    /// The alternating sum `Σ (−1)^i H^i` as a virtual representation.
    pub fn euler_characteristic(&self) -> RepSum {
        let mut chi = RepSum::zero(self.n);
        for (&d, r) in &self.by_degree {
            chi.add(&r.scaled(if d % 2 == 0 { 1 } else { -1 }));
        }
        chi
    }

    /// Every representation replaced by its dual, degrees unchanged.
    pub fn dual(&self) -> CohomologyTable {
        CohomologyTable {
            n: self.n,
            by_degree: self.by_degree.iter().map(|(&d, r)| (d, r.dual())).collect(),
            status: self.status,
        }
    }

    pub fn shifted(&self, k: u32) -> CohomologyTable {
        CohomologyTable {
            n: self.n,
            by_degree: self.by_degree.iter().map(|(&d, r)| (d + k, r.clone())).collect(),
            status: self.status,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

impl fmt::Debug for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {{", self.status.as_str())?;
        for (i, (d, r)) in self.by_degree.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "H{d}: {r}")?;
        }
        write!(f, "}}")
    }
}

/// Bott's theorem for a single weight: the table of `L(δ)` is either zero or
/// concentrated in degree `N(δ)`.
pub fn bott_table(delta: &Weight) -> CohomologyTable {
    match bott_normalize(delta) {
        None => CohomologyTable::zero(delta.len()),
        Some(b) => CohomologyTable::single(b.length, RepSum::single(b.weight, 1)),
    }
}

/// Cohomology of `S_λR ⊗ S_μQ*` on `Gr(r, n)`, via `δ = (−μ, λ)`.
pub fn cohomology_grassmannian(r: usize, n: usize, lambda: &Partition, mu: &Partition) -> Result<CohomologyTable> {
    if r > n {
        return Err(Error::Precondition(format!("Gr({r},{n}) needs r ≤ n")));
    }
    let l = lambda.to_weight(r).map_err(|_| Error::Precondition(format!("λ = {lambda} has more than {r} parts")))?;
    let m = mu.to_weight(n - r).map_err(|_| Error::Precondition(format!("μ = {mu} has more than {} parts", n - r)))?;
    Ok(bott_table(&m.dual().concat(&l)))
}

/// `R^• π_* S_γ(R₂/R₁)` for `π: Flag(r₁,r₂,n) → Gr(r₁,n)`.
///
/// Returns the single non-vanishing degree `u·(n−r₂)` and the resulting
/// weight on `W/R₁`, or `None` if everything vanishes.
pub fn pushforward_flag_factor(gamma: &Partition, r1: usize, r2: usize, n: usize) -> Result<Option<(u32, Weight)>> {
    if !(r1 <= r2 && r2 <= n) {
        return Err(Error::Precondition(format!("need r1 ≤ r2 ≤ n, got ({r1},{r2},{n})")));
    }
    if gamma.len() > r2 - r1 {
        return Err(Error::Precondition(format!("γ = {gamma} has more than {} parts", r2 - r1)));
    }
    let m = (n - r2) as u32;
    let (u, _, _) = gamma.durfee_split();
    if u > 0 && gamma.get(u - 1) < u as u32 + m {
        return Ok(None);
    }
    let mut w = Vec::with_capacity(n - r1);
    w.extend((0..u).map(|i| (gamma.get(i) - m) as i32));
    w.extend(std::iter::repeat_n(u as i32, m as usize));
    w.extend((u..r2 - r1).map(|i| gamma.get(i) as i32));
    Ok(Some((u as u32 * m, Weight::new(w))))
}

/// Cohomology of `S_{λ′}Q*` on `Gr(c, d₃)`, as a weight on `V₃*`.
///
/// Nonzero only when `λ₁ ≤ d₃ − c` and `λ_{u+c} ≥ u` for `u` the Durfee size of `λ`;
/// then it sits in degree `c·u` with weight `(λ′₁−c, …, λ′_u−c, u^c, λ′_{u+1}, …)`.
pub fn grassmannian_quotient_factor(lambda: &Partition, c: usize, d3: usize) -> Result<Option<(u32, Weight)>> {
    if c > d3 || lambda.first() as usize > d3 {
        return Err(Error::Precondition(format!("λ = {lambda} does not fit Gr({c},{d3})")));
    }
    if lambda.first() as usize > d3 - c {
        return Ok(None);
    }
    let (u, _, _) = lambda.durfee_split();
    if u > 0 && (lambda.get(u + c - 1) as usize) < u {
        return Ok(None);
    }
    let conj = lambda.conjugate();
    let mut w = Vec::with_capacity(d3);
    w.extend((0..u).map(|i| conj.get(i) as i32 - c as i32));
    w.extend(std::iter::repeat_n(u as i32, c));
    w.extend((u..d3 - c).map(|i| conj.get(i) as i32));
    Ok(Some(((c * u) as u32, Weight::new(w))))
}
