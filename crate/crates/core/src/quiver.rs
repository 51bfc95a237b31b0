//! Orbit closures of representations of the equioriented quiver
//! `1 → 2 → 3` with dimension vector `(d₁, d₂, d₃)`: rank data, the
//! desingularization by `Flag(r₁, r₂, d₂) × Gr(c, d₃)`, and the terms of the
//! minimal free resolution of the coordinate ring of an orbit closure.
//!
//! A representation is a pair `X: V₁ → V₂`, `Y: V₂ → V₃` with ranks
//! `a = rk X`, `b = rk Y`, `c = rk YX`. The coordinate ring is
//! `A = Sym(V₁ ⊗ V₂* ⊕ V₂ ⊗ V₃*)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::{grassmannian_quotient_factor, Status};
use crate::error::{Error, Result};
use crate::partitions::{partitions_in_box, Partition, Weight};
use crate::split::{cohomology_capped, FlagContext, Method};

/// Dimension vector, ranks and multiplicities of the indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuiverDatum {
    pub d: [usize; 3],
    /// `(a, b, c)` with `a = rk X`, `b = rk Y`, `c = rk YX`.
    pub ranks: [usize; 3],
    /// `(a₁, a₂, a₃, b₁, b₂, c)`: simples at each vertex, the two length-two
    /// indecomposables, and the projective-injective.
    pub mults: [usize; 6],
}

/// Parameters of the desingularization `Flag(r₁, r₂, n) × Gr(c, d₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesingParams {
    pub r1: usize,
    pub r2: usize,
    pub n: usize,
    pub c: usize,
    pub d3: usize,
}

impl DesingParams {
    pub fn flag(&self) -> Result<FlagContext> {
        FlagContext::new(self.r1, self.r2, self.n)
    }
}

pub fn datum_from_ranks(d: [usize; 3], ranks: [usize; 3]) -> Result<QuiverDatum> {
    let [d1, d2, d3] = d.map(|x| x as i64);
    let [a, b, c] = ranks.map(|x| x as i64);
    let values = [
        ("a1 = d1 - a", d1 - a),
        ("a2 = d2 - a - b + c", d2 - a - b + c),
        ("a3 = d3 - b", d3 - b),
        ("b1 = a - c", a - c),
        ("b2 = b - c", b - c),
        ("c", c),
    ];
    let mut mults = [0usize; 6];
    for (slot, (name, v)) in mults.iter_mut().zip(values) {
        if v < 0 {
            return Err(Error::InfeasibleRanks(format!(
                "{name} = {v} < 0 for d = ({d1},{d2},{d3}), ranks = ({a},{b},{c})"
            )));
        }
        *slot = v as usize;
    }
    Ok(QuiverDatum { d, ranks, mults })
}

impl QuiverDatum {
    pub fn params(&self) -> DesingParams {
        let [_, d2, d3] = self.d;
        let [a, _, c] = self.ranks;
        let b2 = self.mults[4];
        DesingParams { r1: a, r2: d2 - b2, n: d2, c, d3 }
    }

    /// Rank of `ξ = V₁ ⊗ (V₂/R₁)* ⊕ R₂ ⊗ Q*`.
    pub fn rank_xi(&self) -> usize {
        let p = self.params();
        self.d[0] * (p.n - p.r1) + p.r2 * (p.d3 - p.c)
    }

    /// Dimension of `Flag(r₁, r₂, n) × Gr(c, d₃)`.
    pub fn dim_desingularization(&self) -> usize {
        let p = self.params();
        p.r1 * (p.n - p.r1) + (p.r2 - p.r1) * (p.n - p.r2) + p.c * (p.d3 - p.c)
    }

    /// Whether every representation degenerates to this orbit, i.e. the ranks
    /// are the generic ones.
    pub fn is_dense(&self) -> bool {
        let [d1, d2, d3] = self.d;
        self.ranks == [d1.min(d2), d2.min(d3), d1.min(d2).min(d3)]
    }
}

impl fmt::Display for QuiverDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [d1, d2, d3] = self.d;
        let [a, b, c] = self.ranks;
        write!(f, "d=({d1},{d2},{d3}) ranks=({a},{b},{c})")
    }
}

pub fn desingularization_params(q: &QuiverDatum) -> DesingParams {
    q.params()
}

/// `rank ξ − dim Flag(r₁, r₂, n) − dim Gr(c, d₃)`.
pub fn orbit_codimension(q: &QuiverDatum) -> usize {
    q.rank_xi() - q.dim_desingularization()
}

/// One summand `S_{μ′}V₁ ⊗ S_μ(V₂/R₁)* ⊗ S_λR₂ ⊗ S_{λ′}Q*` of `Λᵗξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiSummand {
    pub mu: Partition,
    pub lambda: Partition,
}

/// Cauchy decomposition of `Λᵗξ`.
pub fn xi_exterior_summands(q: &QuiverDatum, t: usize) -> Result<Vec<XiSummand>> {
    if t > q.rank_xi() {
        return Err(Error::Precondition(format!("t = {t} exceeds rank ξ = {}", q.rank_xi())));
    }
    let p = q.params();
    let lambdas = partitions_in_box(p.r2, (p.d3 - p.c) as u32);
    let mus = partitions_in_box(p.n - p.r1, q.d[0] as u32);
    let mut out = Vec::new();
    for lambda in &lambdas {
        let rest = t as i64 - lambda.size() as i64;
        if rest < 0 {
            continue;
        }
        for mu in mus.iter().filter(|m| m.size() as i64 == rest) {
            out.push(XiSummand { mu: mu.clone(), lambda: lambda.clone() });
        }
    }
    out.sort();
    Ok(out)
}

/// An irreducible `GL(V₁) × GL(V₂) × GL(V₃)`-module `S_{w1}V₁ ⊗ S_{w2}V₂ ⊗ S_{w3}V₃*`
/// with multiplicity. Note that `w3` is a weight of `V₃*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub w1: Weight,
    pub w2: Weight,
    pub w3: Weight,
    pub mult: u64,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult > 1 {
            write!(f, "{}·", self.mult)?;
        }
        write!(f, "S{}V1 ⊗ S{}V2 ⊗ S{}V3*", self.w1, self.w2, self.w3)
    }
}

/// The part of `F_i` generated in degree `twist`, i.e. `⊕ summand ⊗ A(−twist)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantTerm {
    pub i: usize,
    pub twist: usize,
    /// Sorted with weights lexicographically descending.
    pub summands: Vec<Summand>,
    /// Set when some contribution came from an unresolved split computation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ambiguous: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub datum: QuiverDatum,
    pub codim: usize,
    /// Terms are computed for `i ≤ max_term`.
    pub max_term: usize,
    /// Ordered by `(i, twist)`.
    pub terms: Vec<EquivariantTerm>,
}

impl Resolution {
    pub fn term(&self, i: usize) -> impl Iterator<Item = &EquivariantTerm> {
        self.terms.iter().filter(move |t| t.i == i)
    }

    /// Number of irreducible summands of `F_i`, counted with multiplicity.
    pub fn summand_count(&self, i: usize) -> u64 {
        self.term(i).flat_map(|t| &t.summands).map(|s| s.mult).sum()
    }

    pub fn summand_counts(&self) -> Vec<u64> {
        (0..=self.max_term).map(|i| self.summand_count(i)).collect()
    }

    /// Largest `i` with `F_i ≠ 0` among the computed terms.
    pub fn length(&self) -> usize {
        self.terms.iter().map(|t| t.i).max().unwrap_or(0)
    }

    pub fn is_ambiguous(&self) -> bool {
        self.terms.iter().any(|t| t.ambiguous)
    }
}

type Contribution = (usize, usize, Summand, bool);

/// Summed multiplicities per `(w1, w2, w3)`, and whether any contribution was ambiguous.
type TermSlot = (BTreeMap<(Weight, Weight, Weight), u64>, bool);

/// The terms `F_i = ⊕_j H^j(Λ^{i+j}ξ) ⊗ A(−i−j)` for `i ≤ max_term`.
///
/// Ambiguous split results abort the computation unless `method` is
/// split-only, in which case the affected terms are flagged.
pub fn resolution_terms(q: &QuiverDatum, max_term: usize, method: Method, cap: usize) -> Result<Resolution> {
    let p = q.params();
    let ctx = p.flag()?;
    let t_max = q.rank_xi().min(max_term + q.dim_desingularization());
    let mut pairs = Vec::new();
    for t in 0..=t_max {
        pairs.extend(xi_exterior_summands(q, t)?.into_iter().map(|s| (t, s)));
    }
    let parts: Vec<Vec<Contribution>> =
        pairs.par_iter().map(|(t, s)| contributions(q, ctx, *t, s, max_term, method, cap)).collect::<Result<_>>()?;

    let mut acc: BTreeMap<(usize, usize), TermSlot> = BTreeMap::new();
    for (i, twist, s, ambiguous) in parts.into_iter().flatten() {
        let slot = acc.entry((i, twist)).or_default();
        *slot.0.entry((s.w1, s.w2, s.w3)).or_insert(0) += s.mult;
        slot.1 |= ambiguous;
    }
    let terms: Vec<EquivariantTerm> = acc
        .into_iter()
        .map(|((i, twist), (summands, ambiguous))| EquivariantTerm {
            i,
            twist,
            summands: summands.into_iter().rev().map(|((w1, w2, w3), mult)| Summand { w1, w2, w3, mult }).collect(),
            ambiguous,
        })
        .collect();

    let res = Resolution { datum: *q, codim: orbit_codimension(q), max_term, terms };
    let f0: Vec<&EquivariantTerm> = res.term(0).collect();
    let trivial = Summand { w1: Weight::zero(q.d[0]), w2: Weight::zero(q.d[1]), w3: Weight::zero(q.d[2]), mult: 1 };
    if f0.len() != 1 || f0[0].twist != 0 || f0[0].summands != [trivial] {
        return Err(Error::Verification(format!("F_0 of {q} is not the coordinate ring")));
    }
    Ok(res)
}

fn contributions(
    q: &QuiverDatum,
    ctx: FlagContext,
    t: usize,
    s: &XiSummand,
    max_term: usize,
    method: Method,
    cap: usize,
) -> Result<Vec<Contribution>> {
    let p = q.params();
    let Some((gdeg, w3)) = grassmannian_quotient_factor(&s.lambda, p.c, p.d3)? else {
        return Ok(Vec::new());
    };
    let (table, _) = cohomology_capped(ctx, &s.lambda, &s.mu, method, cap)?;
    let ambiguous = table.status == Status::Ambiguous;
    if ambiguous && method != Method::SplitOnly {
        return Err(Error::Ambiguous(format!("{ctx}, λ = {}, μ = {}", s.lambda, s.mu)));
    }
    let w1 = s.mu.conjugate().to_weight(q.d[0])?;
    let mut out = Vec::new();
    for (j1, rep) in table.degrees() {
        let j = j1 as usize + gdeg as usize;
        if j > t {
            return Err(Error::Verification(format!(
                "H^{j} of Λ^{t}ξ at λ = {}, μ = {} would give a negative term",
                s.lambda, s.mu
            )));
        }
        if t - j > max_term {
            continue;
        }
        for (w2, m) in rep.iter() {
            if m < 0 {
                return Err(Error::Verification(format!("negative multiplicity of {w2} in H^{j1}")));
            }
            out.push((t - j, t, Summand { w1: w1.clone(), w2: w2.clone(), w3: w3.clone(), mult: m as u64 }, ambiguous));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinorKind {
    X,
    Y,
    YX,
}

impl MinorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MinorKind::X => "X",
            MinorKind::Y => "Y",
            MinorKind::YX => "YX",
        }
    }
}

/// The `size × size` minors of one of the maps, as a summand of `F_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub kind: MinorKind,
    pub size: usize,
    pub twist: usize,
    pub summand: Summand,
}

#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub datum: QuiverDatum,
    pub families: Vec<GeneratorFamily>,
    /// `F_1` as computed from the resolution.
    pub f1: Vec<EquivariantTerm>,
    pub matches: bool,
}

impl GeneratorReport {
    pub fn check(&self) -> Result<()> {
        if self.matches {
            Ok(())
        } else {
            Err(Error::Verification(format!("minors of {} do not match F_1", self.datum)))
        }
    }
}

/// The minor families predicted to generate the ideal of the orbit closure.
pub fn generator_families(q: &QuiverDatum) -> Vec<GeneratorFamily> {
    let [d1, d2, d3] = q.d;
    let [a, b, c] = q.ranks;
    let ones = |k: usize, len: usize| Weight::new((0..len).map(|i| (i < k) as i32).collect());
    let mut out = Vec::new();
    if a < d1.min(d2) {
        out.push(GeneratorFamily {
            kind: MinorKind::X,
            size: a + 1,
            twist: a + 1,
            summand: Summand { w1: ones(a + 1, d1), w2: ones(a + 1, d2).dual(), w3: Weight::zero(d3), mult: 1 },
        });
    }
    if b < d2.min(d3) {
        out.push(GeneratorFamily {
            kind: MinorKind::Y,
            size: b + 1,
            twist: b + 1,
            summand: Summand { w1: Weight::zero(d1), w2: ones(b + 1, d2), w3: ones(b + 1, d3), mult: 1 },
        });
    }
    if c < a.min(b) {
        out.push(GeneratorFamily {
            kind: MinorKind::YX,
            size: c + 1,
            twist: 2 * (c + 1),
            summand: Summand { w1: ones(c + 1, d1), w2: Weight::zero(d2), w3: ones(c + 1, d3), mult: 1 },
        });
    }
    out
}

/// Generator families together with the computed `F_1` and whether they agree.
pub fn minimal_generators(q: &QuiverDatum, method: Method, cap: usize) -> Result<GeneratorReport> {
    let families = generator_families(q);
    let res = resolution_terms(q, 1, method, cap)?;
    let f1: Vec<EquivariantTerm> = res.term(1).cloned().collect();
    let mut computed: Vec<(usize, Summand)> =
        f1.iter().flat_map(|t| t.summands.iter().map(move |s| (t.twist, s.clone()))).collect();
    let mut predicted: Vec<(usize, Summand)> = families.iter().map(|f| (f.twist, f.summand.clone())).collect();
    computed.sort();
    predicted.sort();
    Ok(GeneratorReport { datum: *q, families, matches: computed == predicted, f1 })
}
