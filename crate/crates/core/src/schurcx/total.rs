//! The total complex `Tot•` resolving `S_λR₂ ⊗ S_μ(W/R₁)*`, modelled on the
//! fibre over the flag `R₁ = ⟨e_{n−r₁+1}, …, e_n⟩ ⊂ R₂ = ⟨e_{n−r₂+1}, …, e_n⟩`,
//! whose stabilizer `P` contains the lower triangular matrices.
//!
//! Global sections are computed through Frobenius reciprocity: the multiplicity
//! of `S_γW` in `H⁰` of a term equals the dimension of
//! `Hom_P(S_γW, fibre)`, i.e. of the space of weight-`γ` vectors killed by
//! the raising operators of the Levi factor and by `F_i^{γ_i−γ_{i+1}+1}` for
//! the remaining simple roots.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::model::{ChainComplexModel, SparseMatrix, Term};
use super::schur_module::{Op, SchurModule, TwoTermComplex, TwoTermKind};
use crate::bott::CohomologyTable;
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, unit, Echelon, SparseVec};
use crate::lr::{lr_coefficient, tensor_decompose, RepSum};
use crate::partitions::{partitions_of, Partition, Weight};
use crate::split::FlagContext;

/// Default refusal threshold for a single weight block.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct DefinitiveOptions {
    /// Largest admissible weight block, in basis vectors.
    pub cap: usize,
    /// Restrict the computation to these dominant weights.
    pub weights: Option<BTreeSet<Weight>>,
    /// Also build the highest weight spaces of weights that cannot cancel,
    /// and compare their dimensions with the prediction.
    pub verify_all: bool,
}

impl Default for DefinitiveOptions {
    fn default() -> Self {
        DefinitiveOptions { cap: DEFAULT_CAP, weights: None, verify_all: false }
    }
}

struct Segment {
    p: usize,
    alpha: Weight,
    dr: usize,
    offset: usize,
}

struct TotBlock {
    segs: Vec<Segment>,
    index: HashMap<(usize, Weight), usize>,
    dim: usize,
}

/// `Tot•` on the fibre: the tensor product of the Schur complexes of
/// `W → W/R₂` (for `λ`) and `W* → R₁*` (for `μ`).
pub struct TotalComplex {
    pub ctx: FlagContext,
    pub lambda: Partition,
    pub mu: Partition,
    left: SchurModule,
    right: SchurModule,
    left_blocks: Vec<(usize, Weight, usize)>,
    blocks: RefCell<HashMap<(usize, Weight), Rc<TotBlock>>>,
    cap: usize,
}

impl TotalComplex {
    pub fn new(ctx: FlagContext, lambda: &Partition, mu: &Partition, cap: usize) -> Result<Self> {
        ctx.check(lambda, mu)?;
        let n = ctx.n;
        let left = SchurModule::new(lambda, TwoTermComplex::new(n, n - ctx.r2, TwoTermKind::Quotient)?, cap)?;
        let right = SchurModule::new(mu, TwoTermComplex::new(n, ctx.r1, TwoTermKind::DualRestriction)?, cap)?;
        let left_blocks = left.blocks();
        Ok(TotalComplex {
            ctx,
            lambda: lambda.clone(),
            mu: mu.clone(),
            left,
            right,
            left_blocks,
            blocks: RefCell::new(HashMap::new()),
            cap,
        })
    }

    pub fn left(&self) -> &SchurModule {
        &self.left
    }

    pub fn right(&self) -> &SchurModule {
        &self.right
    }

    /// Highest degree with a non-zero term.
    pub fn top_degree(&self) -> usize {
        self.left.degrees().last().copied().unwrap_or(0) + self.right.degrees().last().copied().unwrap_or(0)
    }

    fn block(&self, k: usize, gamma: &Weight) -> Rc<TotBlock> {
        let key = (k, gamma.clone());
        if let Some(b) = self.blocks.borrow().get(&key) {
            return b.clone();
        }
        let mut segs = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for (p, alpha, dl) in &self.left_blocks {
            if *p > k {
                continue;
            }
            let beta = Weight::new(gamma.entries().iter().zip(alpha.entries()).map(|(g, a)| g - a).collect());
            let dr = self.right.dim(k - p, &beta);
            if dr == 0 {
                continue;
            }
            index.insert((*p, alpha.clone()), segs.len());
            segs.push(Segment { p: *p, alpha: alpha.clone(), dr, offset });
            offset += dl * dr;
        }
        let b = Rc::new(TotBlock { segs, index, dim: offset });
        self.blocks.borrow_mut().insert(key, b.clone());
        b
    }

    /// Dimension of the weight-`γ` part of the fibre of `Tot^k`.
    pub fn block_dim(&self, k: usize, gamma: &Weight) -> usize {
        self.block(k, gamma).dim
    }

    fn target(&self, op: Op, k: usize, gamma: &Weight) -> (usize, Weight) {
        match op {
            Op::D => (k + 1, gamma.clone()),
            Op::E(a, b) => {
                let mut e = gamma.clone().into_entries();
                e[a] += 1;
                e[b] -= 1;
                (k, Weight::new(e))
            }
        }
    }

    /// Applies `op` to a vector of the `(k, γ)` block.
    fn apply(&self, op: Op, k: usize, gamma: &Weight, v: &SparseVec) -> Result<SparseVec> {
        let src = self.block(k, gamma);
        let (k2, g2) = self.target(op, k, gamma);
        let dst = self.block(k2, &g2);
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let s = &src.segs[src.segs.partition_point(|s| s.offset <= idx) - 1];
            let local = idx - s.offset;
            let (i, j) = (local / s.dr, local % s.dr);
            let q = k - s.p;
            let beta = Weight::new(gamma.entries().iter().zip(s.alpha.entries()).map(|(g, a)| g - a).collect());

            let m = self.left.matrix(op, s.p, &s.alpha)?;
            if let Some(col) = m.get(i).filter(|c| !c.is_empty()) {
                let (p2, a2) = self.left.target(op, s.p, &s.alpha);
                let t = &dst.segs[*dst.index.get(&(p2, a2)).ok_or_else(|| missing(op))?];
                for (&i2, a) in col {
                    add(&mut out, t.offset + i2 * t.dr + j, &(c * a));
                }
            }

            let m = self.right.matrix(op, q, &beta)?;
            if let Some(col) = m.get(j).filter(|c| !c.is_empty()) {
                let t = &dst.segs[*dst.index.get(&(s.p, s.alpha.clone())).ok_or_else(|| missing(op))?];
                let sign = if op == Op::D && s.p % 2 == 1 { -c.clone() } else { c.clone() };
                for (&j2, a) in col {
                    add(&mut out, t.offset + i * t.dr + j2, &(&sign * a));
                }
            }
        }
        Ok(out)
    }

    fn check_cap(&self, k: usize, gamma: &Weight) -> Result<usize> {
        let dim = self.block_dim(k, gamma);
        if dim > self.cap {
            return Err(Error::ResourceLimit {
                what: format!("term {k} of Tot for λ={}, μ={} at weight {gamma}", self.lambda, self.mu),
                size: dim,
                cap: self.cap,
            });
        }
        Ok(dim)
    }

    /// Levi blocks of the stabilizer: `[0, n−r₂)`, `[n−r₂, n−r₁)`, `[n−r₁, n)`.
    fn same_levi_block(&self, i: usize) -> bool {
        let FlagContext { r1, r2, n } = self.ctx;
        let block = |c: usize| (c >= n - r2) as u8 + (c >= n - r1) as u8;
        block(i) == block(i + 1)
    }

    /// A basis of `Hom_P(S_γW, fibre of Tot^k)`, as vectors of the `(k, γ)` block.
    pub fn highest_weight_space(&self, k: usize, gamma: &Weight) -> Result<Vec<SparseVec>> {
        let n = self.ctx.n;
        if !gamma.is_dominant() || gamma.len() != n {
            return Err(Error::Precondition(format!("{gamma} is not a dominant weight of GL({n})")));
        }
        let dim = self.check_cap(k, gamma)?;
        if dim == 0 {
            return Ok(Vec::new());
        }
        let internal: Vec<usize> = (0..n.saturating_sub(1)).filter(|&i| self.same_levi_block(i)).collect();
        let boundary: Vec<usize> = (0..n.saturating_sub(1)).filter(|&i| !self.same_levi_block(i)).collect();

        let mut images = Vec::with_capacity(dim);
        for u in 0..dim {
            let mut img = SparseVec::new();
            let mut shift = 0;
            for &i in &internal {
                let op = Op::E(i, i + 1);
                let (k2, g2) = self.target(op, k, gamma);
                for (x, c) in self.apply(op, k, gamma, &unit(u))? {
                    img.insert(shift + x, c);
                }
                shift += self.block_dim(k2, &g2);
            }
            images.push(img);
        }
        let levi = linalg::kernel(images);

        if boundary.is_empty() || levi.is_empty() {
            return Ok(levi);
        }
        let mut images = Vec::with_capacity(levi.len());
        for v in &levi {
            let mut img = SparseVec::new();
            let mut shift = 0;
            for &i in &boundary {
                let op = Op::E(i + 1, i);
                let steps = (gamma.entries()[i] - gamma.entries()[i + 1]) as usize + 1;
                let mut cur = v.clone();
                let mut g = gamma.clone();
                for _ in 0..steps {
                    if !cur.is_empty() {
                        cur = self.apply(op, k, &g, &cur)?;
                    }
                    g = self.target(op, k, &g).1;
                }
                for (x, c) in cur {
                    img.insert(shift + x, c);
                }
                shift += self.block_dim(k, &g);
            }
            images.push(img);
        }
        Ok(linalg::kernel(images).iter().map(|rel| linalg::combine(rel, &levi)).collect())
    }

    /// Full fibre model with every weight block and the differential, for
    /// verification on small inputs.
    pub fn fibre_model(&self) -> Result<ChainComplexModel> {
        let top = self.top_degree();
        let mut weights: Vec<BTreeSet<Weight>> = vec![BTreeSet::new(); top + 1];
        for (p, alpha, _) in &self.left_blocks {
            for (q, beta, _) in self.right.blocks() {
                weights[p + q].insert(alpha.add(&beta));
            }
        }
        let mut model = ChainComplexModel::default();
        for (k, ws) in weights.iter().enumerate() {
            let mut term = Term::default();
            for w in ws {
                let d = self.check_cap(k, w)?;
                if d > 0 {
                    term.blocks.insert(w.clone(), d);
                }
            }
            term.pieces = self.term_pieces(k);
            model.terms.push(term);
        }
        for k in 0..top {
            let mut ds = BTreeMap::new();
            for (w, &d) in &model.terms[k].blocks {
                let rows = self.block_dim(k + 1, w);
                if rows == 0 {
                    continue;
                }
                let columns = (0..d).map(|u| self.apply(Op::D, k, w, &unit(u))).collect::<Result<Vec<_>>>()?;
                ds.insert(w.clone(), SparseMatrix { rows, cols: d, columns });
            }
            model.differentials.push(ds);
        }
        model.check()?;
        Ok(model)
    }

    /// Summands `S_ρW ⊗ S_{ν′}(W/R₂) ⊗ S_σW* ⊗ S_{ς′}R₁*` of `Tot^k` with
    /// their multiplicities.
    pub fn pieces(&self, k: usize) -> Vec<Piece> {
        let FlagContext { r1, r2, n } = self.ctx;
        let left = schur_complex_pieces(&self.lambda, n, n - r2);
        let right = schur_complex_pieces(&self.mu, n, r1);
        let mut out = Vec::new();
        for (p, rho, nu_c, a) in &left {
            for (q, sigma, vs_c, b) in &right {
                if p + q == k {
                    out.push(Piece {
                        rho: rho.clone(),
                        nu_conj: nu_c.clone(),
                        sigma: sigma.clone(),
                        varsigma_conj: vs_c.clone(),
                        mult: a * b,
                    });
                }
            }
        }
        out
    }

    fn term_pieces(&self, k: usize) -> Vec<String> {
        self.pieces(k)
            .iter()
            .map(|p| {
                format!(
                    "{}S{}W ⊗ S{}(W/R2) ⊗ S{}W* ⊗ S{}R1*",
                    if p.mult > 1 { format!("{}·", p.mult) } else { String::new() },
                    p.rho,
                    p.nu_conj,
                    p.sigma,
                    p.varsigma_conj
                )
            })
            .collect()
    }

    /// The `GL(n)`-modules `H⁰(Tot^k)`, from the pieces: each contributes
    /// `S_ρW ⊗ S_σW* ⊗ S_{(ν′, 0^{r₂−r₁}, −ς′)}W`.
    pub fn h0_terms(&self) -> Result<Vec<RepSum>> {
        let FlagContext { r1, r2, n } = self.ctx;
        (0..=self.top_degree())
            .map(|k| {
                let mut total = RepSum::zero(n);
                for piece in self.pieces(k) {
                    let mut cartan = piece.nu_conj.to_weight(n - r2)?.into_entries();
                    cartan.extend(std::iter::repeat_n(0, r2 - r1));
                    cartan.extend(piece.varsigma_conj.to_weight(r1)?.dual().into_entries());
                    let a = RepSum::single(piece.rho.to_weight(n)?, 1);
                    let b = RepSum::single(piece.sigma.to_weight(n)?.dual(), 1);
                    let c = RepSum::single(Weight::new(cartan), 1);
                    total.add(&tensor_decompose(&tensor_decompose(&a, &b)?, &c)?.scaled(piece.mult as i64));
                }
                Ok(total)
            })
            .collect()
    }
}

/// One summand of a term of `Tot•`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub rho: Partition,
    pub nu_conj: Partition,
    pub sigma: Partition,
    pub varsigma_conj: Partition,
    pub mult: u64,
}

/// `(degree, ρ, ν′, c^λ_{ρν})` for the Schur complex of `λ` on a map from a
/// rank `b` space onto a rank `c` space.
pub fn schur_complex_pieces(lambda: &Partition, b: usize, c: usize) -> Vec<(usize, Partition, Partition, u64)> {
    let mut out = Vec::new();
    for p in 0..=lambda.size() {
        for nu in partitions_of(p, lambda.len(), (c as u32).min(lambda.first())) {
            for rho in partitions_of(lambda.size() - p, b.min(lambda.len()), lambda.first()) {
                let m = lr_coefficient(lambda, &rho, &nu);
                if m > 0 {
                    out.push((p as usize, rho, nu.conjugate(), m));
                }
            }
        }
    }
    out
}

fn add(v: &mut SparseVec, i: usize, c: &linalg::Q) {
    let mut one = SparseVec::new();
    one.insert(i, c.clone());
    axpy(v, &linalg::q(1), &one);
}

fn missing(op: Op) -> Error {
    Error::Verification(format!("{op:?} maps outside the total complex"))
}

/// The isotypic complexes of global sections: for every dominant `γ`, the
/// complex `Hom_G(S_γW, H⁰(Tot•))`, whose block `γ` in degree `k` has the
/// multiplicity of `S_γW` in `H⁰(Tot^k)` as dimension.
///
/// Differentials are only materialized for weights occurring in two adjacent
/// degrees; for the others they vanish for degree reasons.
pub fn h0_complex(tot: &TotalComplex, opts: &DefinitiveOptions) -> Result<ChainComplexModel> {
    let predicted = tot.h0_terms()?;
    let mut model = ChainComplexModel::default();
    for rep in &predicted {
        let mut term = Term::default();
        for (w, m) in rep.iter() {
            if opts.weights.as_ref().is_some_and(|ws| !ws.contains(w)) {
                continue;
            }
            if m < 0 {
                return Err(Error::Verification(format!("negative multiplicity of {w} in a term")));
            }
            term.blocks.insert(w.clone(), m as usize);
        }
        model.terms.push(term);
    }
    model.differentials = vec![BTreeMap::new(); model.terms.len().saturating_sub(1)];

    let all: BTreeSet<Weight> = model.terms.iter().flat_map(|t| t.blocks.keys().cloned()).collect();
    for gamma in all {
        let present: Vec<bool> = model.terms.iter().map(|t| t.blocks.contains_key(&gamma)).collect();
        let linked = |k: usize| (k > 0 && present[k - 1]) || (k + 1 < present.len() && present[k + 1]);
        let mut spaces: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
        for (k, &here) in present.iter().enumerate() {
            if here && (linked(k) || opts.verify_all) {
                let j = tot.highest_weight_space(k, &gamma)?;
                let expect = model.terms[k].blocks[&gamma];
                if j.len() != expect {
                    return Err(Error::Verification(format!(
                        "highest weight space of {gamma} in term {k} has dimension {}, expected {expect}",
                        j.len()
                    )));
                }
                spaces.insert(k, j);
            }
        }
        for k in 0..present.len().saturating_sub(1) {
            let (Some(src), Some(dst)) = (spaces.get(&k), spaces.get(&(k + 1))) else { continue };
            let mut basis = Echelon::tracking();
            for (i, v) in dst.iter().enumerate() {
                if basis.insert(v.clone(), i).is_some() {
                    return Err(Error::Verification(format!("dependent highest weight vectors for {gamma}")));
                }
            }
            let mut columns = Vec::with_capacity(src.len());
            for v in src {
                let image = tot.apply(Op::D, k, &gamma, v)?;
                columns.push(basis.coordinates(&image).ok_or_else(|| {
                    Error::Verification(format!("differential leaves the highest weight vectors of {gamma}"))
                })?);
            }
            model.differentials[k].insert(gamma.clone(), SparseMatrix { rows: dst.len(), cols: src.len(), columns });
        }
    }
    model.check()?;
    Ok(model)
}

/// Cohomology of `S_λR₂ ⊗ S_μ(W/R₁)*` by the definitive algorithm.
pub fn cohomology_definitive(ctx: FlagContext, lambda: &Partition, mu: &Partition) -> Result<CohomologyTable> {
    cohomology_definitive_with(ctx, lambda, mu, &DefinitiveOptions::default())
}

pub fn cohomology_definitive_with(
    ctx: FlagContext,
    lambda: &Partition,
    mu: &Partition,
    opts: &DefinitiveOptions,
) -> Result<CohomologyTable> {
    let tot = TotalComplex::new(ctx, lambda, mu, opts.cap)?;
    let model = h0_complex(&tot, opts)?;
    let mut table = CohomologyTable::zero(ctx.n);
    for (k, h) in model.cohomology_dims().into_iter().enumerate() {
        for (w, m) in h {
            table.add_term(k as u32, w, m as i64);
        }
    }
    Ok(table)
}
