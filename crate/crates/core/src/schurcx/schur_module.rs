//! Schur complexes of a two-term complex `B → C`, realized inside the
//! super-symmetric algebra of `F ⊗ (B ⊕ C)` as the `GL(F)`-highest weight
//! vectors of weight `λ`, with `B` even and `C` odd.
//!
//! Bases come from products of column super-determinants indexed by
//! super-semistandard tableaux, reduced per weight block so that coordinates
//! can be read off at pivot monomials.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;

use super::superpoly::{Alphabet, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec, Q};
use crate::lr::{lr_coefficient, weyl_dimension};
use crate::partitions::{partitions_of, Partition, Weight};

/// Which exact sequence `0 → A → B → C → 0` a two-term complex `B → C` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoTermKind {
    /// `B = kⁿ`, `C = B / span(e_{c+1}, …, e_n)` with `c = odd_dim`.
    Quotient,
    /// `B = (kⁿ)*`, `C` the dual of `span(e_{n−c+1}, …, e_n)` with `c = odd_dim`.
    DualRestriction,
}

/// The input `φ: B → C` of a Schur complex; `B` is `GL(n)`-standard or its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoTermComplex {
    pub even_dim: usize,
    pub odd_dim: usize,
    pub kind: TwoTermKind,
}

impl TwoTermComplex {
    pub fn new(even_dim: usize, odd_dim: usize, kind: TwoTermKind) -> Result<Self> {
        if odd_dim > even_dim {
            return Err(Error::Precondition(format!("odd part ({odd_dim}) larger than even part ({even_dim})")));
        }
        Ok(TwoTermComplex { even_dim, odd_dim, kind })
    }

    /// Coordinates `0..n` carrying a basis vector of `C`.
    fn odd_range(&self) -> std::ops::Range<usize> {
        match self.kind {
            TwoTermKind::Quotient => 0..self.odd_dim,
            TwoTermKind::DualRestriction => self.even_dim - self.odd_dim..self.even_dim,
        }
    }

    fn is_dual(&self) -> bool {
        self.kind == TwoTermKind::DualRestriction
    }
}

/// An operator acting on a Schur module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// The matrix unit `E_{ab}` of `gl(n)`, acting as an even derivation.
    E(usize, usize),
    /// The Schur complex differential, an odd derivation.
    D,
}

/// Reduced basis of one `(degree, weight)` block.
pub struct Block {
    pub basis: Vec<Poly>,
    pivots: Vec<Monomial>,
}

struct BlockSlot {
    tableaux: Vec<Vec<usize>>,
    basis: Option<Rc<Block>>,
}

type Matrix = Rc<Vec<SparseVec>>;

/// The Schur complex `S_λ(B → C)` with all weight blocks available lazily.
pub struct SchurModule {
    pub lambda: Partition,
    pub phi: TwoTermComplex,
    alphabet: Alphabet,
    /// Coordinate in `0..n` of every letter; even letters first.
    coord: Vec<usize>,
    /// Letter of each coordinate: `(even, odd)`.
    letter_of: Vec<(usize, Option<usize>)>,
    slots: RefCell<BTreeMap<(usize, Weight), BlockSlot>>,
    ops: RefCell<HashMap<(Op, usize, Weight), Matrix>>,
    cap: usize,
}

impl SchurModule {
    pub fn new(lambda: &Partition, phi: TwoTermComplex, cap: usize) -> Result<Self> {
        let n = phi.even_dim;
        let odd_range = phi.odd_range();
        let mut coord: Vec<usize> = (0..n).collect();
        coord.extend(odd_range.clone());
        let mut odd = vec![false; n];
        odd.extend(std::iter::repeat_n(true, odd_range.len()));
        let letter_of = (0..n).map(|c| (c, odd_range.contains(&c).then(|| n + c - odd_range.start))).collect();
        let alphabet = Alphabet::new(odd, lambda.len());
        let m = SchurModule {
            lambda: lambda.clone(),
            phi,
            alphabet,
            coord,
            letter_of,
            slots: RefCell::new(BTreeMap::new()),
            ops: RefCell::new(HashMap::new()),
            cap,
        };
        m.enumerate_tableaux()?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.phi.even_dim
    }

    /// Fills super-semistandard tableaux of shape `λ` and sorts them into
    /// blocks by (number of odd entries, weight).
    fn enumerate_tableaux(&self) -> Result<()> {
        let shape = self.lambda.parts().to_vec();
        let cells: Vec<(usize, usize)> =
            shape.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
        let letters = self.coord.len();
        let n = self.n();
        let mut fill = vec![0usize; cells.len()];
        let mut slots = self.slots.borrow_mut();
        let mut total = 0usize;
        let limit = self.cap.saturating_mul(16);
        let mut overflow = false;
        // index of the cell above, if any
        let mut above = vec![None; cells.len()];
        for (i, &(r, c)) in cells.iter().enumerate() {
            if r > 0 {
                above[i] = cells.iter().position(|&x| x == (r - 1, c));
            }
        }
        let odd = &self.alphabet.odd;
        fn go(
            i: usize,
            cells: &[(usize, usize)],
            above: &[Option<usize>],
            odd: &[bool],
            letters: usize,
            fill: &mut Vec<usize>,
            emit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if i == cells.len() {
                return emit(fill);
            }
            let mut lo = 0;
            if cells[i].1 > 0 {
                let x = fill[i - 1];
                lo = lo.max(if odd[x] { x + 1 } else { x });
            }
            if let Some(a) = above[i] {
                let y = fill[a];
                lo = lo.max(if odd[y] { y } else { y + 1 });
            }
            for v in lo..letters {
                fill[i] = v;
                if !go(i + 1, cells, above, odd, letters, fill, emit) {
                    return false;
                }
            }
            true
        }
        go(0, &cells, &above, odd, letters, &mut fill, &mut |t| {
            let p = t.iter().filter(|&&v| odd[v]).count();
            let mut w = vec![0i32; n];
            for &v in t {
                w[self.coord[v]] += if self.phi.is_dual() { -1 } else { 1 };
            }
            slots
                .entry((p, Weight::new(w)))
                .or_insert_with(|| BlockSlot { tableaux: Vec::new(), basis: None })
                .tableaux
                .push(t.to_vec());
            total += 1;
            if total > limit {
                overflow = true;
                return false;
            }
            true
        });
        if overflow {
            return Err(Error::ResourceLimit {
                what: format!("Schur module S_{}", self.lambda),
                size: total,
                cap: limit,
            });
        }
        Ok(())
    }

    /// Degrees with a non-empty term.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.slots.borrow().keys().map(|(p, _)| *p).collect();
        d.dedup();
        d
    }

    /// `(degree, weight, dimension)` of every block.
    pub fn blocks(&self) -> Vec<(usize, Weight, usize)> {
        self.slots.borrow().iter().map(|((p, w), s)| (*p, w.clone(), s.tableaux.len())).collect()
    }

    pub fn dim(&self, p: usize, w: &Weight) -> usize {
        self.slots.borrow().get(&(p, w.clone())).map_or(0, |s| s.tableaux.len())
    }

    pub fn tableaux(&self, p: usize, w: &Weight) -> Vec<Vec<usize>> {
        self.slots.borrow().get(&(p, w.clone())).map_or(Vec::new(), |s| s.tableaux.clone())
    }

    /// Term dimensions predicted by `Σ c^λ_{ρν} dim S_ρB · dim S_{ν′}C`.
    pub fn predicted_dims(&self) -> Vec<i128> {
        let (b, c) = (self.phi.even_dim, self.phi.odd_dim);
        let size = self.lambda.size();
        (0..=size)
            .map(|p| {
                let mut total = 0i128;
                for nu in partitions_of(p, self.lambda.len(), self.lambda.first()) {
                    let nu_c = nu.conjugate();
                    if nu_c.len() > c {
                        continue;
                    }
                    for rho in partitions_of(size - p, b.min(self.lambda.len()), self.lambda.first()) {
                        let k = lr_coefficient(&self.lambda, &rho, &nu);
                        if k > 0 {
                            total += k as i128
                                * weyl_dimension(&rho.to_weight(b).unwrap())
                                * weyl_dimension(&nu_c.to_weight(c).unwrap());
                        }
                    }
                }
                total
            })
            .collect()
    }

    pub fn block(&self, p: usize, w: &Weight) -> Result<Option<Rc<Block>>> {
        let key = (p, w.clone());
        let tableaux = {
            let slots = self.slots.borrow();
            let Some(slot) = slots.get(&key) else { return Ok(None) };
            if let Some(b) = &slot.basis {
                return Ok(Some(b.clone()));
            }
            slot.tableaux.clone()
        };
        if tableaux.len() > self.cap {
            return Err(Error::ResourceLimit {
                what: format!("block of S_{} in degree {p}, weight {w}", self.lambda),
                size: tableaux.len(),
                cap: self.cap,
            });
        }
        let polys: Vec<Poly> = tableaux.iter().map(|t| self.tableau_poly(t)).collect();
        let block = Rc::new(reduce(polys, &format!("S_{} block ({p}, {w})", self.lambda))?);
        self.slots.borrow_mut().get_mut(&key).unwrap().basis = Some(block.clone());
        Ok(Some(block))
    }

    fn tableau_poly(&self, t: &[usize]) -> Poly {
        let shape = self.lambda.parts();
        let conj = self.lambda.conjugate();
        let mut offsets = Vec::with_capacity(shape.len());
        let mut acc = 0;
        for &len in shape {
            offsets.push(acc);
            acc += len as usize;
        }
        let mut out: Option<Poly> = None;
        for c in 0..conj.len() {
            let h = conj.get(c) as usize;
            let column: Vec<usize> = (0..h).map(|r| t[offsets[r] + c]).collect();
            let det = self.alphabet.column_determinant(&column);
            out = Some(match out {
                None => det,
                Some(p) => self.alphabet.multiply(&p, &det),
            });
        }
        out.unwrap_or_else(|| {
            let mut p = Poly::new();
            p.insert(Monomial(Vec::new()), crate::linalg::q(1));
            p
        })
    }

    /// The letter map of an operator: for each letter, its images with coefficients.
    fn letter_map(&self, op: Op) -> Vec<Vec<(usize, i64)>> {
        let letters = self.coord.len();
        let n = self.n();
        let dual = self.phi.is_dual();
        let mut map = vec![Vec::new(); letters];
        for (l, targets) in map.iter_mut().enumerate() {
            let c = self.coord[l];
            let is_odd = l >= n;
            match op {
                Op::D => {
                    if !is_odd {
                        if let Some(o) = self.letter_of[c].1 {
                            targets.push((o, 1));
                        }
                    }
                }
                Op::E(a, b) => {
                    let (src, dst, sign) = if dual { (a, b, -1) } else { (b, a, 1) };
                    if c == src {
                        let target = if is_odd { self.letter_of[dst].1 } else { Some(self.letter_of[dst].0) };
                        if let Some(t) = target {
                            targets.push((t, sign));
                        }
                    }
                }
            }
        }
        map
    }

    /// Target block key of `op` applied to block `(p, w)`.
    pub fn target(&self, op: Op, p: usize, w: &Weight) -> (usize, Weight) {
        match op {
            Op::D => (p + 1, w.clone()),
            Op::E(a, b) => {
                let mut e = w.clone().into_entries();
                e[a] += 1;
                e[b] -= 1;
                (p, Weight::new(e))
            }
        }
    }

    /// Matrix of `op` on block `(p, w)`: column `s` is the image of basis
    /// vector `s` in the coordinates of the target block.
    pub fn matrix(&self, op: Op, p: usize, w: &Weight) -> Result<Matrix> {
        let key = (op, p, w.clone());
        if let Some(m) = self.ops.borrow().get(&key) {
            return Ok(m.clone());
        }
        let Some(src) = self.block(p, w)? else {
            let m = Rc::new(Vec::new());
            self.ops.borrow_mut().insert(key, m.clone());
            return Ok(m);
        };
        let (tp, tw) = self.target(op, p, w);
        let dst = self.block(tp, &tw)?;
        let map = self.letter_map(op);
        let mut cols = Vec::with_capacity(src.basis.len());
        for b in &src.basis {
            let image = self.alphabet.derive(b, &map);
            let coords = match &dst {
                None => {
                    if !image.is_empty() {
                        return Err(Error::Verification(format!(
                            "{op:?} leaves S_{} at block ({p}, {w})",
                            self.lambda
                        )));
                    }
                    SparseVec::new()
                }
                Some(d) => d.coordinates(&image).ok_or_else(|| {
                    Error::Verification(format!(
                        "{op:?} image not in the span of block ({tp}, {tw}) of S_{}",
                        self.lambda
                    ))
                })?,
            };
            cols.push(coords);
        }
        let m = Rc::new(cols);
        self.ops.borrow_mut().insert(key, m.clone());
        Ok(m)
    }
}

impl Block {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `p` read off at the pivot monomials, after checking that
    /// `p` really lies in the span.
    fn coordinates(&self, p: &Poly) -> Option<SparseVec> {
        let mut coords = SparseVec::new();
        let mut rest = p.clone();
        for (i, (m, b)) in self.pivots.iter().zip(&self.basis).enumerate() {
            let Some(c) = p.get(m).cloned() else { continue };
            for (mm, bc) in b {
                let e = rest.entry(mm.clone()).or_insert_with(Q::zero);
                *e -= &c * bc;
                if e.is_zero() {
                    rest.remove(mm);
                }
            }
            coords.insert(i, c);
        }
        rest.is_empty().then_some(coords)
    }
}

/// Reduced row echelon form of a list of polynomials, which must be independent.
fn reduce(polys: Vec<Poly>, what: &str) -> Result<Block> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in &polys {
        for m in p.keys() {
            index.entry(m.clone()).or_insert(0);
        }
    }
    let monos: Vec<Monomial> = index.keys().cloned().collect();
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let count = polys.len();
    let mut e = Echelon::new();
    for (i, p) in polys.into_iter().enumerate() {
        let v: SparseVec = p.into_iter().map(|(m, c)| (index[&m], c)).collect();
        if e.insert(v, i).is_some() {
            return Err(Error::Verification(format!("{what}: tableau polynomials are linearly dependent")));
        }
    }
    let rows = e.into_reduced();
    debug_assert_eq!(rows.len(), count);
    let mut basis = Vec::with_capacity(rows.len());
    let mut pivots = Vec::with_capacity(rows.len());
    for (k, r) in rows {
        pivots.push(monos[k].clone());
        basis.push(r.into_iter().map(|(i, c)| (monos[i].clone(), c)).collect());
    }
    Ok(Block { basis, pivots })
}
