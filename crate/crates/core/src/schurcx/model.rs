//! Finite cochain complexes of weight-graded vector spaces with sparse exact
//! differentials.
//!
//! Text dump format, one record per line:
//!
//! ```text
//! complex <number of terms>
//! term <degree> <number of blocks>
//! block <weight entries, comma separated> <dimension>
//! diff <degree> <weight> <rows> <cols> <nonzeros>
//! <row> <col> <numerator>/<denominator>
//! ```
//!
//! `diff k` maps term `k` to term `k+1` within one weight block; its column
//! `c` is the image of basis vector `c`. The empty weight is written `-`.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::partitions::Weight;

#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Column `c` is the image of basis vector `c`.
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn rank(&self) -> usize {
        linalg::rank(self.columns.iter().cloned())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        linalg::combine(v, &self.columns)
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Term {
    pub blocks: BTreeMap<Weight, usize>,
    /// Free-form description of the summands making up the term.
    pub pieces: Vec<String>,
}

impl Term {
    pub fn dim(&self) -> usize {
        self.blocks.values().sum()
    }
}

/// A cochain complex `T⁰ → T¹ → ⋯`, block diagonal in a weight grading.
#[derive(Clone, Debug, Default)]
pub struct ChainComplexModel {
    pub terms: Vec<Term>,
    /// `differentials[k][w]` maps block `w` of term `k` to block `w` of term `k+1`.
    pub differentials: Vec<BTreeMap<Weight, SparseMatrix>>,
}

impl ChainComplexModel {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn block_dim(&self, k: usize, w: &Weight) -> usize {
        self.terms.get(k).and_then(|t| t.blocks.get(w)).copied().unwrap_or(0)
    }

    /// Checks shapes of all differentials and `d ∘ d = 0` exactly.
    pub fn check(&self) -> Result<()> {
        for (k, ds) in self.differentials.iter().enumerate() {
            for (w, m) in ds {
                if m.cols != self.block_dim(k, w) || m.rows != self.block_dim(k + 1, w) || m.columns.len() != m.cols {
                    return Err(Error::Verification(format!("differential {k} at {w} has the wrong shape")));
                }
                if m.columns.iter().any(|c| c.keys().next_back().is_some_and(|&r| r >= m.rows)) {
                    return Err(Error::Verification(format!("differential {k} at {w} leaves its block")));
                }
                if let Some(next) = self.differentials.get(k + 1).and_then(|d| d.get(w)) {
                    if m.columns.iter().any(|c| !next.apply(c).is_empty()) {
                        return Err(Error::Verification(format!("d∘d ≠ 0 at term {k}, weight {w}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim H^k` per weight block.
    pub fn cohomology_dims(&self) -> Vec<BTreeMap<Weight, usize>> {
        let ranks: Vec<BTreeMap<Weight, usize>> =
            self.differentials.iter().map(|ds| ds.iter().map(|(w, m)| (w.clone(), m.rank())).collect()).collect();
        let rank = |k: usize, w: &Weight| ranks.get(k).and_then(|r| r.get(w)).copied().unwrap_or(0);
        self.terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                t.blocks
                    .iter()
                    .filter_map(|(w, &d)| {
                        let h = d - rank(k, w) - if k > 0 { rank(k - 1, w) } else { 0 };
                        (h > 0).then(|| (w.clone(), h))
                    })
                    .collect()
            })
            .collect()
    }

    /// `Σ (−1)^k dim T^k` per weight.
    pub fn euler_character(&self) -> BTreeMap<Weight, i64> {
        let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
        for (k, t) in self.terms.iter().enumerate() {
            for (w, &d) in &t.blocks {
                *out.entry(w.clone()).or_insert(0) += if k % 2 == 0 { d as i64 } else { -(d as i64) };
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn dump(&self, mut out: impl Write) -> Result<()> {
        fn enc(w: &Weight) -> String {
            if w.is_empty() {
                "-".into()
            } else {
                w.entries().iter().map(i32::to_string).collect::<Vec<_>>().join(",")
            }
        }
        writeln!(out, "complex {}", self.terms.len())?;
        for (k, t) in self.terms.iter().enumerate() {
            writeln!(out, "term {k} {}", t.blocks.len())?;
            for (w, d) in &t.blocks {
                writeln!(out, "block {} {d}", enc(w))?;
            }
        }
        for (k, ds) in self.differentials.iter().enumerate() {
            for (w, m) in ds {
                writeln!(out, "diff {k} {} {} {} {}", enc(w), m.rows, m.cols, m.nonzeros())?;
                for (c, col) in m.columns.iter().enumerate() {
                    for (r, v) in col {
                        writeln!(out, "{r} {c} {}/{}", v.numer(), v.denom())?;
                    }
                }
            }
        }
        Ok(())
    }
}
