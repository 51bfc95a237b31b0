//! The definitive algorithm: Schur complexes of two-term complexes, the
//! total complex resolving `S_λR₂ ⊗ S_μ(W/R₁)*`, its complex of global
//! sections and exact rank computations per weight.

mod character;
pub mod model;
pub mod schur_module;
mod superpoly;
mod total;
mod truncated;

use std::collections::BTreeMap;

pub use character::character_decompose;
pub use model::{ChainComplexModel, SparseMatrix, Term};
pub use schur_module::{Op, SchurModule, TwoTermComplex, TwoTermKind};
pub use total::{
    cohomology_definitive, cohomology_definitive_with, h0_complex, schur_complex_pieces, DefinitiveOptions, Piece,
    TotalComplex, DEFAULT_CAP,
};
pub use truncated::{truncated_complex_terms, TruncatedPiece};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::split::FlagContext;

/// The Schur complex `S_λ(φ)` with every weight block and its differential.
/// Term dimensions are compared with the Littlewood–Richardson prediction.
pub fn schur_complex(lambda: &Partition, phi: TwoTermComplex, cap: usize) -> Result<ChainComplexModel> {
    let module = SchurModule::new(lambda, phi, cap)?;
    let predicted = module.predicted_dims();
    let mut model = ChainComplexModel::default();
    for (p, &expected) in predicted.iter().enumerate() {
        let mut term = Term::default();
        for (q, w, d) in module.blocks() {
            if q == p {
                term.blocks.insert(w, d);
            }
        }
        if term.dim() as i128 != expected {
            return Err(Error::Verification(format!(
                "term {p} of S_{lambda} has dimension {}, expected {}",
                term.dim(),
                expected
            )));
        }
        model.terms.push(term);
    }
    while model.terms.len() > 1 && model.terms.last().is_some_and(|t| t.blocks.is_empty()) {
        model.terms.pop();
    }
    for p in 0..model.terms.len().saturating_sub(1) {
        let mut ds = BTreeMap::new();
        for (w, &d) in &model.terms[p].blocks {
            let rows = module.dim(p + 1, w);
            if rows == 0 {
                continue;
            }
            let m = module.matrix(Op::D, p, w)?;
            let columns = (0..d).map(|i| m.get(i).cloned().unwrap_or_default()).collect();
            ds.insert(w.clone(), SparseMatrix { rows, cols: d, columns });
        }
        model.differentials.push(ds);
    }
    model.check()?;
    Ok(model)
}

/// The fibre model of `Tot•` for `S_λR₂ ⊗ S_μ(W/R₁)*`, with `d∘d = 0` checked.
pub fn total_complex(ctx: FlagContext, lambda: &Partition, mu: &Partition, cap: usize) -> Result<ChainComplexModel> {
    TotalComplex::new(ctx, lambda, mu, cap)?.fibre_model()
}
