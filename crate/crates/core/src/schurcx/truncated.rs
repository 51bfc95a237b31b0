use std::fmt;

use crate::error::Result;
use crate::lr::lr_coefficient;
use crate::partitions::{partitions_of, Partition};
use crate::split::FlagContext;

/// One summand `(S_ρW ⊗ S_{ν′}(W/R₁))^{⊕ mult}` of a truncated Schur complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPiece {
    pub degree: usize,
    pub rho: Partition,
    pub nu_conj: Partition,
    pub mult: u64,
}

impl fmt::Display for TruncatedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult > 1 {
            write!(f, "{}·", self.mult)?;
        }
        write!(f, "S{}W ⊗ S{}(W/R1)", self.rho, self.nu_conj)
    }
}

/// Terms of the truncated Schur complex resolving `S_λR₂` by bundles
/// `S_ρW ⊗ S_{ν′}(W/R₁)` with `ν₁ ≤ n − r₂`, grouped by degree. The length is
/// at most `|λ|`.
pub fn truncated_complex_terms(ctx: FlagContext, lambda: &Partition) -> Result<Vec<Vec<TruncatedPiece>>> {
    ctx.check(lambda, &Partition::empty())?;
    let width = (ctx.n - ctx.r2) as u32;
    let size = lambda.size();
    let mut out = Vec::new();
    for i in 0..=size {
        let mut term = Vec::new();
        for nu in partitions_of(i, lambda.len(), width.min(lambda.first())) {
            for rho in partitions_of(size - i, lambda.len(), lambda.first()) {
                let mult = lr_coefficient(lambda, &rho, &nu);
                if mult > 0 {
                    term.push(TruncatedPiece { degree: i as usize, rho, nu_conj: nu.conjugate(), mult });
                }
            }
        }
        if term.is_empty() {
            break;
        }
        out.push(term);
    }
    Ok(out)
}
