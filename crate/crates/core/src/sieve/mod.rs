//! Fraction families, the sieve quadratic form and its sharp constant.
//!
//! The sieve matrix has rows indexed by fractions `r/m` and columns by
//! `n ∈ O_K` with `N(n) ≤ N`; its entries are `ẽ_K(n·r/m)`. The sharp
//! constant is the top eigenvalue of `A*A`.

mod family;
mod gram;
mod torus;

pub use family::{build_fractions, build_fractions_with, embed_fraction, FamilyKind, Fraction, FractionFamily};
pub use gram::{
    apply_gram, lambda_max, power_iteration, quadratic_form, CoeffSeq, FamilyGram, GramOperator, SpectralEstimate,
    MAX_KERNEL_DEN, RESTARTS,
};
pub use torus::{max_points_in_torus_disk, torus_counts, torus_dist, TorusGram, TorusMode};

use serde::Serialize;

/// One experiment row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveReport {
    pub d: i64,
    pub family: String,
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub lambda_max: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
}
