//! Dirichlet approximation of complex numbers by quotients of `O_K` elements.
//!
//! For any `z ∈ C` and `N ≥ 1` there are `p, q ∈ O_K` with `0 < |q| ≤ N` and
//! `|z − p/q| ≤ √|D_K| / (|q|·N)`. We find one greedily: walk the `q` with
//! `N(q) ≤ N²` in canonical order, pair each with the lattice point nearest
//! to `z·q`, and stop at the first pair meeting the bound.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};

/// Largest `N` accepted by [`best_approx_oracle`].
pub const ORACLE_MAX_N: u64 = 50;

/// Slack for float rounding when a candidate sits exactly on the bound.
const BOUNDARY_SLACK: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    pub p: OKElt,
    pub q: OKElt,
    /// `|z − p/q|`.
    pub error: f64,
    /// `√|D_K| / (|q|·N)`.
    pub bound: f64,
}

impl Approximation {
    /// `|z·q − p|`, the error scaled by `|q|`.
    pub fn scaled_error(&self, field: &FieldParams) -> f64 {
        self.error * field.to_complex(&self.q).norm()
    }
}

/// The lattice point nearest to `w`, ties broken by `(norm, a, b)`.
///
/// Rounding the two coordinates in the skewed basis `(1, ω)` is not always
/// nearest, so the whole 3×3 neighbourhood of the rounded point is checked.
pub fn nearest_lattice_point(field: &FieldParams, w: Complex64) -> OKElt {
    let (x, y) = field.complex_to_coords(w);
    let (x0, y0) = (x.round() as i64, y.round() as i64);
    let mut best: Option<(f64, OKElt)> = None;
    for da in -1..=1 {
        for db in -1..=1 {
            let cand = OKElt::new(x0 + da, y0 + db);
            let dist = (w - field.to_complex(&cand)).norm();
            let better = match &best {
                None => true,
                Some((bd, bp)) => match dist.partial_cmp(bd).unwrap_or(Ordering::Equal) {
                    Ordering::Less => true,
                    Ordering::Equal => field.canonical_cmp(&cand, bp) == Ordering::Less,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((dist, cand));
            }
        }
    }
    best.expect("nine candidates").1
}

/// Reusable greedy approximator for a fixed field and `N`.
#[derive(Debug, Clone)]
pub struct DirichletApproximator {
    field: FieldParams,
    n: u64,
    candidates: Vec<(OKElt, Complex64)>,
}

impl DirichletApproximator {
    pub fn new(field: &FieldParams, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("Dirichlet approximation needs N >= 1".into()));
        }
        let candidates = field
            .enumerate_by_norm(n * n, false)
            .into_iter()
            .map(|q| {
                let c = field.to_complex(&q);
                (q, c)
            })
            .collect();
        Ok(DirichletApproximator { field: field.clone(), n, candidates })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn approximate(&self, z: Complex64) -> Result<Approximation> {
        let sqrt_disc = self.field.sqrt_abs_disc();
        let nf = self.n as f64;
        for (q, qc) in &self.candidates {
            let p = nearest_lattice_point(&self.field, z * qc);
            let pc = self.field.to_complex(&p);
            let error = (z - pc / qc).norm();
            let bound = sqrt_disc / (qc.norm() * nf);
            if error <= bound + BOUNDARY_SLACK {
                return Ok(Approximation { p, q: q.clone(), error, bound });
            }
        }
        Err(Error::NoCertificate { z: z.to_string(), n: self.n })
    }
}

/// First certificate `(p, q)` in canonical `q` order.
pub fn dirichlet_approx(field: &FieldParams, z: Complex64, n: u64) -> Result<Approximation> {
    DirichletApproximator::new(field, n)?.approximate(z)
}

/// Exhaustive minimiser of `|z·q − p|` over `0 < |q| ≤ N` with `p` nearest
/// to `z·q`. Independent certificate for the greedy search.
pub fn best_approx_oracle(field: &FieldParams, z: Complex64, n: u64) -> Result<Approximation> {
    if n == 0 {
        return Err(Error::Precondition("oracle needs N >= 1".into()));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::CostGuard(format!("best_approx_oracle limited to N <= {ORACLE_MAX_N}, got {n}")));
    }
    let mut best: Option<(f64, Approximation)> = None;
    for q in field.enumerate_by_norm(n * n, false) {
        let qc = field.to_complex(&q);
        let p = nearest_lattice_point(field, z * qc);
        let scaled = (z * qc - field.to_complex(&p)).norm();
        if best.as_ref().is_none_or(|(s, _)| scaled < *s) {
            let error = (z - field.to_complex(&p) / qc).norm();
            let bound = field.sqrt_abs_disc() / (qc.norm() * n as f64);
            best = Some((scaled, Approximation { p, q, error, bound }));
        }
    }
    Ok(best.expect("units always qualify").1)
}
