use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::poisson::TERM_CUTOFF;
use crate::character::{eval_character, phase};
use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};
use crate::residue::is_coprime;

fn kappa(k: u32) -> f64 {
    2f64.powi(k as i32 - 1)
}

/// `Ψ₂(q^k/Q₀^{k/2}) = exp(−(π/κ)·N(q)/Q₀)`.
fn weight(field: &FieldParams, q: &OKElt, k: u32, q0: f64) -> f64 {
    let n = field.norm(q).to_f64().unwrap_or(f64::INFINITY);
    (-(PI / kappa(k)) * n / q0).exp()
}

/// Largest norm whose weight clears the cutoff.
fn support_norm(k: u32, q0: f64, truncation: u64) -> Result<u64> {
    let bound = (kappa(k) * q0 * (1.0 / TERM_CUTOFF).ln() / PI).ceil() as u64;
    if bound > truncation {
        return Err(Error::CostGuard(format!("Weyl sum needs norms up to {bound} > truncation {truncation}")));
    }
    Ok(bound)
}

fn check_args(field: &FieldParams, q1: &OKElt, r1: &OKElt, k: u32, q0: f64) -> Result<()> {
    if q1.is_zero() {
        return Err(Error::DivisionByZero("Weyl sum modulus q1 is zero"));
    }
    if k == 0 || !(q0 > 0.0) {
        return Err(Error::Precondition(format!("Weyl sum needs k >= 1 and Q0 > 0, got k={k}, Q0={q0}")));
    }
    if !is_coprime(field, r1, q1)? {
        return Err(Error::Precondition(format!("Weyl sum needs (r1, q1) = 1, got r1={r1}, q1={q1}")));
    }
    Ok(())
}

/// `S_k(q₁, r₁, j) = Σ_{q₂} Ψ₂(q₂^k/Q₀^{k/2})·ẽ_K(j·r₁·q₂^k/q₁^k)`, with the
/// characters evaluated exactly.
pub fn weyl_sum(
    field: &FieldParams,
    q1: &OKElt,
    r1: &OKElt,
    j: &OKElt,
    k: u32,
    q0: f64,
    truncation: u64,
) -> Result<Complex64> {
    check_args(field, q1, r1, k, q0)?;
    let modulus = field.pow(q1, k);
    let mut s = Complex64::new(0.0, 0.0);
    for q2 in field.enumerate_by_norm(support_norm(k, q0, truncation)?, true) {
        let w = weight(field, &q2, k, q0);
        if w < TERM_CUTOFF {
            continue;
        }
        let n = field.mul(j, &field.pow(&q2, k));
        s += eval_character(&phase(field, &n, r1, &modulus)?) * w;
    }
    Ok(s)
}

/// The once-differenced sum
/// `Σ_q Ψ₂(q^k/Q₀^{k/2})·Ψ₂((q+α₁)^k/Q₀^{k/2})·ẽ_K(j·r₁·((q+α₁)^k − q^k)/q₁^k)`,
/// whose phase has degree `k − 1` in `q`.
#[allow(clippy::too_many_arguments)]
pub fn differenced_sum(
    field: &FieldParams,
    q1: &OKElt,
    r1: &OKElt,
    j: &OKElt,
    k: u32,
    q0: f64,
    alpha1: &OKElt,
    truncation: u64,
) -> Result<Complex64> {
    check_args(field, q1, r1, k, q0)?;
    let modulus = field.pow(q1, k);
    let mut s = Complex64::new(0.0, 0.0);
    for q in field.enumerate_by_norm(support_norm(k, q0, truncation)?, true) {
        let shifted = &q + alpha1;
        let w = weight(field, &q, k, q0) * weight(field, &shifted, k, q0);
        if w < TERM_CUTOFF * TERM_CUTOFF {
            continue;
        }
        let diff = &field.pow(&shifted, k) - &field.pow(&q, k);
        let n = field.mul(j, &diff);
        s += eval_character(&phase(field, &n, r1, &modulus)?) * w;
    }
    Ok(s)
}

/// `|S_k|²` against its expansion over shifts `α₁`, split at `N(α₁) ≤ Q₀^{1+ε}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferencingCheck {
    /// `|S_k(q₁, r₁, j)|²`.
    pub square: f64,
    /// `Σ_{α₁} S'(α₁)` over every shift with a nonzero term.
    pub expanded: Complex64,
    /// `Σ_{N(α₁) ≤ Q₀^{1+ε}} |S'(α₁)|`.
    pub head: f64,
    /// `Σ_{N(α₁) > Q₀^{1+ε}} |S'(α₁)|`.
    pub tail: f64,
}

/// Expands `|S_k|²` as `Σ_{α₁} differenced_sum(α₁)`.
#[allow(clippy::too_many_arguments)]
pub fn first_differencing(
    field: &FieldParams,
    q1: &OKElt,
    r1: &OKElt,
    j: &OKElt,
    k: u32,
    q0: f64,
    epsilon: f64,
    truncation: u64,
) -> Result<DifferencingCheck> {
    let s = weyl_sum(field, q1, r1, j, k, q0, truncation)?;
    // α₁ = q₂ − q with both inside the weight support
    let reach = 2.0 * (support_norm(k, q0, truncation)? as f64).sqrt();
    let alpha_bound = (reach * reach).ceil() as u64;
    let split = q0.powf(1.0 + epsilon);
    let mut expanded = Complex64::new(0.0, 0.0);
    let (mut head, mut tail) = (0.0, 0.0);
    for alpha in field.enumerate_by_norm(alpha_bound, true) {
        let v = differenced_sum(field, q1, r1, j, k, q0, &alpha, u64::MAX)?;
        expanded += v;
        if field.norm(&alpha).to_f64().unwrap_or(f64::INFINITY) <= split {
            head += v.norm();
        } else {
            tail += v.norm();
        }
    }
    Ok(DifferencingCheck { square: s.norm_sqr(), expanded, head, tail })
}
