//! Right-hand sides of the large-sieve bounds and the counting functions
//! behind the general-moduli versions.

mod counting;
mod theorems;

pub use counting::{count_a_t, count_fractions_near, make_s_t, ModuliSet};
pub use theorems::{theorem2_rhs, theorem3_rhs, verify_x, verify_x_detailed, XWitness};

use crate::error::{Error, Result};

/// Default `ε` for the `(QN)^ε` factors.
pub const DEFAULT_EPSILON: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Theorem {
    /// `Q² + N`, all moduli.
    Huxley13,
    /// `(QN)^ε (Q^{k+1} + N Q^{1−1/κ} + N^{1−1/κ} Q^{1+k/κ})`, `κ = 2^{k−1}`.
    Power(u32),
    /// `(QN)^ε (Q³ + Q²√N + N)`.
    Square,
    /// `Q² log log Q / ((1−δ) log Q)` with `N = Q^{1+δ}/16`.
    Prime { delta: f64 },
}

impl Theorem {
    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Huxley13 => "huxley",
            Theorem::Power(_) => "power",
            Theorem::Square => "square",
            Theorem::Prime { .. } => "prime",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub theorem: Theorem,
    pub q: u64,
    pub n: u64,
    pub epsilon: f64,
}

impl BoundParams {
    pub fn new(theorem: Theorem, q: u64, n: u64, epsilon: f64) -> Self {
        BoundParams { theorem, q, n, epsilon }
    }

    /// `κ = 2^{k−1}`; 1 for the non-power bounds.
    pub fn kappa(&self) -> f64 {
        match self.theorem {
            Theorem::Power(k) if k >= 1 => 2f64.powi(k as i32 - 1),
            _ => 1.0,
        }
    }
}

/// The `N` tied to `Q` and `δ` in the prime-moduli bound: `⌊Q^{1+δ}/16⌋`.
pub fn prime_bound_n(q: u64, delta: f64) -> u64 {
    ((q as f64).powf(1.0 + delta) / 16.0 + 1e-9).floor() as u64
}

pub fn rhs_bound(p: &BoundParams) -> Result<f64> {
    if p.q == 0 || p.n == 0 {
        return Err(Error::Precondition("bounds need Q, N >= 1".into()));
    }
    if !(p.epsilon >= 0.0) {
        return Err(Error::Precondition(format!("epsilon must be nonnegative, got {}", p.epsilon)));
    }
    let (q, n) = (p.q as f64, p.n as f64);
    let qn_eps = (q * n).powf(p.epsilon);
    Ok(match p.theorem {
        Theorem::Huxley13 => q * q + n,
        Theorem::Power(k) => {
            if k == 0 {
                return Err(Error::Precondition("power bound needs k >= 1".into()));
            }
            let kappa = p.kappa();
            let kf = k as f64;
            qn_eps
                * (q.powf(kf + 1.0)
                    + n * q.powf(1.0 - 1.0 / kappa)
                    + n.powf(1.0 - 1.0 / kappa) * q.powf(1.0 + kf / kappa))
        }
        Theorem::Square => qn_eps * (q.powi(3) + q * q * n.sqrt() + n),
        Theorem::Prime { delta } => {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::Precondition(format!("prime bound needs 0 < delta < 1, got {delta}")));
            }
            if p.q < 16 {
                return Err(Error::Precondition(format!("prime bound needs Q >= 16, got {}", p.q)));
            }
            let expected = prime_bound_n(p.q, delta);
            if p.n != expected {
                return Err(Error::Precondition(format!(
                    "prime bound ties N to floor(Q^(1+delta)/16) = {expected}, got N = {}",
                    p.n
                )));
            }
            q * q * q.ln().ln() / ((1.0 - delta) * q.ln())
        }
    })
}
