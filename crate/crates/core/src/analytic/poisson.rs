use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{fourier_numeric_oracle, ORACLE_TOL};
use crate::character::{eval_character, phase};
use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};

/// Terms below this are dropped from the direct lattice sums.
pub const TERM_CUTOFF: f64 = 1e-16;

/// Distinct norms whose transforms are evaluated per batch.
const CHUNK: usize = 16;

fn transform_cache() -> &'static Mutex<HashMap<(i64, u64), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, u64), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Both sides of a Poisson summation identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

impl PoissonCheck {
    pub fn error(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

fn gauss(w: Complex64) -> Complex64 {
    Complex64::new((-PI * w.norm_sqr()).exp(), 0.0)
}

/// `W̃_K(t)` for `W(x) = exp(−πx)` and real `t ≥ 0`, by quadrature.
/// Values are memoised per field and `t`.
pub fn weight_transform(field: &FieldParams, t: f64) -> Result<f64> {
    let key = (field.d(), t.to_bits());
    if let Some(&v) = transform_cache().lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let v = fourier_numeric_oracle(field, gauss, Complex64::new(t, 0.0))?.re;
    transform_cache().lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// Least-squares slope of `log |W̃_K(t)|` against `log t` on a log-spaced grid.
pub fn decay_exponent(field: &FieldParams, t_min: f64, t_max: f64, points: usize) -> Result<f64> {
    if !(t_min > 0.0 && t_max > t_min) || points < 2 {
        return Err(Error::Precondition("decay fit needs 0 < t_min < t_max and 2+ points".into()));
    }
    let ts: Vec<f64> = (0..points).map(|i| t_min * (t_max / t_min).powf(i as f64 / (points - 1) as f64)).collect();
    let ys = ts.par_iter().map(|&t| weight_transform(field, t).map(|v| v.abs().ln())).collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let n = points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

fn norm_f64(field: &FieldParams, x: &OKElt) -> f64 {
    field.norm(x).to_f64().unwrap_or(f64::INFINITY)
}

/// True once a shell of transform values is negligible: every term is below
/// the cutoff or indistinguishable from quadrature noise. An empty shell
/// says nothing about the tail.
fn shell_negligible(prefactor: f64, values: &[f64]) -> bool {
    if values.is_empty() {
        return false;
    }
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    prefactor * peak < TERM_CUTOFF || peak < 10.0 * ORACLE_TOL
}

/// Both sides of
/// `Σ_{m ≡ r (n)} W(N(m)/X) = (X/N(n))·Σ_k W̃_K(√(N(k)X/N(n)))·ẽ_K(kr/n)`
/// with `W(x) = exp(−πx)`. The left side is summed directly; the right side
/// evaluates `W̃_K` by quadrature, one shell of norms at a time, and stops at the
/// first shell that contributes nothing. `truncation` caps the lattice norm
/// examined on either side.
pub fn poisson_identity_check(
    field: &FieldParams,
    x: f64,
    n_mod: &OKElt,
    r: &OKElt,
    truncation: u64,
) -> Result<PoissonCheck> {
    if n_mod.is_zero() {
        return Err(Error::DivisionByZero("Poisson modulus is zero"));
    }
    if !(x > 0.0) {
        return Err(Error::Precondition(format!("X must be positive, got {x}")));
    }
    let nn = norm_f64(field, n_mod);

    // W(N(m)/X) < cutoff once N(m) > X·ln(1/cutoff)/π
    let m_bound = x * (1.0 / TERM_CUTOFF).ln() / PI;
    let r_over_n = (field.to_complex(r) / field.to_complex(n_mod)).norm();
    let j_radius = (m_bound / nn).sqrt() + r_over_n;
    let j_bound = (j_radius * j_radius).ceil() as u64 + 1;
    if j_bound > truncation {
        return Err(Error::CostGuard(format!(
            "Poisson left side needs norms up to {j_bound} > truncation {truncation}"
        )));
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut lhs_terms = 0;
    for j in field.enumerate_by_norm(j_bound, true) {
        let m = r + &field.mul(n_mod, &j);
        let w = (-PI * norm_f64(field, &m) / x).exp();
        if w >= TERM_CUTOFF {
            lhs += w;
            lhs_terms += 1;
        }
    }

    let prefactor = x / nn;
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut rhs_terms = 0;
    let mut hi: u64 = ((nn / x).ceil() as u64).max(4);
    let mut elements = field.enumerate_by_norm(hi, true);
    let mut next = 0;
    loop {
        // extend the enumeration until it holds CHUNK full norm shells
        let mut norms: Vec<u64> = Vec::new();
        let mut end = next;
        loop {
            while end < elements.len() {
                let nk = norm_f64(field, &elements[end]) as u64;
                if norms.last() != Some(&nk) {
                    if norms.len() == CHUNK {
                        break;
                    }
                    norms.push(nk);
                }
                end += 1;
            }
            if norms.len() == CHUNK || hi >= truncation {
                break;
            }
            hi = (hi * 2).min(truncation);
            elements = field.enumerate_by_norm(hi, true);
            norms.clear();
            end = next;
        }
        if norms.is_empty() {
            return Err(Error::CostGuard(format!("Poisson right side not negligible by norm {truncation}")));
        }
        let values = norms
            .par_iter()
            .map(|&nk| weight_transform(field, (nk as f64 * x / nn).sqrt()))
            .collect::<Result<Vec<f64>>>()?;
        for k in &elements[next..end] {
            let nk = norm_f64(field, k) as u64;
            let idx = norms.binary_search(&nk).expect("norm listed");
            let chi = eval_character(&phase(field, k, r, n_mod)?);
            rhs += chi * (prefactor * values[idx]);
            rhs_terms += 1;
        }
        if next > 0 && shell_negligible(prefactor, &values) {
            break;
        }
        next = end;
    }
    Ok(PoissonCheck { lhs, rhs, lhs_terms, rhs_terms })
}

/// Both sides of `Σ_x ẽ_K(bx)·f(x/√Q) = Q·Σ_{y ∈ −b+O_K} f̃(√Q·y)` for the
/// Gaussian `f`, with `b = b_num/b_den ∈ K`. `f̃` is evaluated by quadrature.
pub fn poisson_shift_check(
    field: &FieldParams,
    b_num: &OKElt,
    b_den: u64,
    q: f64,
    truncation: u64,
) -> Result<PoissonCheck> {
    if b_den == 0 {
        return Err(Error::DivisionByZero("shift denominator is zero"));
    }
    if !(q > 0.0) {
        return Err(Error::Precondition(format!("Q must be positive, got {q}")));
    }
    let den = OKElt::new(b_den, 0);

    let x_bound = (q * (1.0 / TERM_CUTOFF).ln() / PI).ceil() as u64;
    if x_bound > truncation {
        return Err(Error::CostGuard(format!("shift check left side needs norms up to {x_bound}")));
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut lhs_terms = 0;
    for xe in field.enumerate_by_norm(x_bound, true) {
        let w = (-PI * norm_f64(field, &xe) / q).exp();
        if w >= TERM_CUTOFF {
            lhs += eval_character(&phase(field, &xe, b_num, &den)?) * w;
            lhs_terms += 1;
        }
    }

    let b = field.to_complex(b_num) / b_den as f64;
    let sq = q.sqrt();
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut rhs_terms = 0;
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    loop {
        let reach = hi.sqrt() + b.norm();
        let bound = (reach * reach).ceil() as u64 + 1;
        if bound > truncation {
            return Err(Error::CostGuard(format!("shift check right side not negligible by norm {truncation}")));
        }
        let shell: Vec<Complex64> = field
            .enumerate_by_norm(bound, true)
            .iter()
            .map(|j| field.to_complex(j) - b)
            .filter(|y| {
                let n = y.norm_sqr();
                n > lo && n <= hi
            })
            .collect();
        let values = shell
            .par_iter()
            .map(|&y| fourier_numeric_oracle(field, gauss, y * sq))
            .collect::<Result<Vec<Complex64>>>()?;
        for v in &values {
            rhs += v * q;
            rhs_terms += 1;
        }
        let mags: Vec<f64> = values.iter().map(|v| v.norm()).collect();
        if lo >= 0.0 && shell_negligible(q, &mags) {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    Ok(PoissonCheck { lhs, rhs, lhs_terms, rhs_terms })
}
