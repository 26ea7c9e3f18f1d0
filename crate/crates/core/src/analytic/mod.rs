//! Gaussian weights, their Fourier transforms under the `ẽ_K` pairing, Poisson
//! summation checks and Weyl-differenced exponential sums.
//!
//! The transform of `f` is `f̃(z) = ∫∫ f(x + yω) ẽ_K(−z(x + yω)) dx dy`. For the
//! Gaussian `G(w) = exp(−πN(w))` this is `(2/√|D_K|)·exp(−4πN(z)/|D_K|)`.

mod poisson;
pub mod quadrature;
mod weyl;

pub use poisson::{decay_exponent, poisson_identity_check, poisson_shift_check, weight_transform, PoissonCheck};
pub use weyl::{differenced_sum, first_differencing, weyl_sum, DifferencingCheck};

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};

/// Absolute error target handed to the 2D quadrature by default.
pub const ORACLE_TOL: f64 = 1e-11;

/// Relative level below which the integrand is treated as zero when sizing
/// the integration box.
pub const SUPPORT_THRESHOLD: f64 = 1e-17;

/// The weights `Ψ(z) = Φ(N(z))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSpec {
    /// `Φ₁(t) = exp(−π|t|)`, so `Ψ₁` is the Gaussian `exp(−πN(z))`.
    Phi1Gauss,
    /// `Φ₂(t) = exp(−(π/κ)|t|^{1/k})` with `κ = 2^{k−1}`.
    Psi2(u32),
}

impl WeightSpec {
    pub fn kappa(&self) -> f64 {
        match *self {
            WeightSpec::Phi1Gauss => 1.0,
            WeightSpec::Psi2(k) => 2f64.powi(k as i32 - 1),
        }
    }

    /// `Φ(t)` on the real line.
    pub fn phi(&self, t: f64) -> f64 {
        match *self {
            WeightSpec::Phi1Gauss => (-PI * t.abs()).exp(),
            WeightSpec::Psi2(k) => (-(PI / self.kappa()) * t.abs().powf(1.0 / k as f64)).exp(),
        }
    }

    /// `Ψ(z) = Φ(N(z))`.
    pub fn psi(&self, z: Complex64) -> f64 {
        self.phi(z.norm_sqr())
    }
}

/// `ẽ_K(z) = e(Tr(z/√D_K)) = e(2·Im(z)/√|D_K|)` for complex `z`.
pub fn e_tilde(field: &FieldParams, z: Complex64) -> Complex64 {
    let (s, c) = (4.0 * PI * z.im / field.sqrt_abs_disc()).sin_cos();
    Complex64::new(c, s)
}

/// Closed-form transform of `exp(−πN(w))`, as a function of `N(z)`.
pub fn gaussian_transform(field: &FieldParams, norm_z: f64) -> f64 {
    let abs_disc = field.disc().unsigned_abs() as f64;
    2.0 / field.sqrt_abs_disc() * (-4.0 * PI * norm_z / abs_disc).exp()
}

/// `∫∫ f(x + yω) ẽ_K(−z(x + yω)) dx dy` by nested adaptive quadrature.
pub fn fourier_numeric_oracle<F>(field: &FieldParams, f: F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    fourier_numeric_oracle_tol(field, f, z, ORACLE_TOL)
}

pub fn fourier_numeric_oracle_tol<F>(field: &FieldParams, f: F, z: Complex64, abs_tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let omega = field.omega_complex();
    let at = |x: f64, y: f64| Complex64::new(x, 0.0) + omega * y;
    let l = quadrature::support_half_width(|x, y| f(at(x, y)).norm(), SUPPORT_THRESHOLD)?;
    quadrature::integrate_2d(
        |x, y| {
            let w = at(x, y);
            f(w) * e_tilde(field, -z * w)
        },
        (-l, l),
        (-l, l),
        abs_tol,
    )
}

fn a_cache() -> &'static Mutex<HashMap<i64, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The normalising constant `A` of `g̃`: the transform of `exp(−πN(w))` at 0,
/// computed once per field by quadrature.
pub fn transform_constant(field: &FieldParams) -> Result<f64> {
    if let Some(&a) = a_cache().lock().expect("cache lock").get(&field.d()) {
        return Ok(a);
    }
    let a =
        fourier_numeric_oracle(field, |w| Complex64::new((-PI * w.norm_sqr()).exp(), 0.0), Complex64::new(0.0, 0.0))?
            .re;
    a_cache().lock().expect("cache lock").insert(field.d(), a);
    Ok(a)
}

fn check_alpha(alpha: &[OKElt], k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Precondition(format!("g needs k >= 2, got {k}")));
    }
    if alpha.len() != k as usize - 1 {
        return Err(Error::DimensionMismatch { expected: k as usize - 1, got: alpha.len() });
    }
    Ok(())
}

/// The subset sums `u·α` for `u ∈ {0,1}^{k−1}`.
fn subset_sums(field: &FieldParams, alpha: &[OKElt]) -> Vec<Complex64> {
    let a: Vec<Complex64> = alpha.iter().map(|x| field.to_complex(x)).collect();
    (0..1usize << a.len())
        .map(|mask| a.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).sum())
        .collect()
}

/// `Σ_u N(u·α) − N(Σ_u u·α)/κ`, nonnegative by Cauchy–Schwarz.
pub fn alpha_combination(field: &FieldParams, alpha: &[OKElt]) -> f64 {
    let sums = subset_sums(field, alpha);
    let kappa = sums.len() as f64;
    let total: Complex64 = sums.iter().sum();
    sums.iter().map(|s| s.norm_sqr()).sum::<f64>() - total.norm_sqr() / kappa
}

/// `g(z) = Π_u Ψ₂((z + u·α/√Q₀)^k)`, evaluated literally.
pub fn g_weight(field: &FieldParams, z: Complex64, alpha: &[OKElt], q0: f64, k: u32) -> Result<f64> {
    check_alpha(alpha, k)?;
    let psi = WeightSpec::Psi2(k);
    let scale = q0.sqrt();
    Ok(subset_sums(field, alpha).iter().map(|s| psi.psi((z + s / scale).powu(k))).product())
}

/// Closed form of `g̃(z)`:
/// `A·exp(−(π/(κQ₀))·(Σ_u N(u·α) − N(Σ_u u·α)/κ))·ẽ_K(z·Σα/(2√Q₀))·exp(−4πN(z)/|D_K|)`.
pub fn g_fourier_analytic(field: &FieldParams, z: Complex64, alpha: &[OKElt], q0: f64, k: u32) -> Result<Complex64> {
    check_alpha(alpha, k)?;
    if !(q0 > 0.0) {
        return Err(Error::Precondition(format!("Q0 must be positive, got {q0}")));
    }
    let a = transform_constant(field)?;
    let kappa = 2f64.powi(k as i32 - 1);
    let c = (-(PI / (kappa * q0)) * alpha_combination(field, alpha)).exp();
    let shift: Complex64 = alpha.iter().map(|x| field.to_complex(x)).sum::<Complex64>() / (2.0 * q0.sqrt());
    let abs_disc = field.disc().unsigned_abs() as f64;
    Ok(e_tilde(field, z * shift) * (a * c * (-4.0 * PI * z.norm_sqr() / abs_disc).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gauss(w: Complex64) -> Complex64 {
        Complex64::new((-PI * w.norm_sqr()).exp(), 0.0)
    }

    #[test]
    fn weights() {
        let z = Complex64::new(0.6, -0.8);
        assert!((WeightSpec::Phi1Gauss.psi(z) - (-PI).exp()).abs() < 1e-15);
        assert!((WeightSpec::Psi2(2).psi(z * z) - (-PI / 2.0).exp()).abs() < 1e-15);
        // Ψ₂(z^k / Q₀^{k/2}) = exp(−(π/κ)·N(z)/Q₀)
        let q0 = 3.0;
        for k in 1..5 {
            let w = (z / f64::sqrt(q0)).powu(k);
            let expect = (-(PI / 2f64.powi(k as i32 - 1)) * z.norm_sqr() / q0).exp();
            assert!((WeightSpec::Psi2(k).psi(w) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn e_tilde_matches_exact_character() {
        for d in [-1, -3, -7, -2] {
            let f = make_field(d).unwrap();
            let z = f.to_complex(&OKElt::new(2, 3)) / 7.0;
            let exact = crate::character::eval_character(&crate::character::QPhase::from_i64(3, 7).unwrap());
            assert!((e_tilde(&f, z) - exact).norm() < 1e-12);
            assert!((e_tilde(&f, z) - crate::character::eval_character_complex_oracle(&f, z)).norm() < 1e-12);
        }
    }

    #[test]
    fn gaussian_area_matches_product_quadrature() {
        // d = −1: the box is a true square and the integral separates.
        let f = make_field(-1).unwrap();
        let two_d = fourier_numeric_oracle(&f, gauss, Complex64::new(0.0, 0.0)).unwrap();
        let one_d = quadrature::integrate(|x| Complex64::new((-PI * x * x).exp(), 0.0), -7.0, 7.0, 1e-15).unwrap();
        assert!((two_d - one_d * one_d).norm() < 1e-12);
        for d in [-1, -2, -3, -7, -11] {
            let f = make_field(d).unwrap();
            let a = transform_constant(&f).unwrap();
            assert!((a - 2.0 / f.sqrt_abs_disc()).abs() < 1e-12, "d={d}: {a}");
        }
    }

    #[test]
    fn gaussian_transform_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [-1, -3, -7, -2] {
            let f = make_field(d).unwrap();
            for _ in 0..4 {
                let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                let num = fourier_numeric_oracle(&f, gauss, z).unwrap();
                let exact = gaussian_transform(&f, z.norm_sqr());
                assert!((num - exact).norm() < 1e-11, "d={d} z={z}: {num} vs {exact}");
            }
        }
    }

    #[test]
    fn pi_over_d_exponent_fails_when_disc_is_d() {
        let f = make_field(-3).unwrap();
        let z = Complex64::new(0.7, 0.4);
        let num = fourier_numeric_oracle(&f, gauss, z).unwrap();
        let a = transform_constant(&f).unwrap();
        let literal = a * (-PI * z.norm_sqr() / 3.0).exp();
        let corrected = a * (-4.0 * PI * z.norm_sqr() / 3.0).exp();
        assert!((num.re - literal).abs() > 1e-2);
        assert!((num.re - corrected).abs() < 1e-11);
        // for D_K = 4d the two forms coincide
        let f = make_field(-1).unwrap();
        assert!((gaussian_transform(&f, 0.65) - 2.0 / 2.0 * (-PI * 0.65f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn oracle_symmetry_and_linearity() {
        let f = make_field(-7).unwrap();
        let shifted = |w: Complex64| Complex64::new((-PI * (w - Complex64::new(0.3, 0.1)).norm_sqr()).exp(), 0.0);
        let z = Complex64::new(0.4, -0.9);
        // real-valued f: f̃(−z) = conj f̃(z)
        let a = fourier_numeric_oracle(&f, shifted, z).unwrap();
        let b = fourier_numeric_oracle(&f, shifted, -z).unwrap();
        assert!((a - b.conj()).norm() < 1e-11);
        let c1 = Complex64::new(0.5, -2.0);
        let mix = fourier_numeric_oracle(&f, |w| gauss(w) + c1 * shifted(w), z).unwrap();
        let g = fourier_numeric_oracle(&f, gauss, z).unwrap();
        assert!((mix - (g + c1 * a)).norm() < 1e-11);
    }

    #[test]
    fn alpha_combination_is_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = make_field(-3).unwrap();
        for _ in 0..1000 {
            let k = rng.random_range(2..5usize);
            let alpha: Vec<OKElt> =
                (0..k - 1).map(|_| OKElt::new(rng.random_range(-20..20), rng.random_range(-20..20))).collect();
            assert!(alpha_combination(&f, &alpha) >= -1e-9);
        }
        assert_eq!(alpha_combination(&f, &[OKElt::zero(), OKElt::zero()]), 0.0);
    }

    #[test]
    fn zero_alpha_is_pure_gaussian() {
        let f = make_field(-1).unwrap();
        let z = Complex64::new(0.3, -0.5);
        let g = g_fourier_analytic(&f, z, &[OKElt::zero()], 2.0, 2).unwrap();
        let a = transform_constant(&f).unwrap();
        assert!((g - Complex64::new(a * (-PI * z.norm_sqr()).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn g_transform_example() {
        let f = make_field(-1).unwrap();
        let alpha = [OKElt::one()];
        let z = Complex64::new(0.3, 0.2);
        let analytic = g_fourier_analytic(&f, z, &alpha, 1.0, 2).unwrap();
        let num =
            fourier_numeric_oracle(&f, |w| Complex64::new(g_weight(&f, w, &alpha, 1.0, 2).unwrap(), 0.0), z).unwrap();
        assert!((analytic - num).norm() < 1e-10, "{analytic} vs {num}");
    }

    #[test]
    fn g_transform_random_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for d in [-3, -7] {
            let f = make_field(d).unwrap();
            for k in [2u32, 3] {
                for _ in 0..2 {
                    let alpha: Vec<OKElt> =
                        (1..k).map(|_| OKElt::new(rng.random_range(-3..4), rng.random_range(-3..4))).collect();
                    let q0 = rng.random_range(1.0..6.0);
                    let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    let analytic = g_fourier_analytic(&f, z, &alpha, q0, k).unwrap();
                    let num =
                        fourier_numeric_oracle(&f, |w| Complex64::new(g_weight(&f, w, &alpha, q0, k).unwrap(), 0.0), z)
                            .unwrap();
                    assert!((analytic - num).norm() < 1e-9, "d={d} k={k}: {analytic} vs {num}");
                }
            }
        }
    }

    #[test]
    fn bad_arguments() {
        let f = make_field(-1).unwrap();
        let z = Complex64::new(0.0, 0.0);
        assert!(g_fourier_analytic(&f, z, &[], 1.0, 2).is_err());
        assert!(g_fourier_analytic(&f, z, &[OKElt::one()], 1.0, 1).is_err());
        assert!(g_fourier_analytic(&f, z, &[OKElt::one()], 0.0, 2).is_err());
    }
}
