//! Property suites run by `iqsieve verify`.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    fourier_numeric_oracle, g_fourier_analytic, g_weight, gaussian_transform, poisson_identity_check,
    poisson_shift_check, transform_constant,
};
use crate::approx::dirichlet_approx;
use crate::character::{eval_character, eval_character_complex_oracle, phase};
use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};
use crate::residue::{divisors, is_coprime, residue_system, totient};

/// Lattice norm cap for the enumerations behind the Poisson suite.
const POISSON_TRUNCATION: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ring,
    Character,
    Residue,
    Approx,
    Poisson,
    Fourier,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Ring, Suite::Character, Suite::Residue, Suite::Approx, Suite::Poisson, Suite::Fourier];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ring => "ring",
            Suite::Character => "character",
            Suite::Residue => "residue",
            Suite::Approx => "approx",
            Suite::Poisson => "poisson",
            Suite::Fourier => "fourier",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Largest residual the suite accepts.
    pub fn tolerance(&self) -> f64 {
        match self {
            Suite::Ring | Suite::Residue => 1e-9,
            Suite::Character => 1e-9,
            Suite::Approx => 1e-12,
            Suite::Poisson => 1e-8,
            Suite::Fourier => 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub d: i64,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Largest floating residual seen; 0 for purely exact suites.
    pub max_error: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} d={} checks={} failures={} max_error={:.3e} {}",
            self.suite.name(),
            self.d,
            self.checks,
            self.failures.len(),
            self.max_error,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(suite: Suite, d: i64) -> Self {
        Tally { report: SuiteReport { suite, d, checks: 0, failures: Vec::new(), max_error: 0.0 } }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok && self.report.failures.len() < 20 {
            self.report.failures.push(what());
        }
    }

    fn residual(&mut self, err: f64, what: impl FnOnce() -> String) {
        self.report.max_error = self.report.max_error.max(err);
        let tol = self.report.suite.tolerance();
        self.check(err <= tol, || format!("{} (residual {err:.3e} > {tol:e})", what()));
    }
}

fn random_elt(rng: &mut ChaCha8Rng, span: i64) -> OKElt {
    OKElt::new(rng.random_range(-span..=span), rng.random_range(-span..=span))
}

/// One representative per associate class with `0 < N(m) ≤ bound`.
pub fn associate_classes(field: &FieldParams, bound: u64) -> Vec<OKElt> {
    field
        .enumerate_by_norm(bound, false)
        .into_iter()
        .filter(|m| field.units().iter().all(|u| field.canonical_cmp(m, &field.mul(m, u)) != Ordering::Greater))
        .collect()
}

pub fn run_suite(suite: Suite, field: &FieldParams, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new(suite, field.d());
    match suite {
        Suite::Ring => ring(field, &mut rng, &mut t),
        Suite::Character => character(field, &mut rng, &mut t)?,
        Suite::Residue => residue(field, &mut rng, &mut t)?,
        Suite::Approx => approx(field, &mut rng, &mut t)?,
        Suite::Poisson => poisson(field, &mut rng, &mut t)?,
        Suite::Fourier => fourier(field, &mut rng, &mut t)?,
    }
    Ok(t.report)
}

fn ring(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..300 {
        let (x, y, z) = (random_elt(rng, 50), random_elt(rng, 50), random_elt(rng, 50));
        let xy = field.mul(&x, &y);
        t.check(xy == field.mul(&y, &x), || format!("xy != yx for {x}, {y}"));
        t.check(field.mul(&xy, &z) == field.mul(&x, &field.mul(&y, &z)), || format!("associativity at {x}, {y}, {z}"));
        t.check(field.mul(&x, &(&y + &z)) == &xy + &field.mul(&x, &z), || format!("distributivity at {x}, {y}, {z}"));
        t.check(field.norm(&xy) == field.norm(&x) * field.norm(&y), || format!("N(xy) != N(x)N(y) at {x}, {y}"));
        let nx = field.mul(&x, &field.conj(&x));
        t.check(nx.b.is_zero() && nx.a == field.norm(&x), || format!("x·conj(x) != N(x) at {x}"));
        let tr = &x + &field.conj(&x);
        t.check(tr.b.is_zero() && tr.a == field.trace(&x), || format!("x + conj(x) != Tr(x) at {x}"));
        if !y.is_zero() {
            let back = field.exact_div(&xy, &y).ok().flatten();
            t.check(back.as_ref() == Some(&x), || format!("(xy)/y != x at {x}, {y}"));
        }
        let cx = field.to_complex(&x) * field.to_complex(&y);
        let scale = cx.norm().max(1.0);
        t.residual((field.to_complex(&xy) - cx).norm() / scale, || format!("embedding not multiplicative at {x}, {y}"));
    }
}

fn character(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for m in field.enumerate_by_norm(30, false) {
        let reps = residue_system(field, &m)?.reps().to_vec();
        let nm = reps.len() as f64;
        for a in reps.iter().take(6).chain(std::iter::once(&m)) {
            let sum: Complex64 =
                reps.iter().map(|r| phase(field, a, r, &m).map(|p| eval_character(&p))).sum::<Result<Complex64>>()?;
            let expect = if field.divides(&m, a) { nm } else { 0.0 };
            t.residual((sum - expect).norm(), || format!("orthogonality fails for a={a}, m={m}"));
        }
    }
    for _ in 0..300 {
        let (n, r) = (random_elt(rng, 30), random_elt(rng, 30));
        let m = random_elt(rng, 12);
        if m.is_zero() {
            continue;
        }
        let exact = eval_character(&phase(field, &n, &r, &m)?);
        let z = field.to_complex(&n) * field.to_complex(&r) / field.to_complex(&m);
        t.residual((exact - eval_character_complex_oracle(field, z)).norm(), || {
            format!("phase of {n}·{r}/{m} disagrees with the complex formula")
        });
    }
    Ok(())
}

fn residue(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for m in field.enumerate_by_norm(30, false) {
        let rs = residue_system(field, &m)?;
        let nm = field.norm(&m).to_u64().unwrap_or(0);
        t.check(rs.len() as u64 == nm, || format!("residue system mod {m} has {} elements", rs.len()));
        for (i, a) in rs.reps().iter().enumerate() {
            t.check(&rs.reduce(a) == a, || format!("representative {a} mod {m} is not reduced"));
            for b in &rs.reps()[i + 1..] {
                t.check(!field.divides(&m, &(a - b)), || format!("{a} and {b} are congruent mod {m}"));
            }
        }
        for _ in 0..10 {
            let x = random_elt(rng, 100);
            t.check(field.divides(&m, &(&x - &rs.reduce(&x))), || format!("reduce({x}) mod {m} is not congruent"));
        }
        let phi = totient(field, &m)?;
        let mut coprime = 0u64;
        for r in rs.reps() {
            if is_coprime(field, r, &m)? {
                coprime += 1;
            }
        }
        t.check(phi == coprime, || format!("totient({m}) = {phi} but {coprime} coprime residues"));
        if field.class_number_one() {
            let mut sum = 0u64;
            for dv in divisors(field, &m)? {
                sum += totient(field, &dv)?;
            }
            let units = field.unit_count() as u64;
            t.check(sum == nm * units, || {
                format!("sum of totients over divisors of {m} is {sum}/{units}, expected {nm}")
            });
        }
    }
    Ok(())
}

fn approx(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let sd = field.sqrt_abs_disc();
    for _ in 0..500 {
        let z = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let n = rng.random_range(1..=25u64);
        let ap = dirichlet_approx(field, z, n)?;
        let q = field.to_complex(&ap.q);
        let err = (z - field.to_complex(&ap.p) / q).norm();
        let bound = sd / (q.norm() * n as f64);
        t.check(!ap.q.is_zero() && q.norm() <= n as f64 * (1.0 + 1e-12), || {
            format!("q = {} out of range for N = {n}", ap.q)
        });
        t.residual((err - bound).max(0.0), || format!("z = {z}, N = {n}: |z - p/q| = {err} exceeds {bound}"));
    }
    Ok(())
}

fn poisson(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for m in associate_classes(field, 9) {
        let reps = residue_system(field, &m)?.reps().to_vec();
        let r = reps[rng.random_range(0..reps.len())].clone();
        for x in [0.5, 1.0, 5.0] {
            let c = poisson_identity_check(field, x, &m, &r, POISSON_TRUNCATION)?;
            t.residual(c.error(), || format!("Poisson identity for X={x}, n={m}, r={r}"));
        }
    }
    for _ in 0..3 {
        let den = rng.random_range(2..8u64);
        let b = random_elt(rng, 6);
        for q in [1.0, 4.0] {
            let c = poisson_shift_check(field, &b, den, q, POISSON_TRUNCATION)?;
            t.residual(c.error(), || format!("shifted Poisson identity for b={b}/{den}, Q={q}"));
        }
    }
    Ok(())
}

fn fourier(field: &FieldParams, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let a = transform_constant(field)?;
    t.residual((a - 2.0 / field.sqrt_abs_disc()).abs(), || format!("normalising constant {a} != 2/sqrt|D|"));
    let gauss = |w: Complex64| Complex64::new((-std::f64::consts::PI * w.norm_sqr()).exp(), 0.0);
    for _ in 0..4 {
        let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let num = fourier_numeric_oracle(field, gauss, z)?;
        t.residual((num - gaussian_transform(field, z.norm_sqr())).norm(), || format!("Gaussian transform at {z}"));
    }
    for k in [2u32, 3] {
        for _ in 0..4 {
            let alpha: Vec<OKElt> = (1..k).map(|_| random_elt(rng, 3)).collect();
            let q0 = rng.random_range(1.0..6.0);
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let analytic = g_fourier_analytic(field, z, &alpha, q0, k)?;
            let num = fourier_numeric_oracle(
                field,
                |w| Complex64::new(g_weight(field, w, &alpha, q0, k).unwrap_or(f64::NAN), 0.0),
                z,
            )?;
            if !num.re.is_finite() {
                return Err(Error::Precondition("g weight rejected its arguments".into()));
            }
            t.residual((analytic - num).norm(), || format!("g transform for k={k}, alpha={alpha:?}, Q0={q0}, z={z}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::make_field;

    #[test]
    fn suites_pass_on_gaussian_integers() {
        let f = make_field(-1).unwrap();
        for s in [Suite::Ring, Suite::Character, Suite::Residue, Suite::Approx] {
            let r = run_suite(s, &f, 1).unwrap();
            assert!(r.passed(), "{r}: {:?}", r.failures);
            assert!(r.checks > 100);
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("sieve"), None);
    }

    #[test]
    fn associate_classes_count() {
        let f = make_field(-1).unwrap();
        // 1, 1+i, 2, 2+i, 2−i, 2+2i, 3
        assert_eq!(associate_classes(&f, 9).len(), 7);
    }
}
