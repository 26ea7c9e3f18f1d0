use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::family::FractionFamily;
use crate::error::{Error, Result};

/// Largest modulus norm the `i64` phase kernel accepts.
pub const MAX_KERNEL_DEN: i64 = 1 << 31;

/// Twiddle tables are built for denominators up to this size.
const TABLE_LIMIT: i64 = 1 << 20;

/// A matrix `A` given entrywise; the Gram action `A*A` is derived from it.
///
/// Row and column sums run in index order, so results do not depend on the
/// number of threads.
pub trait GramOperator: Sync {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, row: usize, col: usize) -> Complex64;

    /// `A v`.
    fn apply_a(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows())
            .into_par_iter()
            .map(|i| v.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (j, vj)| acc + self.entry(i, j) * vj))
            .collect()
    }

    /// `A* y`.
    fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        (0..self.cols())
            .into_par_iter()
            .map(|j| {
                y.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (i, yi)| acc + self.entry(i, j).conj() * yi)
            })
            .collect()
    }

    /// `A*(A v)`.
    fn apply_gram(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), got: v.len() });
        }
        Ok(self.apply_adjoint(&self.apply_a(v)))
    }

    /// `‖A v‖²`.
    fn quadratic_form(&self, v: &[Complex64]) -> Result<f64> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), got: v.len() });
        }
        Ok(self.apply_a(v).iter().map(|y| y.norm_sqr()).sum())
    }
}

#[derive(Debug, Clone, Copy)]
struct Row {
    p1: i64,
    p2: i64,
    den: i64,
    table: Option<usize>,
}

/// The sieve matrix with entries `ẽ_K(n·r/m)`, rows the fractions of a family
/// and columns the `n = s + tω` with `N(n) ≤ N` in canonical order.
///
/// The phase of a row is `(s·P1 + t·P2)/N(m)` with `P1, P2` fixed integers,
/// so every entry is an exact table lookup.
#[derive(Debug, Clone)]
pub struct FamilyGram {
    rows: Vec<Row>,
    cols: Vec<(i64, i64)>,
    tables: Vec<Arc<Vec<Complex64>>>,
}

impl FamilyGram {
    pub fn new(family: &FractionFamily, n: u64) -> Result<Self> {
        let field = family.field();
        let trace = field.omega_trace();
        let mut table_index: HashMap<i64, usize> = HashMap::new();
        let mut tables = Vec::new();
        let mut rows = Vec::with_capacity(family.len());
        for fr in family.fractions() {
            let den = fr.modulus_norm as i64;
            if den <= 0 || den > MAX_KERNEL_DEN {
                return Err(Error::ModulusTooLarge(format!("{} (norm {})", fr.modulus, fr.modulus_norm)));
            }
            let w = field.mul(&fr.residue, &field.conj(&fr.modulus));
            let wa = (&w.a % den).to_i64().expect("reduced");
            let wb = (&w.b % den).to_i64().expect("reduced");
            let p1 = wb.rem_euclid(den);
            let p2 = (wa + trace * wb).rem_euclid(den);
            let table = (den <= TABLE_LIMIT).then(|| {
                *table_index.entry(den).or_insert_with(|| {
                    tables.push(Arc::new(twiddles(den)));
                    tables.len() - 1
                })
            });
            rows.push(Row { p1, p2, den, table });
        }
        let cols = field.enumerate_by_norm_i64(n, true);
        Ok(FamilyGram { rows, cols, tables })
    }

    /// Coefficient positions `(s, t)` in column order.
    pub fn columns(&self) -> &[(i64, i64)] {
        &self.cols
    }
}

fn twiddles(den: i64) -> Vec<Complex64> {
    (0..den).map(|j| unit_root(j, den)).collect()
}

/// `e(j/den)` for `0 ≤ j < den`, exact at multiples of a quarter turn.
fn unit_root(j: i64, den: i64) -> Complex64 {
    if j == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * j % den == 0 {
        return match 4 * j / den {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let centered = if 2 * j >= den { j - den } else { j };
    let (s, c) = (2.0 * PI * centered as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

impl GramOperator for FamilyGram {
    fn rows(&self) -> usize {
        self.rows.len()
    }

    fn cols(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    fn entry(&self, row: usize, col: usize) -> Complex64 {
        let r = &self.rows[row];
        let (s, t) = self.cols[col];
        let idx = (s * r.p1 + t * r.p2).rem_euclid(r.den);
        match r.table {
            Some(ti) => self.tables[ti][idx as usize],
            None => unit_root(idx, r.den),
        }
    }
}

/// Result of the power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Restarts performed after the first power-iteration run.
pub const RESTARTS: usize = 2;

/// Top eigenvalue of `A*A` by power iteration with Rayleigh quotients.
///
/// Three runs from seeded random starts; the largest value wins. Each value
/// is a Rayleigh quotient and hence a lower bound on the true eigenvalue.
pub fn power_iteration<G: GramOperator + ?Sized>(
    op: &G,
    tol: f64,
    seed: u64,
    max_iter: usize,
) -> Result<SpectralEstimate> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::Precondition("max_iter must be positive".into()));
    }
    let dim = op.cols();
    if dim == 0 || op.rows() == 0 {
        return Ok(SpectralEstimate { value: 0.0, iterations: 0, converged: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<SpectralEstimate> = None;
    for _ in 0..=RESTARTS {
        let start: Vec<Complex64> =
            (0..dim).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let run = single_run(op, start, tol, max_iter)?;
        if best.is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one run"))
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn single_run<G: GramOperator + ?Sized>(
    op: &G,
    mut v: Vec<Complex64>,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralEstimate> {
    normalize(&mut v);
    let mut prev = f64::NAN;
    let mut value = 0.0;
    for it in 1..=max_iter {
        let mut w = op.apply_gram(&v)?;
        value = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        if normalize(&mut w) == 0.0 {
            return Ok(SpectralEstimate { value: 0.0, iterations: it, converged: true });
        }
        if (value - prev).abs() <= tol * value.abs() {
            return Ok(SpectralEstimate { value, iterations: it, converged: true });
        }
        prev = value;
        v = w;
    }
    Ok(SpectralEstimate { value, iterations: max_iter, converged: false })
}

/// Sharp sieve constant of `family` with coefficients supported on `N(n) ≤ n`.
pub fn lambda_max(family: &FractionFamily, n: u64, tol: f64, seed: u64, max_iter: usize) -> Result<SpectralEstimate> {
    power_iteration(&FamilyGram::new(family, n)?, tol, seed, max_iter)
}

/// Coefficients `a_n` indexed by `n = s + tω` with `N(n) ≤ N`, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    n: u64,
    keys: Vec<(i64, i64)>,
    values: Vec<Complex64>,
}

impl CoeffSeq {
    pub fn new(field: &crate::qfield::FieldParams, n: u64, values: Vec<Complex64>) -> Result<Self> {
        let keys = field.enumerate_by_norm_i64(n, true);
        if keys.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: keys.len(), got: values.len() });
        }
        Ok(CoeffSeq { n, keys, values })
    }

    pub fn from_fn(field: &crate::qfield::FieldParams, n: u64, f: impl Fn(i64, i64) -> Complex64) -> Self {
        let keys = field.enumerate_by_norm_i64(n, true);
        let values = keys.iter().map(|&(s, t)| f(s, t)).collect();
        CoeffSeq { n, keys, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn keys(&self) -> &[(i64, i64)] {
        &self.keys
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// `T = Σ_fr |Σ_n a_n ẽ_K(n·r/m)|²`.
pub fn quadratic_form(family: &FractionFamily, coeffs: &CoeffSeq) -> Result<f64> {
    FamilyGram::new(family, coeffs.n())?.quadratic_form(coeffs.values())
}

/// `A*(A v)` for the family's sieve matrix.
pub fn apply_gram(family: &FractionFamily, n: u64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    FamilyGram::new(family, n)?.apply_gram(v)
}
