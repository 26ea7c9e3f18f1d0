//! Exact arithmetic in the ring of integers of an imaginary quadratic field.
//!
//! Elements are stored in the integral basis `(1, ω)` where `ω = (1+√d)/2`
//! when `d ≡ 1 (mod 4)` and `ω = √d` otherwise. Writing `t = Tr(ω)` and
//! `n = N(ω)`, the minimal polynomial is `ω² = tω − n`, which is the only
//! field-dependent ingredient of multiplication, conjugation, norm and trace.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The nine imaginary quadratic fields of class number one.
pub const HEEGNER: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaCase {
    /// `d ≡ 1 (mod 4)`, `ω = (1+√d)/2`.
    HalfPlus,
    /// `d ≡ 2, 3 (mod 4)`, `ω = √d`.
    SqrtD,
}

/// An element `a + bω` of `O_K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OKElt {
    pub a: BigInt,
    pub b: BigInt,
}

impl OKElt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        OKElt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        OKElt::new(0, 0)
    }

    pub fn one() -> Self {
        OKElt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Coordinates as machine integers, if they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }

    /// Multiplication by a rational integer.
    pub fn scale(&self, c: &BigInt) -> OKElt {
        OKElt { a: &self.a * c, b: &self.b * c }
    }
}

impl fmt::Display for OKElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}ω", self.a, -&self.b)
        } else {
            write!(f, "{}+{}ω", self.a, self.b)
        }
    }
}

impl Add for &OKElt {
    type Output = OKElt;
    fn add(self, rhs: &OKElt) -> OKElt {
        OKElt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for OKElt {
    type Output = OKElt;
    fn add(self, rhs: OKElt) -> OKElt {
        &self + &rhs
    }
}

impl Sub for &OKElt {
    type Output = OKElt;
    fn sub(self, rhs: &OKElt) -> OKElt {
        OKElt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for OKElt {
    type Output = OKElt;
    fn sub(self, rhs: OKElt) -> OKElt {
        &self - &rhs
    }
}

impl Neg for &OKElt {
    type Output = OKElt;
    fn neg(self) -> OKElt {
        OKElt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for OKElt {
    type Output = OKElt;
    fn neg(self) -> OKElt {
        -&self
    }
}

/// The field `K = Q(√d)` together with the data every other module needs.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldParams {
    d: i64,
    disc: i64,
    omega_case: OmegaCase,
    units: Vec<OKElt>,
    class_number_one: bool,
}

fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Builds `FieldParams` for `d`, validating `d < 0` and squarefree.
pub fn make_field(d: i64) -> Result<FieldParams> {
    FieldParams::new(d)
}

impl FieldParams {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidField { d, reason: "d must be negative" });
        }
        if d == i64::MIN || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidField { d, reason: "d must be squarefree" });
        }
        let (disc, omega_case) =
            if d.rem_euclid(4) == 1 { (d, OmegaCase::HalfPlus) } else { (4 * d, OmegaCase::SqrtD) };
        let mut field = FieldParams { d, disc, omega_case, units: Vec::new(), class_number_one: HEEGNER.contains(&d) };
        field.units = field.enumerate_by_norm(1, false);
        Ok(field)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The discriminant `D_K`.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn omega_case(&self) -> OmegaCase {
        self.omega_case
    }

    pub fn units(&self) -> &[OKElt] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn class_number_one(&self) -> bool {
        self.class_number_one
    }

    /// `Tr(ω)`: 1 in the `HalfPlus` case, 0 otherwise.
    pub fn omega_trace(&self) -> i64 {
        match self.omega_case {
            OmegaCase::HalfPlus => 1,
            OmegaCase::SqrtD => 0,
        }
    }

    /// `N(ω)`: `(1−d)/4` in the `HalfPlus` case, `−d` otherwise.
    pub fn omega_norm(&self) -> i64 {
        match self.omega_case {
            OmegaCase::HalfPlus => (1 - self.d) / 4,
            OmegaCase::SqrtD => -self.d,
        }
    }

    /// `ω` as a complex number.
    pub fn omega_complex(&self) -> Complex64 {
        let s = (-self.d as f64).sqrt();
        match self.omega_case {
            OmegaCase::HalfPlus => Complex64::new(0.5, 0.5 * s),
            OmegaCase::SqrtD => Complex64::new(0.0, s),
        }
    }

    /// `√|D_K|`.
    pub fn sqrt_abs_disc(&self) -> f64 {
        (self.disc.unsigned_abs() as f64).sqrt()
    }

    pub fn to_complex(&self, x: &OKElt) -> Complex64 {
        let a = x.a.to_f64().unwrap_or(f64::NAN);
        let b = x.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a, 0.0) + self.omega_complex() * b
    }

    /// Real coordinates `(x, y)` of `w = x + yω`.
    pub fn complex_to_coords(&self, w: Complex64) -> (f64, f64) {
        let om = self.omega_complex();
        let y = w.im / om.im;
        (w.re - y * om.re, y)
    }

    pub fn mul(&self, x: &OKElt, y: &OKElt) -> OKElt {
        let bb = &x.b * &y.b;
        let a = &x.a * &y.a - &bb * self.omega_norm();
        let b = &x.a * &y.b + &x.b * &y.a + bb * self.omega_trace();
        OKElt { a, b }
    }

    pub fn conj(&self, x: &OKElt) -> OKElt {
        OKElt { a: &x.a + &x.b * self.omega_trace(), b: -&x.b }
    }

    pub fn pow(&self, x: &OKElt, k: u32) -> OKElt {
        let mut acc = OKElt::one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn norm(&self, x: &OKElt) -> BigInt {
        &x.a * &x.a + &x.a * &x.b * self.omega_trace() + &x.b * &x.b * self.omega_norm()
    }

    pub fn trace(&self, x: &OKElt) -> BigInt {
        &x.a * 2 + &x.b * self.omega_trace()
    }

    /// Norm and trace together.
    pub fn norm_trace(&self, x: &OKElt) -> (BigInt, BigInt) {
        (self.norm(x), self.trace(x))
    }

    /// Norm of a small element in machine arithmetic.
    pub fn norm_i64(&self, a: i64, b: i64) -> i128 {
        let (a, b) = (a as i128, b as i128);
        a * a + self.omega_trace() as i128 * a * b + self.omega_norm() as i128 * b * b
    }

    pub fn is_unit(&self, x: &OKElt) -> bool {
        self.norm(x).is_one()
    }

    /// `x / y` when the quotient lies in `O_K`.
    pub fn exact_div(&self, x: &OKElt, y: &OKElt) -> Result<Option<OKElt>> {
        if y.is_zero() {
            return Err(Error::DivisionByZero("exact_div by zero"));
        }
        let n = self.norm(y);
        let w = self.mul(x, &self.conj(y));
        if (&w.a % &n).is_zero() && (&w.b % &n).is_zero() {
            Ok(Some(OKElt { a: w.a / &n, b: w.b / &n }))
        } else {
            Ok(None)
        }
    }

    /// `y | x` in `O_K`. Zero divides only zero.
    pub fn divides(&self, y: &OKElt, x: &OKElt) -> bool {
        if y.is_zero() {
            return x.is_zero();
        }
        matches!(self.exact_div(x, y), Ok(Some(_)))
    }

    /// Ordering by `(norm, a, b)`; this is the canonical order for every
    /// enumeration and every accumulated sum in the crate.
    pub fn canonical_cmp(&self, x: &OKElt, y: &OKElt) -> Ordering {
        self.norm(x).cmp(&self.norm(y)).then_with(|| x.a.cmp(&y.a)).then_with(|| x.b.cmp(&y.b))
    }

    /// All elements with norm at most `bound`, in canonical order.
    ///
    /// Uses `4N(a+bω) = (2a + tb)² + |D_K| b²` to bound `b` first and then
    /// solve for the exact `a`-interval, so membership never depends on
    /// floating point.
    pub fn enumerate_by_norm(&self, bound: u64, include_zero: bool) -> Vec<OKElt> {
        self.enumerate_by_norm_i64(bound, include_zero).into_iter().map(|(a, b)| OKElt::new(a, b)).collect()
    }

    /// Machine-integer variant of [`FieldParams::enumerate_by_norm`].
    pub fn enumerate_by_norm_i64(&self, bound: u64, include_zero: bool) -> Vec<(i64, i64)> {
        let t = self.omega_trace() as i128;
        let abs_disc = self.disc.unsigned_abs() as i128;
        let four_bound = 4 * bound as i128;
        let b_max = (four_bound / abs_disc).sqrt() as i64;
        let mut out: Vec<(i128, i64, i64)> = Vec::new();
        for b in -b_max..=b_max {
            let bi = b as i128;
            let rem = four_bound - abs_disc * bi * bi;
            if rem < 0 {
                continue;
            }
            let s = rem.sqrt();
            // 2a + tb ∈ [−s, s]
            let lo = div_ceil(-s - t * bi, 2);
            let hi = (s - t * bi).div_euclid(2);
            for a in lo..=hi {
                if !include_zero && a == 0 && b == 0 {
                    continue;
                }
                let n = self.norm_i64(a as i64, b);
                out.push((n, a as i64, b));
            }
        }
        out.sort_unstable();
        out.into_iter().map(|(_, a, b)| (a, b)).collect()
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// `ring_ops` family as free functions for callers that prefer them.
pub fn ring_mul(field: &FieldParams, x: &OKElt, y: &OKElt) -> OKElt {
    field.mul(x, y)
}
