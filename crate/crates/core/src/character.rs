//! The additive character `ẽ_K(z) = e(Tr(z/√D_K))`.
//!
//! For `z = x + yω` with rational `x, y` we have `Tr(z/√D_K) = y`, since
//! `ω − ω̄ = √D_K`. The character of `n·r/m` is therefore `e(b/N(m))` where
//! `b` is the ω-coordinate of `n·r·m̄`, an exact rational phase.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};

/// A rational number in `[0, 1)` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPhase {
    num: BigInt,
    den: BigInt,
}

impl QPhase {
    /// Reduces `num/den` modulo 1 and to lowest terms.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("phase denominator is zero"));
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let r = num.mod_floor(&den);
        if r.is_zero() {
            return Ok(QPhase::zero());
        }
        let g = r.gcd(&den);
        Ok(QPhase { num: r / &g, den: den / g })
    }

    pub fn zero() -> Self {
        QPhase { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_i64(num: i64, den: i64) -> Result<Self> {
        QPhase::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The representative in `[−1/2, 1/2)` as a float.
    pub fn to_centered_f64(&self) -> f64 {
        let twice = &self.num * 2;
        let centered = if twice >= self.den { &self.num - &self.den } else { self.num.clone() };
        ratio_to_f64(&centered, &self.den)
    }
}

impl fmt::Display for QPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Add for &QPhase {
    type Output = QPhase;
    fn add(self, rhs: &QPhase) -> QPhase {
        QPhase::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
            .expect("denominators are positive")
    }
}

fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    match (num.to_i64(), den.to_i64()) {
        (Some(n), Some(d)) if n.unsigned_abs() < (1 << 53) && d < (1 << 53) => n as f64 / d as f64,
        _ => {
            // Scale both down so the quotient keeps full double precision.
            let bits = den.bits().saturating_sub(60);
            let n = (num >> bits).to_f64().unwrap_or(0.0);
            let d = (den >> bits).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// The exact phase of `ẽ_K(n·r/m)`.
pub fn phase(field: &FieldParams, n: &OKElt, r: &OKElt, m: &OKElt) -> Result<QPhase> {
    if m.is_zero() {
        return Err(Error::DivisionByZero("character modulus m is zero"));
    }
    let w = field.mul(&field.mul(n, r), &field.conj(m));
    QPhase::new(w.b, field.norm(m))
}

/// Phase of `ẽ_K(z)` for `z = num / den` with `num ∈ O_K` and a positive
/// rational integer `den`.
pub fn phase_of_quotient(num: &OKElt, den: &BigInt) -> Result<QPhase> {
    QPhase::new(num.b.clone(), den.clone())
}

/// `e(p) = cos 2πp + i sin 2πp`. Quarter phases are returned exactly.
pub fn eval_character(p: &QPhase) -> Complex64 {
    if p.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    if let Some(d) = p.den.to_u64() {
        match (d, p.num.to_u64()) {
            (2, _) => return Complex64::new(-1.0, 0.0),
            (4, Some(1)) => return Complex64::new(0.0, 1.0),
            (4, Some(3)) => return Complex64::new(0.0, -1.0),
            _ => {}
        }
    }
    let (s, c) = (2.0 * PI * p.to_centered_f64()).sin_cos();
    Complex64::new(c, s)
}

/// The defining formula `exp(2πi(z/√D_K − z̄/√D_K))` in complex floating
/// point, with `√D_K = i√|D_K|`. Only used to cross-check [`phase`].
pub fn eval_character_complex_oracle(field: &FieldParams, z: Complex64) -> Complex64 {
    let sqrt_disc = Complex64::new(0.0, field.sqrt_abs_disc());
    let arg = z / sqrt_disc - z.conj() / sqrt_disc;
    (Complex64::new(0.0, 2.0 * PI) * arg).exp()
}
