use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{max_in_constrained_disk, Point};
use crate::qfield::{FieldParams, OKElt};
use crate::residue::is_coprime;
use crate::sieve::FractionFamily;

/// A multiset of nonzero moduli inside the ball `|s| ≤ √Q`.
#[derive(Debug, Clone)]
pub struct ModuliSet {
    field: FieldParams,
    q: u64,
    elements: Vec<OKElt>,
}

impl ModuliSet {
    pub fn new(field: &FieldParams, q: u64, elements: Vec<OKElt>) -> Result<Self> {
        for s in &elements {
            if s.is_zero() || field.norm(s) > q.into() {
                return Err(Error::Precondition(format!("element {s} is not in B(0, sqrt({q})) minus the origin")));
            }
        }
        Ok(ModuliSet { field: field.clone(), q, elements })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elements(&self) -> &[OKElt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `S_t = {q : t·q ∈ S}`, multiplicities kept.
pub fn make_s_t(s: &ModuliSet, t: &OKElt) -> Result<Vec<OKElt>> {
    if t.is_zero() {
        return Err(Error::DivisionByZero("S_t with t = 0"));
    }
    let mut out = Vec::new();
    for x in s.elements() {
        if let Some(q) = s.field().exact_div(x, t)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// Points of `s_t` congruent to `l` mod `kmod`, as complex numbers.
pub(crate) fn congruent_points(field: &FieldParams, s_t: &[OKElt], kmod: &OKElt, l: &OKElt) -> Vec<Point> {
    s_t.iter()
        .filter(|q| field.divides(kmod, &(*q - l)))
        .map(|q| {
            let c = field.to_complex(q);
            [c.re, c.im]
        })
        .collect()
}

/// `A_t(u, k, l)`: the most points of `S_t` congruent to `l` mod `k` that fit
/// in a radius-`u` disk whose centre has `|y| ≤ √Q/|t|`.
pub fn count_a_t(
    field: &FieldParams,
    s_t: &[OKElt],
    q: u64,
    t: &OKElt,
    u: f64,
    kmod: &OKElt,
    l: &OKElt,
) -> Result<usize> {
    if t.is_zero() || kmod.is_zero() {
        return Err(Error::Precondition("A_t needs t, k nonzero".into()));
    }
    let big_r = (q as f64).sqrt() / field.to_complex(t).norm();
    if !(u >= 0.0) || u > big_r * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!("A_t needs 0 <= u <= {big_r}, got {u}")));
    }
    if !is_coprime(field, kmod, l)? {
        return Err(Error::Precondition(format!("A_t needs (k, l) = 1, got k = {kmod}, l = {l}")));
    }
    Ok(max_in_constrained_disk(&congruent_points(field, s_t, kmod, l), u, big_r))
}

/// Number of fractions `r/m` of the family with `|r/m − α| ≤ radius`.
pub fn count_fractions_near(family: &FractionFamily, alpha: Complex64, radius: f64) -> Result<usize> {
    if !(radius >= 0.0) {
        return Err(Error::Precondition(format!("radius must be nonnegative, got {radius}")));
    }
    let field = family.field();
    let r2 = radius * radius;
    Ok(family
        .fractions()
        .iter()
        .filter(|fr| {
            let w = field.mul(&fr.residue, &field.conj(&fr.modulus));
            let z = field.to_complex(&w) / fr.modulus_norm as f64;
            let d2 = (z - alpha).norm_sqr();
            d2 <= r2 + 1e-12 * r2.max(1e-300)
        })
        .count())
}
