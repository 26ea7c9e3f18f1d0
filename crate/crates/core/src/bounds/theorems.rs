use std::collections::HashMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::counting::{congruent_points, make_s_t, ModuliSet};
use crate::error::{Error, Result};
use crate::geometry::{circumradius, dist, max_in_constrained_disk, Point};
use crate::qfield::{FieldParams, OKElt};
use crate::residue::{coprime_residues, divisors, residue_system};

fn require_setup(s: &ModuliSet, n: u64) -> Result<()> {
    if !s.field().class_number_one() {
        return Err(Error::NotClassNumberOne(s.field().d()));
    }
    if n < 16 {
        return Err(Error::Precondition(format!("needs N >= 16, got {n}")));
    }
    Ok(())
}

/// Nonzero elements with `N(x)² ≤ bound`, i.e. `|x| ≤ bound^{1/4}`.
fn elements_with_norm_squared_at_most(field: &FieldParams, bound: u64) -> Vec<OKElt> {
    let max_norm = num_integer::Roots::sqrt(&bound);
    field.enumerate_by_norm(max_norm, false)
}

/// One divisor per associate class, the first in canonical order.
fn divisor_classes(field: &FieldParams, r: &OKElt) -> Result<Vec<OKElt>> {
    let mut reps: Vec<OKElt> = Vec::new();
    for t in divisors(field, r)? {
        let seen = reps.iter().any(|x| field.exact_div(&t, x).ok().flatten().is_some_and(|u| field.is_unit(&u)));
        if !seen {
            reps.push(t);
        }
    }
    Ok(reps)
}

/// `N·(1 + sup_r sup_z sup_h Σ_{t|r} Σ_m A_t(√Q/(√N|zt|), r/t, hm))`.
///
/// `r` runs over `1 ≤ |r| ≤ N^{1/4}`; the sum depends on `z` only through
/// `|z|`, which is sampled at `z_samples` log-spaced radii spanning
/// `[N^{−1/2}, √|D_K|/(|r|N^{1/4})]`. `h` runs over the invertible classes
/// mod `r` and `t` over divisors of `r` up to units.
pub fn theorem2_rhs(s: &ModuliSet, n: u64, z_samples: usize) -> Result<f64> {
    require_setup(s, n)?;
    if z_samples == 0 {
        return Err(Error::Precondition("z_samples must be positive".into()));
    }
    let field = s.field();
    let (qf, nf) = (s.q() as f64, n as f64);
    if s.is_empty() {
        return Ok(nf);
    }

    let mut jobs = Vec::new();
    for r in elements_with_norm_squared_at_most(field, n) {
        let abs_r = field.to_complex(&r).norm();
        let lo = nf.powf(-0.5);
        let hi = field.sqrt_abs_disc() / (abs_r * nf.powf(0.25));
        if lo > hi {
            continue;
        }
        let ts = divisor_classes(field, &r)?;
        let hs = coprime_residues(field, &r)?;
        let mut per_t = Vec::new();
        for t in &ts {
            let k = field.exact_div(&r, t)?.expect("t divides r");
            per_t.push((t.clone(), k.clone(), make_s_t(s, t)?, residue_system(field, &k)?));
        }
        for i in 0..z_samples {
            let abs_z = if z_samples == 1 { lo } else { lo * (hi / lo).powf(i as f64 / (z_samples - 1) as f64) };
            jobs.push((abs_r, abs_z, hs.clone(), per_t.clone()));
        }
    }

    let sup = jobs
        .par_iter()
        .map(|(abs_r, abs_z, hs, per_t)| -> Result<usize> {
            let mut best = 0usize;
            for h in hs {
                let mut total = 0usize;
                for (t, k, s_t, rs_k) in per_t {
                    let abs_t = field.to_complex(t).norm();
                    let big_r = qf.sqrt() / abs_t;
                    let u = (qf.sqrt() / (nf.sqrt() * abs_z * abs_t)).min(big_r);
                    let m_abs_max = 3.0 * abs_r * abs_z * qf.sqrt() / abs_t;
                    let m_norm_max = (m_abs_max * m_abs_max + 1e-9).floor() as u64;
                    // A_t depends on hm only through its class mod k.
                    let mut classes: HashMap<OKElt, usize> = HashMap::new();
                    for m in field.enumerate_by_norm(m_norm_max, false) {
                        if field.to_complex(&m).norm() > m_abs_max + 1e-12 {
                            continue;
                        }
                        if !crate::residue::is_coprime(field, &m, k)? {
                            continue;
                        }
                        *classes.entry(rs_k.reduce(&field.mul(h, &m))).or_default() += 1;
                    }
                    let mut keys: Vec<_> = classes.into_iter().collect();
                    keys.sort_by(|a, b| field.canonical_cmp(&a.0, &b.0));
                    for (l, mult) in keys {
                        let pts = congruent_points(field, s_t, k, &l);
                        total += mult * max_in_constrained_disk(&pts, u, big_r);
                    }
                }
                best = best.max(total);
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(nf * (1.0 + sup as f64))
}

/// Where the largest ratio in [`verify_x`] was found.
#[derive(Debug, Clone, PartialEq)]
pub struct XWitness {
    pub x: f64,
    pub t: OKElt,
    pub k: OKElt,
    pub l: OKElt,
    pub u: f64,
    pub count: usize,
}

/// Smallest `X` with `A_t(u,k,l) ≤ (1 + (|S_t|/N(k))/(Q/|t|²)·u²)·X` over
/// `|t| ≤ N^{1/4}`, `|k| ≤ N^{1/4}/|t|`, `(k,l) = 1` and
/// `|k|√Q/(√|D_K| N^{1/4}) ≤ u ≤ √Q/|t|`.
pub fn verify_x(s: &ModuliSet, n: u64) -> Result<f64> {
    Ok(verify_x_detailed(s, n)?.map_or(0.0, |w| w.x))
}

/// As [`verify_x`], with the maximising parameters; `None` when `S` is empty.
///
/// `A_t` is a nondecreasing step function of `u` and the right-hand side
/// grows with `u`, so the ratio peaks where `A_t` first reaches each level.
/// Those places lie among the critical radii of the point set.
pub fn verify_x_detailed(s: &ModuliSet, n: u64) -> Result<Option<XWitness>> {
    require_setup(s, n)?;
    if s.is_empty() {
        return Ok(None);
    }
    let field = s.field();
    let (qf, nf) = (s.q() as f64, n as f64);

    let mut jobs = Vec::new();
    for t in elements_with_norm_squared_at_most(field, n) {
        let s_t = make_s_t(s, &t)?;
        if s_t.is_empty() {
            continue;
        }
        let nt = field.norm(&t).to_u64().expect("small");
        for k in elements_with_norm_squared_at_most(field, n / (nt * nt)) {
            if nt * nt * field.norm(&k).to_u64().expect("small").pow(2) > n {
                continue;
            }
            for l in coprime_residues(field, &k)? {
                jobs.push((t.clone(), k.clone(), l, s_t.clone()));
            }
        }
    }

    let results = jobs
        .par_iter()
        .map(|(t, k, l, s_t)| -> Option<XWitness> {
            let abs_t = field.to_complex(t).norm();
            let abs_k = field.to_complex(k).norm();
            let big_r = qf.sqrt() / abs_t;
            let lo = abs_k * qf.sqrt() / (field.sqrt_abs_disc() * nf.powf(0.25));
            let hi = big_r;
            if lo > hi {
                return None;
            }
            let pts = congruent_points(field, s_t, k, l);
            if pts.is_empty() {
                return None;
            }
            let norm_k = field.norm(k).to_f64().expect("small");
            let slope = (s_t.len() as f64 / norm_k) / (qf / (abs_t * abs_t));
            let radii = critical_radii(&pts, big_r, lo, hi);
            let a = |u: f64| max_in_constrained_disk(&pts, u, big_r);
            let ratio = |u: f64, c: usize| c as f64 / (1.0 + slope * u * u);

            let mut best: Option<XWitness> = None;
            let mut consider = |u: f64, c: usize| {
                let x = ratio(u, c);
                if best.as_ref().is_none_or(|b| x > b.x) {
                    best = Some(XWitness { x, t: t.clone(), k: k.clone(), l: l.clone(), u, count: c });
                }
            };
            let mut i = 0;
            let mut level = a(radii[0]);
            consider(radii[0], level);
            // jump to the first radius where A_t exceeds the current level
            while i + 1 < radii.len() {
                let (mut lo_i, mut hi_i) = (i + 1, radii.len() - 1);
                if a(radii[hi_i]) <= level {
                    break;
                }
                while lo_i < hi_i {
                    let mid = (lo_i + hi_i) / 2;
                    if a(radii[mid]) > level {
                        hi_i = mid;
                    } else {
                        lo_i = mid + 1;
                    }
                }
                i = lo_i;
                level = a(radii[i]);
                consider(radii[i], level);
            }
            best
        })
        .collect::<Vec<_>>();

    Ok(results.into_iter().flatten().fold(None, |acc: Option<XWitness>, w| match acc {
        Some(b) if b.x >= w.x => Some(b),
        _ => Some(w),
    }))
}

/// Sorted, deduplicated radii in `[lo, hi]` at which the constrained
/// max-points-in-disk count can change, plus both endpoints.
fn critical_radii(pts: &[Point], big_r: f64, lo: f64, hi: f64) -> Vec<f64> {
    let origin = [0.0, 0.0];
    let mut radii = vec![lo, hi];
    for (i, &p) in pts.iter().enumerate() {
        let np = dist(p, origin);
        radii.push((np - big_r).abs());
        for &q in &pts[i + 1..] {
            radii.push(dist(p, q) / 2.0);
            // centres on the constraint circle equidistant from p and q
            if dist(p, q) > 0.0 {
                for y in bisector_on_circle(p, q, big_r) {
                    radii.push(dist(y, p));
                }
            }
            for &w in &pts[i + 1..] {
                if let Some(rad) = circumradius(p, q, w) {
                    radii.push(rad);
                }
            }
        }
    }
    radii.retain(|&u| u >= lo && u <= hi && u.is_finite());
    radii.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    radii
}

/// Points `y` with `|y| = big_r` and `|y − p| = |y − q|`.
fn bisector_on_circle(p: Point, q: Point, big_r: f64) -> Vec<Point> {
    let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
    let len = dist(p, q);
    let dir = [-(q[1] - p[1]) / len, (q[0] - p[0]) / len];
    // |mid + s·dir|² = R²
    let b = mid[0] * dir[0] + mid[1] * dir[1];
    let c = mid[0] * mid[0] + mid[1] * mid[1] - big_r * big_r;
    let disc = b * b - c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    [-b - sq, -b + sq].iter().map(|s| [mid[0] + s * dir[0], mid[1] + s * dir[1]]).collect()
}

/// `N + Q·X·N^ε·(√N + |S|)` with `X` from [`verify_x`].
pub fn theorem3_rhs(s: &ModuliSet, n: u64, epsilon: f64) -> Result<f64> {
    let x = verify_x(s, n)?;
    let nf = n as f64;
    Ok(nf + s.q() as f64 * x * nf.powf(epsilon) * (nf.sqrt() + s.len() as f64))
}
