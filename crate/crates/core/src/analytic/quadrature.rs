//! Adaptive Gauss–Kronrod (7, 15) quadrature for complex integrands, and a
//! nested 2D version over rectangles.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Interval budget per 1D integral before giving up.
pub const MAX_INTERVALS: usize = 4000;

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [Complex64::new(0.0, 0.0); 15];
    values[7] = f(center);
    for j in 0..7 {
        let dx = half * XGK[j];
        values[j] = f(center - dx);
        values[14 - j] = f(center + dx);
    }
    let weight = |i: usize| WGK[if i <= 7 { i } else { 14 - i }];
    let mut kronrod = Complex64::new(0.0, 0.0);
    for (i, v) in values.iter().enumerate() {
        kronrod += v * weight(i);
    }
    let mut gauss = values[7] * WG[3];
    for j in [1, 3, 5] {
        gauss += (values[j] + values[14 - j]) * WG[j / 2];
    }
    let mean = kronrod * 0.5;
    let asc: f64 = values.iter().enumerate().map(|(i, v)| weight(i) * (v - mean).norm()).sum::<f64>() * half.abs();
    let k = kronrod * half;
    let mut err = ((kronrod - gauss) * half).norm();
    // QUADPACK's scaling of the raw Kronrod–Gauss difference
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    (k, err)
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// `∫_a^b f` to absolute error `abs_tol`, bisecting the worst interval first.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, abs_tol: f64) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (value, err) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, err });
    let mut total_err = err;
    let mut pieces = 1;
    while total_err > abs_tol {
        if pieces >= MAX_INTERVALS {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}] stalled at error {total_err:e} (target {abs_tol:e})"
            )));
        }
        let worst = heap.pop().expect("nonempty");
        if worst.b - worst.a < 1e-13 * (b - a).abs() {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}] cannot resolve the integrand near {}",
                worst.a
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total_err += e1 + e2 - worst.err;
        heap.push(Piece { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, err: e2 });
        pieces += 1;
        // the running sum drifts; recompute when close to the target
        if total_err <= abs_tol {
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }
    let mut sorted: Vec<Piece> = heap.into_vec();
    sorted.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("finite endpoints"));
    Ok(sorted.iter().map(|p| p.value).sum())
}

/// `∫∫ f(x, y) dx dy` over `[ax, bx] × [ay, by]`, as an outer integral in `y`
/// of inner integrals in `x`.
pub fn integrate_2d<F: Fn(f64, f64) -> Complex64>(
    f: F,
    x: (f64, f64),
    y: (f64, f64),
    abs_tol: f64,
) -> Result<Complex64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_tol = abs_tol / (4.0 * (y.1 - y.0).abs().max(1.0));
    let outer = integrate(
        |yy| match integrate(|xx| f(xx, yy), x.0, x.1, inner_tol) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        y.0,
        y.1,
        abs_tol / 2.0,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(outer),
    }
}

/// Smallest half-width `L` (to within 1/64) of the square `[−L, L]²` outside
/// which `|f| ≤ threshold · peak`, judged on the square's boundary.
pub fn support_half_width<F: Fn(f64, f64) -> f64>(f: F, threshold: f64) -> Result<f64> {
    const SAMPLES: usize = 256;
    let boundary_max = |l: f64| {
        (0..=SAMPLES)
            .flat_map(|i| {
                let s = -l + 2.0 * l * i as f64 / SAMPLES as f64;
                [f(s, l), f(s, -l), f(l, s), f(-l, s)]
            })
            .fold(0.0f64, f64::max)
    };
    let mut peak = 0.0f64;
    for i in 0..=64 {
        for j in 0..=64 {
            peak = peak.max(f(-2.0 + i as f64 / 16.0, -2.0 + j as f64 / 16.0));
        }
    }
    if peak == 0.0 {
        return Ok(1.0);
    }
    let ok = |l: f64| boundary_max(l) <= threshold * peak;
    let mut hi = 1.0;
    while !ok(hi) {
        hi *= 2.0;
        if hi > 1024.0 {
            return Err(Error::NonConvergence("integrand does not decay within |x|, |y| <= 1024".into()));
        }
    }
    let mut lo = hi / 2.0;
    while hi - lo > 1.0 / 64.0 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
