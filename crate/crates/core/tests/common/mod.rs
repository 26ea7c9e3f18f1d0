//! Reference computations shared by the integration tests. Everything here is
//! written from the definitions, with plain `f64` complex arithmetic, so it
//! shares no code path with the library beyond `OKElt` coordinates.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use num_traits::ToPrimitive;

use iqsieve::qfield::OKElt;

pub type C64 = Complex<f64>;

/// `|D_K|` for squarefree negative `d`.
pub fn abs_disc(d: i64) -> f64 {
    if d.rem_euclid(4) == 1 {
        (-d) as f64
    } else {
        (-4 * d) as f64
    }
}

pub fn omega(d: i64) -> C64 {
    let s = ((-d) as f64).sqrt();
    if d.rem_euclid(4) == 1 {
        C64::new(0.5, s / 2.0)
    } else {
        C64::new(0.0, s)
    }
}

pub fn embed(d: i64, a: i64, b: i64) -> C64 {
    C64::new(a as f64, 0.0) + omega(d) * b as f64
}

pub fn embed_elt(d: i64, x: &OKElt) -> C64 {
    embed(d, x.a.to_i64().expect("small"), x.b.to_i64().expect("small"))
}

/// `ẽ_K(z) = e(Tr(z/√D_K))`, with `√D_K = i√|D_K|`.
pub fn e_tilde(d: i64, z: C64) -> C64 {
    let sqrt_d = C64::new(0.0, abs_disc(d).sqrt());
    let tr = 2.0 * (z / sqrt_d).re;
    C64::from_polar(1.0, 2.0 * PI * tr)
}

/// Sieve matrix `ẽ_K(n r/m)` built from complex embeddings.
pub fn sieve_matrix(d: i64, fractions: &[(OKElt, OKElt)], cols: &[(i64, i64)]) -> DMatrix<C64> {
    let rows: Vec<C64> = fractions.iter().map(|(r, m)| embed_elt(d, r) / embed_elt(d, m)).collect();
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| e_tilde(d, embed(d, cols[j].0, cols[j].1) * rows[i]))
}

/// Largest eigenvalue of `A*A` from a dense Hermitian eigensolver, using
/// whichever of `A*A` and `AA*` is smaller.
pub fn dense_lambda_max(a: &DMatrix<C64>) -> f64 {
    let g = if a.nrows() <= a.ncols() { a * a.adjoint() } else { a.adjoint() * a };
    g.symmetric_eigenvalues().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// Lattice points `(s, t)` with `N(s + tω) ≤ n`.
pub fn lattice_ball(d: i64, n: u64) -> Vec<(i64, i64)> {
    let r = 2 * (n as f64).sqrt().ceil() as i64 + 2;
    let mut out = Vec::new();
    for s in -r..=r {
        for t in -r..=r {
            if embed(d, s, t).norm_sqr() <= n as f64 + 1e-9 {
                out.push((s, t));
            }
        }
    }
    out
}

pub fn torus_dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    let w = |x: f64| x - x.round();
    w(p[0] - q[0]).hypot(w(p[1] - q[1]))
}

/// Largest number of points in a radius-`radius` torus disk by grid search
/// with branch and bound. A cell of half-diagonal `h` centred at `c` holds
/// optimal centres covering at most `count(c, radius + h)` points.
pub fn torus_disk_grid_oracle(points: &[[f64; 2]], radius: f64) -> usize {
    const GRID: usize = 256;
    let count = |c: [f64; 2], r: f64| points.iter().filter(|&&p| torus_dist(p, c) <= r).count();
    let step = 1.0 / GRID as f64;
    let mut cells: Vec<([f64; 2], f64)> = (0..GRID * GRID)
        .map(|k| ([(k / GRID) as f64 * step + step / 2.0, (k % GRID) as f64 * step + step / 2.0], step))
        .collect();
    let mut best = 0;
    for _ in 0..48 {
        for &(c, _) in &cells {
            best = best.max(count(c, radius));
        }
        let mut next = Vec::new();
        for &(c, side) in &cells {
            if count(c, radius + side * std::f64::consts::FRAC_1_SQRT_2) > best {
                let q = side / 4.0;
                for (dx, dy) in [(-q, -q), (-q, q), (q, -q), (q, q)] {
                    next.push(([c[0] + dx, c[1] + dy], side / 2.0));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        cells = next;
    }
    best
}

/// `∬ f(x + yω) ẽ_K(−z(x + yω)) dx dy` by the trapezoid rule on a square
/// box of half-width `half` around `(cx, cy)`. For Gaussian-type `f` the
/// rule converges faster than any power of `h`.
pub fn trapezoid_transform(d: i64, f: impl Fn(C64) -> f64, z: C64, centre: (f64, f64), half: f64, h: f64) -> C64 {
    let steps = (half / h).ceil() as i64;
    let mut acc = C64::new(0.0, 0.0);
    for i in -steps..=steps {
        let x = centre.0 + i as f64 * h;
        for j in -steps..=steps {
            let y = centre.1 + j as f64 * h;
            let w = C64::new(x, 0.0) + omega(d) * y;
            let v = f(w);
            if v != 0.0 {
                acc += e_tilde(d, -z * w) * v;
            }
        }
    }
    acc * (h * h)
}

/// `(x, y)` with `x + yω = w`.
pub fn coords(d: i64, w: C64) -> (f64, f64) {
    let om = omega(d);
    let y = w.im / om.im;
    (w.re - y * om.re, y)
}

/// Right side of the twisted Poisson formula for `W(t) = exp(−πt)`, from the
/// closed-form transform `(2/√|D|)·exp(−4πN/|D|)`.
pub fn poisson_rhs_closed_form(d: i64, x: f64, n_mod: C64, r: C64) -> C64 {
    let dd = abs_disc(d);
    let nn = n_mod.norm_sqr();
    let mut acc = C64::new(0.0, 0.0);
    let reach = (40.0 * nn * dd / (4.0 * PI * x)).sqrt();
    let bound = (reach / omega(d).im).ceil() as i64 + 2;
    let span = bound + (reach.ceil() as i64);
    for a in -span..=span {
        for b in -bound..=bound {
            let k = embed(d, a, b);
            let w = (2.0 / dd.sqrt()) * (-4.0 * PI * k.norm_sqr() * x / (nn * dd)).exp();
            if w > 1e-300 {
                acc += e_tilde(d, k * r / n_mod) * w;
            }
        }
    }
    acc * (x / nn)
}

/// Left side of the same formula, summed directly over `m = r + n·j`.
pub fn poisson_lhs_direct(d: i64, x: f64, n_mod: C64, r: C64) -> f64 {
    let reach = ((40.0 * x / PI).sqrt() + r.norm()) / n_mod.norm();
    let bound = (reach / omega(d).im).ceil() as i64 + 2;
    let span = bound + reach.ceil() as i64;
    let mut acc = 0.0;
    for a in -span..=span {
        for b in -bound..=bound {
            let m = r + n_mod * embed(d, a, b);
            acc += (-PI * m.norm_sqr() / x).exp();
        }
    }
    acc
}
