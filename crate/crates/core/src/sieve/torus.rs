use std::f64::consts::PI;

use num_complex::Complex64;

use super::gram::GramOperator;
use crate::error::{Error, Result};
use crate::geometry::{centers_through, Point, EPS};

/// Which spacing quantity [`torus_counts`] returns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TorusMode {
    /// Largest number of points within `√2/N^{1/2}` of a single point.
    FCount(u64),
    /// Largest number of points in a disk of radius `Δ^{1/2}`, any centre.
    K0(f64),
}

/// Distance on `R²/Z²`.
pub fn torus_dist(p: Point, q: Point) -> f64 {
    let wrap = |x: f64| x - x.round();
    wrap(p[0] - q[0]).hypot(wrap(p[1] - q[1]))
}

pub fn torus_counts(points: &[Point], mode: TorusMode) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::Precondition("torus_counts needs at least one point".into()));
    }
    match mode {
        TorusMode::FCount(n) => {
            if n == 0 {
                return Err(Error::Precondition("F count needs N >= 1".into()));
            }
            let radius = 2f64.sqrt() / (n as f64).sqrt();
            Ok(points.iter().map(|&c| count_within(points, c, radius)).max().unwrap_or(0))
        }
        TorusMode::K0(delta) => {
            if !(delta > 0.0 && delta <= 0.5) {
                return Err(Error::Precondition(format!("K0 needs 0 < Δ <= 1/2, got {delta}")));
            }
            Ok(max_points_in_torus_disk(points, delta.sqrt()))
        }
    }
}

fn count_within(points: &[Point], c: Point, radius: f64) -> usize {
    points.iter().filter(|&&p| torus_dist(p, c) <= radius + EPS).count()
}

/// Exact sup over centres of the number of points covered by a radius-`radius`
/// disk on the torus.
///
/// Some optimal centre is either a point itself or lies at distance exactly
/// `radius` from two lifts of points, so those candidates suffice.
pub fn max_points_in_torus_disk(points: &[Point], radius: f64) -> usize {
    let reduced: Vec<Point> = points.iter().map(|p| [p[0].rem_euclid(1.0), p[1].rem_euclid(1.0)]).collect();
    let span = (2.0 * radius).ceil() as i64 + 1;
    let mut best = 0;
    for (i, &p) in reduced.iter().enumerate() {
        best = best.max(count_within(&reduced, p, radius));
        for &q in &reduced[i + 1..] {
            for zx in -span..=span {
                for zy in -span..=span {
                    let lifted = [q[0] + zx as f64, q[1] + zy as f64];
                    for c in centers_through(p, lifted, radius) {
                        best = best.max(count_within(&reduced, c, radius));
                    }
                }
            }
        }
    }
    best
}

/// The matrix `e(n·x_i)` with rows the points `x_i ∈ R²` and columns the
/// lattice points `n ∈ Z²` with `‖n‖² ≤ N`.
#[derive(Debug, Clone)]
pub struct TorusGram {
    points: Vec<Point>,
    cols: Vec<(i64, i64)>,
}

impl TorusGram {
    pub fn new(points: &[Point], n: u64) -> Self {
        let r = (n as f64).sqrt().floor() as i64 + 1;
        let mut cols: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|s| (-r..=r).map(move |t| (s, t)))
            .filter(|&(s, t)| (s * s + t * t) as u64 <= n)
            .collect();
        cols.sort_by_key(|&(s, t)| (s * s + t * t, s, t));
        TorusGram { points: points.to_vec(), cols }
    }

    pub fn columns(&self) -> &[(i64, i64)] {
        &self.cols
    }
}

impl GramOperator for TorusGram {
    fn rows(&self) -> usize {
        self.points.len()
    }

    fn cols(&self) -> usize {
        self.cols.len()
    }

    fn entry(&self, row: usize, col: usize) -> Complex64 {
        let x = self.points[row];
        let (s, t) = self.cols[col];
        let arg = s as f64 * x[0] + t as f64 * x[1];
        let (sn, cs) = (2.0 * PI * (arg - arg.round())).sin_cos();
        Complex64::new(cs, sn)
    }
}
