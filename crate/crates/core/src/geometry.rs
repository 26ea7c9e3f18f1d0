//! Small planar helpers for the max-points-in-disk searches.

pub type Point = [f64; 2];

/// Slack when testing whether a point lies on a candidate disk's boundary.
pub const EPS: f64 = 1e-9;

pub fn dist(p: Point, q: Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Centres of the radius-`r` circles through both `p` and `q`.
pub fn centers_through(p: Point, q: Point, r: f64) -> Vec<Point> {
    let dd = dist(p, q);
    if dd == 0.0 || dd > 2.0 * r + EPS {
        return Vec::new();
    }
    let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
    let h = (r * r - dd * dd / 4.0).max(0.0).sqrt();
    let ux = -(q[1] - p[1]) / dd;
    let uy = (q[0] - p[0]) / dd;
    if h == 0.0 {
        return vec![mid];
    }
    vec![[mid[0] + h * ux, mid[1] + h * uy], [mid[0] - h * ux, mid[1] - h * uy]]
}

/// Intersections of the circle `|y − c1| = r1` with `|y − c2| = r2`.
pub fn circle_intersections(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<Point> {
    let dd = dist(c1, c2);
    if dd == 0.0 || dd > r1 + r2 + EPS || dd < (r1 - r2).abs() - EPS {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + dd * dd) / (2.0 * dd);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let ex = (c2[0] - c1[0]) / dd;
    let ey = (c2[1] - c1[1]) / dd;
    let base = [c1[0] + a * ex, c1[1] + a * ey];
    if h == 0.0 {
        return vec![base];
    }
    vec![[base[0] - h * ey, base[1] + h * ex], [base[0] + h * ey, base[1] - h * ex]]
}

/// Circumradius of a triangle, `None` when the points are collinear.
pub fn circumradius(a: Point, b: Point, c: Point) -> Option<f64> {
    let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if cross.abs() < 1e-15 {
        return None;
    }
    Some(dist(a, b) * dist(b, c) * dist(c, a) / (2.0 * cross.abs()))
}

/// Number of `points` (with multiplicity) in the closed disk `B(c, u)`.
pub fn count_in_disk(points: &[Point], c: Point, u: f64) -> usize {
    points.iter().filter(|&&p| dist(p, c) <= u + EPS).count()
}

/// `sup_{|y| ≤ big_r} #(points ∩ B(y, u))`, exactly.
///
/// The set of centres covering a fixed subset is an intersection of disks
/// with the constraint disk. It is either a single disk, whose centre is a
/// point or the origin, or it has a corner where two of the circles meet.
pub fn max_in_constrained_disk(points: &[Point], u: f64, big_r: f64) -> usize {
    if points.is_empty() {
        return 0;
    }
    let origin = [0.0, 0.0];
    let feasible = |c: Point| dist(c, origin) <= big_r + EPS;
    let mut best = 0;
    let mut try_center = |c: Point| {
        if feasible(c) {
            best = best.max(count_in_disk(points, c, u));
        }
    };
    try_center(origin);
    for (i, &p) in points.iter().enumerate() {
        let np = dist(p, origin);
        if np <= big_r {
            try_center(p);
        } else {
            try_center([p[0] * big_r / np, p[1] * big_r / np]);
        }
        for c in circle_intersections(p, u, origin, big_r) {
            try_center(c);
        }
        for &q in &points[i + 1..] {
            for c in centers_through(p, q, u) {
                try_center(c);
            }
        }
    }
    best
}
