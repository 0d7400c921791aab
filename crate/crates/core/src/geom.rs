//! Plain 2D geometry shared by worlds, roadmaps and the renderer.

use serde::{Deserialize, Serialize};

/// A point (or configuration) in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Point at parameter `t` along the segment from `self` to `other`.
    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point {
            x: self.x + (other.x - self.x) * t,
            y: self.y + (other.y - self.y) * t,
        }
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point { x: p[0], y: p[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Simple polygon given by its vertex loop (closing edge implied).
pub type Polygon = Vec<Point>;

/// Where a point sits relative to a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonSide {
    Inside,
    OnBoundary,
    Outside,
}

/// Even-odd ray cast with explicit boundary detection.
pub fn point_in_polygon(p: Point, poly: &[Point]) -> PolygonSide {
    let n = poly.len();
    if n < 3 {
        return PolygonSide::Outside;
    }
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if point_on_segment(p, a, b) {
            return PolygonSide::OnBoundary;
        }
        // Half-open rule on y so shared vertices are counted once.
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            let x_cross = a.x + t * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    if inside {
        PolygonSide::Inside
    } else {
        PolygonSide::Outside
    }
}

fn point_on_segment(p: Point, a: Point, b: Point) -> bool {
    let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if cross != 0.0 {
        return false;
    }
    let dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    let len2 = (b.x - a.x).powi(2) + (b.y - a.y).powi(2);
    dot >= 0.0 && dot <= len2
}

/// Intersection parameter of segment `a0-a1` with segment `b0-b1`, measured
/// along `a0-a1`. Collinear overlaps report the overlap endpoints.
pub fn segment_intersection_params(a0: Point, a1: Point, b0: Point, b1: Point) -> Vec<f64> {
    let r = Point::new(a1.x - a0.x, a1.y - a0.y);
    let s = Point::new(b1.x - b0.x, b1.y - b0.y);
    let denom = r.x * s.y - r.y * s.x;
    let qp = Point::new(b0.x - a0.x, b0.y - a0.y);
    let qp_cross_r = qp.x * r.y - qp.y * r.x;

    if denom == 0.0 {
        if qp_cross_r != 0.0 {
            return vec![]; // parallel, disjoint
        }
        // Collinear: project b endpoints onto a.
        let len2 = r.x * r.x + r.y * r.y;
        if len2 == 0.0 {
            return vec![];
        }
        let t0 = (qp.x * r.x + qp.y * r.y) / len2;
        let t1 = t0 + (s.x * r.x + s.y * r.y) / len2;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        if lo > hi {
            return vec![];
        }
        if lo == hi {
            return vec![lo];
        }
        return vec![lo, hi];
    }

    let t = (qp.x * s.y - qp.y * s.x) / denom;
    let u = qp_cross_r / denom;
    if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
        vec![t]
    } else {
        vec![]
    }
}
