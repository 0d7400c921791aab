//! Partition of the plane into obstacle, safe and risk regions.
//!
//! Two representations are supported: a labelled cell grid and a polygon
//! world. The risk region is treated as an open set and free space as a
//! closed set, so points exactly on a safe/risk boundary classify as Safe
//! and points on an obstacle boundary are collision-free.

use crate::error::{Error, Result};
use crate::geom::{point_in_polygon, segment_intersection_params, Point, Polygon, PolygonSide};
use serde::{Deserialize, Serialize};

/// Zone of a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZoneLabel {
    Obstacle,
    Safe,
    Risk,
}

/// Direction of a safe/risk boundary crossing along a directed segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossDirection {
    SafeToRisk,
    RiskToSafe,
}

/// A boundary crossing at `param` (in (0,1)) along a directed segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub param: f64,
    pub direction: CrossDirection,
}

/// Crossing params closer than this (in param units) are merged.
pub const CROSSING_MERGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct GridWorld {
    rows: usize,
    cols: usize,
    cell_size: f64,
    cells: Vec<ZoneLabel>, // row-major
}

#[derive(Clone, Debug)]
pub struct PolygonWorld {
    pub obstacles: Vec<Polygon>,
    pub risk: Vec<Polygon>,
    /// Bounding region `(min, max)`; queries outside it are errors.
    pub bounds: (Point, Point),
}

#[derive(Clone, Debug)]
pub enum World {
    Grid(GridWorld),
    Polygons(PolygonWorld),
}

impl GridWorld {
    pub fn new(rows: usize, cols: usize, cell_size: f64, cells: Vec<ZoneLabel>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("grid dimensions must be >= 1".into()));
        }
        let valid_cell = cell_size.is_finite() && cell_size > 0.0;
        if !valid_cell {
            return Err(Error::InvalidParameter("cell_size must be > 0".into()));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "expected {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        Ok(GridWorld { rows, cols, cell_size, cells })
    }

    /// Uniform world of one label.
    pub fn uniform(rows: usize, cols: usize, cell_size: f64, label: ZoneLabel) -> Self {
        GridWorld { rows, cols, cell_size, cells: vec![label; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn cell(&self, row: usize, col: usize) -> ZoneLabel {
        self.cells[row * self.cols + col]
    }

    pub fn set_cell(&mut self, row: usize, col: usize, label: ZoneLabel) {
        self.cells[row * self.cols + col] = label;
    }

    /// Center of cell `(row, col)`.
    pub fn cell_center(&self, row: usize, col: usize) -> Point {
        Point::new(
            (col as f64 + 0.5) * self.cell_size,
            (row as f64 + 0.5) * self.cell_size,
        )
    }

    /// Inclusive range of cell indices along one axis whose closed extent
    /// contains `coord`. Points exactly on an interior grid line belong to
    /// both adjacent cells.
    fn axis_cells(coord: f64, cell_size: f64, n: usize) -> Option<(usize, usize)> {
        let t = coord / cell_size;
        if !t.is_finite() || t < 0.0 || t > n as f64 {
            return None;
        }
        let fl = t.floor();
        let on_line = t == fl;
        let hi = (fl as i64).min(n as i64 - 1);
        let lo = if on_line { (fl as i64 - 1).max(0) } else { hi };
        Some((lo as usize, hi as usize))
    }

    fn containing_cells(&self, p: Point) -> Option<((usize, usize), (usize, usize))> {
        let cols = Self::axis_cells(p.x, self.cell_size, self.cols)?;
        let rows = Self::axis_cells(p.y, self.cell_size, self.rows)?;
        Some((rows, cols))
    }

    fn classify(&self, p: Point) -> Result<ZoneLabel> {
        let ((r0, r1), (c0, c1)) = self.containing_cells(p).ok_or(Error::OutOfBounds(p))?;
        let mut all_obstacle = true;
        let mut all_risk = true;
        for r in r0..=r1 {
            for c in c0..=c1 {
                match self.cell(r, c) {
                    ZoneLabel::Obstacle => all_risk = false,
                    ZoneLabel::Risk => all_obstacle = false,
                    ZoneLabel::Safe => {
                        all_obstacle = false;
                        all_risk = false;
                    }
                }
            }
        }
        Ok(if all_obstacle {
            ZoneLabel::Obstacle
        } else if all_risk {
            ZoneLabel::Risk
        } else {
            ZoneLabel::Safe
        })
    }

    /// Interior grid-line crossing params of the segment, per axis, open (0,1).
    fn line_params(a: f64, b: f64, cell_size: f64, out: &mut Vec<f64>) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let k0 = (lo / cell_size).ceil() as i64;
        let k1 = (hi / cell_size).floor() as i64;
        for k in k0..=k1 {
            let t = (k as f64 * cell_size - a) / (b - a);
            if t > 0.0 && t < 1.0 {
                out.push(t);
            }
        }
    }

    /// Every cell the closed segment touches, including cells met only at a
    /// corner (supercover semantics, so diagonal moves cannot cut corners).
    pub fn supercover(&self, a: Point, b: Point) -> Result<Vec<(usize, usize)>> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        Self::line_params(a.x, b.x, self.cell_size, &mut xs);
        Self::line_params(a.y, b.y, self.cell_size, &mut ys);
        let mut params: Vec<f64> = xs.iter().chain(ys.iter()).copied().collect();
        params.sort_by(f64::total_cmp);
        params.dedup_by(|x, first| (*x - *first).abs() <= CROSSING_MERGE_TOL);

        let mut cells = Vec::new();
        let mut push_cell = |rc: ((usize, usize), (usize, usize))| {
            let ((r0, r1), (c0, c1)) = rc;
            for r in r0..=r1 {
                for c in c0..=c1 {
                    if !cells.contains(&(r, c)) {
                        cells.push((r, c));
                    }
                }
            }
        };

        // Interior stretches.
        let mut prev = 0.0;
        for &t in params.iter().chain(std::iter::once(&1.0)) {
            let mid = a.lerp(b, (prev + t) / 2.0);
            push_cell(self.containing_cells(mid).ok_or(Error::OutOfBounds(mid))?);
            prev = t;
        }
        // Corner passes: an x-line and a y-line crossed at the same param.
        for &tx in &xs {
            for &ty in &ys {
                if (tx - ty).abs() <= CROSSING_MERGE_TOL {
                    let corner = a.lerp(b, tx);
                    push_cell(self.containing_cells(corner).ok_or(Error::OutOfBounds(corner))?);
                }
            }
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(cells)
    }
}

/// ASCII grid text: header `grid <rows> <cols> <cell_size>`, then one row per
/// line with `#` = Obstacle, `.` = Safe, `~` = Risk.
impl GridWorld {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty grid text".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "grid" {
            return Err(Error::Parse {
                line: 1,
                message: "expected header `grid <rows> <cols> <cell_size>`".into(),
            });
        }
        let rows: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad row count `{}`", fields[1]),
        })?;
        let cols: usize = fields[2].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad column count `{}`", fields[2]),
        })?;
        let cell_size: f64 = fields[3].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad cell size `{}`", fields[3]),
        })?;

        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (idx, row) = lines.next().ok_or(Error::Parse {
                line: r + 2,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            let chars: Vec<char> = row.trim_end().chars().collect();
            if chars.len() != cols {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected {cols} columns, found {}", chars.len()),
                });
            }
            for ch in chars {
                cells.push(match ch {
                    '#' => ZoneLabel::Obstacle,
                    '.' => ZoneLabel::Safe,
                    '~' => ZoneLabel::Risk,
                    other => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            message: format!("unknown cell character `{other}`"),
                        })
                    }
                });
            }
        }
        GridWorld::new(rows, cols, cell_size, cells)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("grid {} {} {}\n", self.rows, self.cols, self.cell_size);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(match self.cell(r, c) {
                    ZoneLabel::Obstacle => '#',
                    ZoneLabel::Safe => '.',
                    ZoneLabel::Risk => '~',
                });
            }
            out.push('\n');
        }
        out
    }
}

impl PolygonWorld {
    pub fn new(obstacles: Vec<Polygon>, risk: Vec<Polygon>, bounds: Option<(Point, Point)>) -> Result<Self> {
        let bounds = match bounds {
            Some(b) => b,
            None => {
                let all: Vec<Point> =
                    obstacles.iter().chain(risk.iter()).flatten().copied().collect();
                if all.is_empty() {
                    return Err(Error::InvalidParameter(
                        "polygon world needs explicit bounds or at least one polygon".into(),
                    ));
                }
                let min = Point::new(
                    all.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
                    all.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
                );
                let max = Point::new(
                    all.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
                    all.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
                );
                (min, max)
            }
        };
        if !(bounds.0.x < bounds.1.x && bounds.0.y < bounds.1.y) {
            return Err(Error::InvalidParameter("degenerate polygon world bounds".into()));
        }
        Ok(PolygonWorld { obstacles, risk, bounds })
    }

    fn in_bounds(&self, p: Point) -> bool {
        p.x >= self.bounds.0.x && p.x <= self.bounds.1.x && p.y >= self.bounds.0.y && p.y <= self.bounds.1.y
    }

    fn classify(&self, p: Point) -> Result<ZoneLabel> {
        if !self.in_bounds(p) {
            return Err(Error::OutOfBounds(p));
        }
        // Obstacle boundaries belong to free space (free space is closed).
        for poly in &self.obstacles {
            if point_in_polygon(p, poly) == PolygonSide::Inside {
                return Ok(ZoneLabel::Obstacle);
            }
        }
        // Risk polygons are open: boundary points are Safe.
        for poly in &self.risk {
            if point_in_polygon(p, poly) == PolygonSide::Inside {
                return Ok(ZoneLabel::Risk);
            }
        }
        Ok(ZoneLabel::Safe)
    }

    fn edge_params(&self, a: Point, b: Point, polys: &[Polygon]) -> Vec<f64> {
        let mut params = Vec::new();
        for poly in polys {
            let n = poly.len();
            for i in 0..n {
                for t in segment_intersection_params(a, b, poly[i], poly[(i + 1) % n]) {
                    params.push(t);
                }
            }
        }
        params
    }
}

impl World {
    /// Label of a single point. Points on the safe/risk boundary are Safe.
    pub fn classify_point(&self, p: Point) -> Result<ZoneLabel> {
        match self {
            World::Grid(g) => g.classify(p),
            World::Polygons(w) => w.classify(p),
        }
    }

    /// True when the closed segment `a-b` touches the obstacle region.
    pub fn segment_collides(&self, a: Point, b: Point) -> Result<bool> {
        match self {
            World::Grid(g) => {
                let cells = g.supercover(a, b)?;
                Ok(cells.iter().any(|&(r, c)| g.cell(r, c) == ZoneLabel::Obstacle))
            }
            World::Polygons(w) => {
                // Proper intersection with an obstacle edge, or a stretch that
                // runs strictly inside an obstacle.
                let hits = w.edge_params(a, b, &w.obstacles);
                if hits.iter().any(|&t| t > 0.0 && t < 1.0) {
                    return Ok(true);
                }
                for (_, zone) in self.segment_stretches(a, b)? {
                    if zone == ZoneLabel::Obstacle {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Candidate split params of the segment (boundary and grid-line hits),
    /// sorted ascending, deduplicated at [`CROSSING_MERGE_TOL`].
    fn split_params(&self, a: Point, b: Point) -> Vec<f64> {
        let mut params = match self {
            World::Grid(g) => {
                let mut ps = Vec::new();
                GridWorld::line_params(a.x, b.x, g.cell_size, &mut ps);
                GridWorld::line_params(a.y, b.y, g.cell_size, &mut ps);
                ps
            }
            World::Polygons(w) => {
                let mut ps = w.edge_params(a, b, &w.obstacles);
                ps.extend(w.edge_params(a, b, &w.risk));
                ps.retain(|&t| t > 0.0 && t < 1.0);
                ps
            }
        };
        params.sort_by(f64::total_cmp);
        params.dedup_by(|x, first| (*x - *first).abs() <= CROSSING_MERGE_TOL);
        params
    }

    /// Maximal uniform stretches of the segment as `(end_param, zone)` pairs,
    /// classified at stretch midpoints. The last `end_param` is 1. Adjacent
    /// stretches may share a zone (tangential boundary touches).
    pub fn segment_stretches(&self, a: Point, b: Point) -> Result<Vec<(f64, ZoneLabel)>> {
        let params = self.split_params(a, b);
        let mut out = Vec::with_capacity(params.len() + 1);
        let mut prev = 0.0;
        for t in params.into_iter().chain(std::iter::once(1.0)) {
            let mid = a.lerp(b, (prev + t) / 2.0);
            out.push((t, self.classify_point(mid)?));
            prev = t;
        }
        Ok(out)
    }

    /// All safe/risk boundary crossings in order from `a` to `b`.
    ///
    /// Uniform segments return an empty list; tangential touches produce no
    /// crossing. Segments touching the obstacle region are errors.
    pub fn segment_crossings(&self, a: Point, b: Point) -> Result<Vec<Crossing>> {
        if self.segment_collides(a, b)? {
            return Err(Error::Collision { from: a, to: b });
        }
        let stretches = self.segment_stretches(a, b)?;
        let mut crossings = Vec::new();
        for window in stretches.windows(2) {
            let (end_prev, zone_prev) = window[0];
            let (_, zone_next) = window[1];
            if zone_prev != zone_next {
                let direction = match (zone_prev, zone_next) {
                    (ZoneLabel::Safe, ZoneLabel::Risk) => CrossDirection::SafeToRisk,
                    (ZoneLabel::Risk, ZoneLabel::Safe) => CrossDirection::RiskToSafe,
                    other => {
                        return Err(Error::Internal(format!(
                            "unexpected zone transition {other:?} on collision-free segment"
                        )))
                    }
                };
                crossings.push(Crossing { param: end_prev, direction });
            }
        }
        Ok(crossings)
    }

    /// Bounding box `(min, max)` of the world.
    pub fn bounds(&self) -> (Point, Point) {
        match self {
            World::Grid(g) => (
                Point::new(0.0, 0.0),
                Point::new(g.cols as f64 * g.cell_size, g.rows as f64 * g.cell_size),
            ),
            World::Polygons(w) => w.bounds,
        }
    }
}

/// Coastal-navigation construction: a cell is Risk iff its center is farther
/// than `d` from every obstacle, Obstacle if its center lies inside one, Safe
/// otherwise.
pub fn risk_offset_world(
    obstacles: &[Polygon],
    d: f64,
    rows: usize,
    cols: usize,
    cell_size: f64,
) -> Result<GridWorld> {
    let valid_d = d.is_finite() && d > 0.0;
    if !valid_d {
        return Err(Error::InvalidParameter("risk offset d must be > 0".into()));
    }
    let valid_cell = cell_size.is_finite() && cell_size > 0.0;
    if rows == 0 || cols == 0 || !valid_cell {
        return Err(Error::InvalidParameter("grid dimensions must be >= 1 with cell_size > 0".into()));
    }
    let mut grid = GridWorld::uniform(rows, cols, cell_size, ZoneLabel::Safe);
    for r in 0..rows {
        for c in 0..cols {
            let center = grid.cell_center(r, c);
            let mut inside = false;
            let mut dist = f64::INFINITY;
            for poly in obstacles {
                match point_in_polygon(center, poly) {
                    PolygonSide::Inside => {
                        inside = true;
                        break;
                    }
                    PolygonSide::OnBoundary => {
                        dist = 0.0;
                    }
                    PolygonSide::Outside => {
                        dist = dist.min(dist_point_polygon_boundary(center, poly));
                    }
                }
            }
            let label = if inside {
                ZoneLabel::Obstacle
            } else if dist > d {
                ZoneLabel::Risk
            } else {
                ZoneLabel::Safe
            };
            grid.set_cell(r, c, label);
        }
    }
    Ok(grid)
}

fn dist_point_polygon_boundary(p: Point, poly: &[Point]) -> f64 {
    let n = poly.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        best = best.min(dist_point_segment(p, poly[i], poly[(i + 1) % n]));
    }
    best
}

fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let len2 = (b.x - a.x).powi(2) + (b.y - a.y).powi(2);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// JSON document describing a polygon world, optionally converted to a grid
/// via the coastal-offset construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonWorldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[[f64; 2]; 2]>,
    #[serde(default)]
    pub obstacles: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub risk: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub risk_offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDims>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridDims {
    pub rows: usize,
    pub cols: usize,
    pub cell_size: f64,
}

impl PolygonWorldSpec {
    pub fn into_world(self) -> Result<World> {
        let obstacles: Vec<Polygon> = self
            .obstacles
            .iter()
            .map(|poly| poly.iter().map(|&p| Point::from(p)).collect())
            .collect();
        if let Some(d) = self.risk_offset {
            if !self.risk.is_empty() {
                return Err(Error::InvalidParameter(
                    "specify either risk polygons or risk_offset, not both".into(),
                ));
            }
            let dims = self.grid.ok_or_else(|| {
                Error::InvalidParameter("risk_offset needs a grid resolution block".into())
            })?;
            let grid = risk_offset_world(&obstacles, d, dims.rows, dims.cols, dims.cell_size)?;
            return Ok(World::Grid(grid));
        }
        let risk: Vec<Polygon> = self
            .risk
            .iter()
            .map(|poly| poly.iter().map(|&p| Point::from(p)).collect())
            .collect();
        let bounds = self
            .bounds
            .map(|[min, max]| (Point::from(min), Point::from(max)));
        Ok(World::Polygons(PolygonWorld::new(obstacles, risk, bounds)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn strip_world() -> World {
        World::Grid(GridWorld::parse("grid 1 3 1.0\n.~.\n").unwrap())
    }

    #[test]
    fn classify_uniform_safe() {
        let w = World::Grid(GridWorld::uniform(3, 3, 1.0, ZoneLabel::Safe));
        assert_eq!(w.classify_point(Point::new(1.5, 1.5)).unwrap(), ZoneLabel::Safe);
    }

    #[test]
    fn classify_out_of_bounds() {
        let w = World::Grid(GridWorld::uniform(2, 2, 1.0, ZoneLabel::Safe));
        assert!(matches!(
            w.classify_point(Point::new(5.0, 0.5)),
            Err(Error::OutOfBounds(_))
        ));
    }

    #[test]
    fn boundary_points_are_safe() {
        // Shared edge between a Safe and a Risk cell.
        let w = strip_world();
        assert_eq!(w.classify_point(Point::new(1.0, 0.5)).unwrap(), ZoneLabel::Safe);
        // Interior of the risk cell.
        assert_eq!(w.classify_point(Point::new(1.5, 0.5)).unwrap(), ZoneLabel::Risk);
        // Edge between two risk cells stays Risk.
        let rr = World::Grid(GridWorld::parse("grid 1 2 1.0\n~~\n").unwrap());
        assert_eq!(rr.classify_point(Point::new(1.0, 0.5)).unwrap(), ZoneLabel::Risk);
    }

    #[test]
    fn risk_polygon_boundary_is_safe() {
        let w = World::Polygons(
            PolygonWorld::new(
                vec![],
                vec![vec![
                    Point::new(1.0, 1.0),
                    Point::new(3.0, 1.0),
                    Point::new(3.0, 3.0),
                    Point::new(1.0, 3.0),
                ]],
                Some((Point::new(0.0, 0.0), Point::new(4.0, 4.0))),
            )
            .unwrap(),
        );
        assert_eq!(w.classify_point(Point::new(1.0, 2.0)).unwrap(), ZoneLabel::Safe);
        assert_eq!(w.classify_point(Point::new(2.0, 2.0)).unwrap(), ZoneLabel::Risk);
        assert_eq!(w.classify_point(Point::new(0.5, 0.5)).unwrap(), ZoneLabel::Safe);
    }

    #[test]
    fn crossings_uniform_segment_empty() {
        let w = World::Grid(GridWorld::uniform(3, 3, 1.0, ZoneLabel::Safe));
        let cs = w
            .segment_crossings(Point::new(0.5, 0.5), Point::new(2.5, 2.5))
            .unwrap();
        assert!(cs.is_empty());
    }

    #[test]
    fn crossings_single_boundary() {
        let w = strip_world();
        let cs = w
            .segment_crossings(Point::new(0.5, 0.5), Point::new(1.5, 0.5))
            .unwrap();
        assert_eq!(cs.len(), 1);
        assert_relative_eq!(cs[0].param, 0.5);
        assert_eq!(cs[0].direction, CrossDirection::SafeToRisk);
    }

    #[test]
    fn crossings_through_risk_strip() {
        // Full row traverse of `.~.`: boundaries at one third and two thirds.
        let w = strip_world();
        let cs = w
            .segment_crossings(Point::new(0.0, 0.5), Point::new(3.0, 0.5))
            .unwrap();
        assert_eq!(cs.len(), 2);
        assert_relative_eq!(cs[0].param, 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(cs[1].param, 2.0 / 3.0, max_relative = 1e-12);
        assert_eq!(cs[0].direction, CrossDirection::SafeToRisk);
        assert_eq!(cs[1].direction, CrossDirection::RiskToSafe);
    }

    #[test]
    fn reversed_segment_flips_crossings() {
        let w = strip_world();
        let fwd = w
            .segment_crossings(Point::new(0.0, 0.5), Point::new(3.0, 0.5))
            .unwrap();
        let rev = w
            .segment_crossings(Point::new(3.0, 0.5), Point::new(0.0, 0.5))
            .unwrap();
        assert_eq!(fwd.len(), rev.len());
        for (f, r) in fwd.iter().zip(rev.iter().rev()) {
            assert_relative_eq!(f.param, 1.0 - r.param, epsilon = 1e-12);
            assert_ne!(f.direction, r.direction);
        }
    }

    #[test]
    fn collision_detected_on_obstacle_pass() {
        let w = World::Grid(GridWorld::parse("grid 1 3 1.0\n.#.\n").unwrap());
        assert!(matches!(
            w.segment_crossings(Point::new(0.5, 0.5), Point::new(2.5, 0.5)),
            Err(Error::Collision { .. })
        ));
    }

    #[test]
    fn supercover_blocks_corner_cut() {
        // Diagonal between two safe cells with an obstacle touching the
        // shared corner must count as a collision.
        let w = World::Grid(GridWorld::parse("grid 2 2 1.0\n.#\n..\n").unwrap());
        assert!(w
            .segment_collides(Point::new(0.5, 0.5), Point::new(1.5, 1.5))
            .unwrap());
        // Without the obstacle the same move is free.
        let open = World::Grid(GridWorld::uniform(2, 2, 1.0, ZoneLabel::Safe));
        assert!(!open
            .segment_collides(Point::new(0.5, 0.5), Point::new(1.5, 1.5))
            .unwrap());
    }

    #[test]
    fn polygon_crossings_exact_params() {
        let w = World::Polygons(
            PolygonWorld::new(
                vec![],
                vec![vec![
                    Point::new(1.0, 0.0),
                    Point::new(2.0, 0.0),
                    Point::new(2.0, 4.0),
                    Point::new(1.0, 4.0),
                ]],
                Some((Point::new(0.0, 0.0), Point::new(4.0, 4.0))),
            )
            .unwrap(),
        );
        let cs = w
            .segment_crossings(Point::new(0.0, 1.0), Point::new(4.0, 1.0))
            .unwrap();
        assert_eq!(cs.len(), 2);
        assert_relative_eq!(cs[0].param, 0.25);
        assert_relative_eq!(cs[1].param, 0.5);
    }

    #[test]
    fn tangential_touch_produces_no_crossing() {
        // Segment running along the risk polygon's boundary.
        let w = World::Polygons(
            PolygonWorld::new(
                vec![],
                vec![vec![
                    Point::new(1.0, 1.0),
                    Point::new(3.0, 1.0),
                    Point::new(3.0, 3.0),
                    Point::new(1.0, 3.0),
                ]],
                Some((Point::new(0.0, 0.0), Point::new(4.0, 4.0))),
            )
            .unwrap(),
        );
        let cs = w
            .segment_crossings(Point::new(0.0, 1.0), Point::new(4.0, 1.0))
            .unwrap();
        assert!(cs.is_empty());
    }

    #[test]
    fn risk_offset_examples() {
        // Obstacle strip along the left edge, d = 2 cells: brute-force
        // distance check against the construction.
        let strip = vec![vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 8.0),
            Point::new(0.0, 8.0),
        ]];
        let d = 2.0;
        let grid = risk_offset_world(&strip, d, 8, 8, 1.0).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                let center = grid.cell_center(r, c);
                let expected = if point_in_polygon(center, &strip[0]) == PolygonSide::Inside {
                    ZoneLabel::Obstacle
                } else {
                    let dist = dist_point_polygon_boundary(center, &strip[0]);
                    if dist > d {
                        ZoneLabel::Risk
                    } else {
                        ZoneLabel::Safe
                    }
                };
                assert_eq!(grid.cell(r, c), expected, "cell ({r},{c})");
            }
        }

        // d larger than the world diameter: nothing is far enough.
        let far = risk_offset_world(&strip, 100.0, 8, 8, 1.0).unwrap();
        assert!((0..8).all(|r| (0..8).all(|c| far.cell(r, c) != ZoneLabel::Risk)));

        // No obstacles at all: every free cell is Risk.
        let empty = risk_offset_world(&[], 2.0, 4, 4, 1.0).unwrap();
        assert!((0..4).all(|r| (0..4).all(|c| empty.cell(r, c) == ZoneLabel::Risk)));

        assert!(matches!(
            risk_offset_world(&strip, 0.0, 4, 4, 1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn risk_offset_monotone_in_d() {
        let blob = vec![vec![
            Point::new(2.0, 2.0),
            Point::new(4.0, 2.5),
            Point::new(3.5, 4.5),
            Point::new(1.5, 4.0),
        ]];
        let small = risk_offset_world(&blob, 1.0, 10, 10, 0.7).unwrap();
        let large = risk_offset_world(&blob, 2.5, 10, 10, 0.7).unwrap();
        for r in 0..10 {
            for c in 0..10 {
                if small.cell(r, c) == ZoneLabel::Safe {
                    assert_ne!(large.cell(r, c), ZoneLabel::Risk, "cell ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn grid_text_round_trip() {
        let text = "grid 2 3 0.5\n.~#\n...\n";
        let grid = GridWorld::parse(text).unwrap();
        assert_eq!(grid.to_text(), text);
        assert_eq!(grid.cell(0, 1), ZoneLabel::Risk);
        assert_eq!(grid.cell(0, 2), ZoneLabel::Obstacle);
    }

    #[test]
    fn grid_parse_errors_carry_line_numbers() {
        let err = GridWorld::parse("grid 2 3 1.0\n.~#\n..\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other}"),
        }
    }
}
