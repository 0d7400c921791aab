//! Roadmap construction and zone refinement.
//!
//! A raw [`Roadmap`] is a collision-free geometric graph. [`Roadmap::refine`]
//! inserts a Border vertex at every safe/risk boundary crossing so that every
//! refined edge runs entirely through one zone. All algorithms operate on the
//! [`RefinedRoadmap`].

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::world::{GridWorld, World, ZoneLabel, CROSSING_MERGE_TOL};
use serde::{Deserialize, Serialize};

/// Zone of a refined vertex. Border vertices lie on the safe/risk boundary
/// and carry Safe semantics (exposure resets there).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexZone {
    Safe,
    Risk,
    Border,
}

/// Zone of a refined edge interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeZone {
    Safe,
    Risk,
}

/// Directed half of an undirected refined edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub to: u32,
    pub len: f64,
    pub zone: EdgeZone,
}

/// Where a refined vertex came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VertexOrigin {
    /// Vertex of the raw roadmap (same index).
    Original,
    /// Inserted on raw edge `(u, v)` at parameter `param`.
    Inserted { u: u32, v: u32, param: f64 },
}

/// Raw geometric roadmap: positions plus undirected collision-free edges.
#[derive(Clone, Debug)]
pub struct Roadmap {
    pub positions: Vec<Point>,
    pub edges: Vec<(u32, u32)>,
}

/// Zone-refined roadmap. Every edge is zone-pure and endpoints are
/// compatible with the edge zone (Safe edges join Safe/Border vertices, Risk
/// edges join Risk/Border vertices).
#[derive(Clone, Debug)]
pub struct RefinedRoadmap {
    positions: Vec<Point>,
    zones: Vec<VertexZone>,
    adj: Vec<Vec<Edge>>,
    origins: Vec<VertexOrigin>,
    /// Border vertex ids in ascending order.
    border: Vec<u32>,
    /// Ordinal of a vertex within `border`, `u32::MAX` elsewhere.
    border_ord: Vec<u32>,
    n_undirected_edges: usize,
}

impl Roadmap {
    pub fn len_of(&self, u: u32, v: u32) -> f64 {
        self.positions[u as usize].dist(self.positions[v as usize])
    }

    /// Insert Border vertices at every crossing and split edges into
    /// zone-pure pieces. Raw vertices that sit exactly on the boundary
    /// (crossing parameter within [`CROSSING_MERGE_TOL`] of an endpoint)
    /// are promoted to Border instead of spawning a duplicate vertex.
    pub fn refine(&self, world: &World) -> Result<RefinedRoadmap> {
        if self.positions.is_empty() {
            return Err(Error::EmptyRoadmap);
        }
        let mut positions = self.positions.clone();
        let mut zones = Vec::with_capacity(positions.len());
        for &p in &positions {
            match world.classify_point(p)? {
                ZoneLabel::Safe => zones.push(VertexZone::Safe),
                ZoneLabel::Risk => zones.push(VertexZone::Risk),
                ZoneLabel::Obstacle => {
                    return Err(Error::InvalidParameter(format!(
                        "roadmap vertex at ({}, {}) lies inside an obstacle",
                        p.x, p.y
                    )))
                }
            }
        }
        let mut origins = vec![VertexOrigin::Original; positions.len()];

        let mut sub_edges: Vec<(u32, u32, f64, EdgeZone)> = Vec::new();
        for &(u, v) in &self.edges {
            let (a, b) = (self.positions[u as usize], self.positions[v as usize]);
            let full_len = a.dist(b);
            if world.segment_collides(a, b)? {
                return Err(Error::Collision { from: a, to: b });
            }

            // Maximal uniform pieces of the edge: `cuts` are the boundary
            // params between them (tangential touches merge away).
            let mut cuts: Vec<f64> = Vec::new();
            let mut piece_zones: Vec<EdgeZone> = Vec::new();
            for (end, zone) in world.segment_stretches(a, b)? {
                let ez = match zone {
                    ZoneLabel::Safe => EdgeZone::Safe,
                    ZoneLabel::Risk => EdgeZone::Risk,
                    ZoneLabel::Obstacle => {
                        return Err(Error::Internal(format!(
                            "obstacle stretch survived the collision check on edge {u}-{v}"
                        )))
                    }
                };
                if piece_zones.last() == Some(&ez) {
                    *cuts.last_mut().unwrap() = end;
                } else {
                    cuts.push(end);
                    piece_zones.push(ez);
                }
            }
            // `cuts[i]` is the end param of piece i; the final entry is 1.
            cuts.pop();

            // Degenerate first/last pieces mean the endpoint sits on the
            // boundary: promote it instead of inserting a near-duplicate.
            if cuts.first().is_some_and(|&t| t <= CROSSING_MERGE_TOL) {
                zones[u as usize] = VertexZone::Border;
                cuts.remove(0);
                piece_zones.remove(0);
            }
            if cuts.last().is_some_and(|&t| t >= 1.0 - CROSSING_MERGE_TOL) {
                zones[v as usize] = VertexZone::Border;
                cuts.pop();
                piece_zones.pop();
            }
            // An endpoint classified Safe adjacent to a Risk piece (or the
            // numeric converse) also lies exactly on the boundary.
            let conflicts = |vz: VertexZone, ez: EdgeZone| {
                matches!(
                    (vz, ez),
                    (VertexZone::Safe, EdgeZone::Risk) | (VertexZone::Risk, EdgeZone::Safe)
                )
            };
            if conflicts(zones[u as usize], piece_zones[0]) {
                zones[u as usize] = VertexZone::Border;
            }
            if conflicts(zones[v as usize], *piece_zones.last().unwrap()) {
                zones[v as usize] = VertexZone::Border;
            }

            let mut chain: Vec<(u32, f64)> = vec![(u, 0.0)];
            for &t in &cuts {
                let id = positions.len() as u32;
                positions.push(a.lerp(b, t));
                zones.push(VertexZone::Border);
                origins.push(VertexOrigin::Inserted { u, v, param: t });
                chain.push((id, t));
            }
            chain.push((v, 1.0));
            for (pair, &zone) in chain.windows(2).zip(&piece_zones) {
                let (from, t0) = pair[0];
                let (to, t1) = pair[1];
                sub_edges.push((from, to, full_len * (t1 - t0), zone));
            }
        }

        RefinedRoadmap::assemble(positions, zones, origins, sub_edges)
    }
}

impl RefinedRoadmap {
    fn assemble(
        positions: Vec<Point>,
        zones: Vec<VertexZone>,
        origins: Vec<VertexOrigin>,
        sub_edges: Vec<(u32, u32, f64, EdgeZone)>,
    ) -> Result<Self> {
        let n = positions.len();
        let mut adj: Vec<Vec<Edge>> = vec![Vec::new(); n];
        for &(u, v, len, zone) in &sub_edges {
            let compatible = |vertex: u32| match zone {
                EdgeZone::Safe => zones[vertex as usize] != VertexZone::Risk,
                EdgeZone::Risk => zones[vertex as usize] != VertexZone::Safe,
            };
            if !compatible(u) || !compatible(v) {
                return Err(Error::Internal(format!(
                    "refined edge {u}-{v} ({zone:?}) has an incompatible endpoint"
                )));
            }
            adj[u as usize].push(Edge { to: v, len, zone });
            adj[v as usize].push(Edge { to: u, len, zone });
        }
        for list in &mut adj {
            list.sort_by_key(|e| e.to);
        }
        let border: Vec<u32> = (0..n as u32)
            .filter(|&v| zones[v as usize] == VertexZone::Border)
            .collect();
        let mut border_ord = vec![u32::MAX; n];
        for (ord, &v) in border.iter().enumerate() {
            border_ord[v as usize] = ord as u32;
        }
        Ok(RefinedRoadmap {
            positions,
            zones,
            adj,
            origins,
            border,
            border_ord,
            n_undirected_edges: sub_edges.len(),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_undirected_edges
    }

    pub fn position(&self, v: u32) -> Point {
        self.positions[v as usize]
    }

    pub fn zone(&self, v: u32) -> VertexZone {
        self.zones[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[Edge] {
        &self.adj[v as usize]
    }

    pub fn origin(&self, v: u32) -> VertexOrigin {
        self.origins[v as usize]
    }

    /// Border vertices in ascending id order.
    pub fn border_vertices(&self) -> &[u32] {
        &self.border
    }

    pub fn border_count(&self) -> usize {
        self.border.len()
    }

    /// Ordinal of `v` within [`Self::border_vertices`], if it is a Border vertex.
    pub fn border_ordinal(&self, v: u32) -> Option<u32> {
        let ord = self.border_ord[v as usize];
        (ord != u32::MAX).then_some(ord)
    }

    /// The edge `u -> v`, if present.
    pub fn edge_between(&self, u: u32, v: u32) -> Option<Edge> {
        self.adj[u as usize].iter().find(|e| e.to == v).copied()
    }

    /// Vertex nearest to `p`; ties resolve to the lowest id.
    pub fn nearest_vertex(&self, p: Point) -> u32 {
        let mut best = 0u32;
        let mut best_d = f64::INFINITY;
        for (i, &q) in self.positions.iter().enumerate() {
            let d = p.dist(q);
            if d < best_d {
                best_d = d;
                best = i as u32;
            }
        }
        best
    }

    /// Total length of a vertex path, `NotAnEdge` if consecutive vertices are
    /// not adjacent.
    pub fn path_length(&self, path: &[u32]) -> Result<f64> {
        let mut total = 0.0;
        for pair in path.windows(2) {
            let edge = self.edge_between(pair[0], pair[1]).ok_or(Error::NotAnEdge {
                from: pair[0] as usize,
                to: pair[1] as usize,
            })?;
            total += edge.len;
        }
        Ok(total)
    }
}

/// Roadmap with one vertex at the center of every free (non-obstacle) cell
/// and edges between 4- or 8-adjacent free cells whose connecting segment is
/// collision-free.
pub fn build_grid_roadmap(grid: &GridWorld, connectivity: u8) -> Result<Roadmap> {
    if connectivity != 4 && connectivity != 8 {
        return Err(Error::InvalidParameter(format!(
            "connectivity must be 4 or 8, got {connectivity}"
        )));
    }
    let world = World::Grid(grid.clone());
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut vertex_of = vec![u32::MAX; rows * cols];
    let mut positions = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if grid.cell(r, c) != ZoneLabel::Obstacle {
                vertex_of[r * cols + c] = positions.len() as u32;
                positions.push(grid.cell_center(r, c));
            }
        }
    }
    if positions.is_empty() {
        return Err(Error::EmptyRoadmap);
    }

    // Right, down, and (8-connected) the two down-diagonals: each undirected
    // pair is generated once.
    let offsets: &[(i64, i64)] = if connectivity == 4 {
        &[(0, 1), (1, 0)]
    } else {
        &[(0, 1), (1, 0), (1, 1), (1, -1)]
    };
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let u = vertex_of[r * cols + c];
            if u == u32::MAX {
                continue;
            }
            for &(dr, dc) in offsets {
                let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                if nr < 0 || nr >= rows as i64 || nc < 0 || nc >= cols as i64 {
                    continue;
                }
                let v = vertex_of[nr as usize * cols + nc as usize];
                if v == u32::MAX {
                    continue;
                }
                if !world.segment_collides(positions[u as usize], positions[v as usize])? {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(Roadmap { positions, edges })
}

fn halton(index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut i = index;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Deterministic sampling roadmap: the first `n` Halton points (bases 2 and
/// 3, starting at sequence index `offset + 1`) that fall in free space,
/// connected when closer than `radius` and collision-free.
pub fn build_halton_roadmap(world: &World, n: usize, radius: f64, offset: u64) -> Result<Roadmap> {
    if n == 0 {
        return Err(Error::EmptyRoadmap);
    }
    let valid_radius = radius.is_finite() && radius > 0.0;
    if !valid_radius {
        return Err(Error::InvalidParameter("connection radius must be > 0".into()));
    }
    let (min, max) = world.bounds();
    let (w, h) = (max.x - min.x, max.y - min.y);
    let mut positions = Vec::with_capacity(n);
    let mut index = offset + 1;
    let cap = offset + 1 + 1000 * n as u64;
    while positions.len() < n {
        if index > cap {
            return Err(Error::InvalidParameter(format!(
                "could not place {n} free samples (world almost fully blocked?)"
            )));
        }
        let p = Point::new(min.x + halton(index, 2) * w, min.y + halton(index, 3) * h);
        index += 1;
        if world.classify_point(p)? != ZoneLabel::Obstacle {
            positions.push(p);
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let (a, b) = (positions[u], positions[v]);
            if a.dist(b) <= radius && !world.segment_collides(a, b)? {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Ok(Roadmap { positions, edges })
}

/// JSON form of an explicit refined graph: vertices carry zones, edges are
/// zone-pure. Lengths default to Euclidean distance; explicit `len` may only
/// stretch an edge (admissibility of the straight-line heuristic).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExplicitGraphSpec {
    pub vertices: Vec<ExplicitVertex>,
    pub edges: Vec<ExplicitEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<u32>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExplicitVertex {
    pub x: f64,
    pub y: f64,
    pub zone: VertexZone,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExplicitEdge {
    pub u: u32,
    pub v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zone: Option<EdgeZone>,
}

impl ExplicitGraphSpec {
    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn build(&self) -> Result<RefinedRoadmap> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::EmptyRoadmap);
        }
        let positions: Vec<Point> = self.vertices.iter().map(|v| Point::new(v.x, v.y)).collect();
        let zones: Vec<VertexZone> = self.vertices.iter().map(|v| v.zone).collect();
        let mut sub_edges = Vec::with_capacity(self.edges.len());
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if e.u as usize >= n || e.v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {}-{} references a missing vertex",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {}", e.u)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidParameter(format!("duplicate edge {}-{}", e.u, e.v)));
            }
            let euclid = positions[e.u as usize].dist(positions[e.v as usize]);
            let len = match e.len {
                Some(len) if len + 1e-9 < euclid => {
                    return Err(Error::InvalidParameter(format!(
                        "edge {}-{} len {len} is shorter than its Euclidean distance {euclid}",
                        e.u, e.v
                    )))
                }
                Some(len) => len,
                None => euclid,
            };
            let zone = Self::edge_zone(zones[e.u as usize], zones[e.v as usize], e.zone)
                .map_err(|msg| Error::InvalidParameter(format!("edge {}-{}: {msg}", e.u, e.v)))?;
            sub_edges.push((e.u, e.v, len, zone));
        }
        let origins = vec![VertexOrigin::Original; n];
        RefinedRoadmap::assemble(positions, zones, origins, sub_edges)
    }

    fn edge_zone(
        zu: VertexZone,
        zv: VertexZone,
        declared: Option<EdgeZone>,
    ) -> std::result::Result<EdgeZone, String> {
        use VertexZone::*;
        let derived = match (zu, zv) {
            (Safe, Safe) | (Safe, Border) | (Border, Safe) => Some(EdgeZone::Safe),
            (Risk, Risk) | (Risk, Border) | (Border, Risk) => Some(EdgeZone::Risk),
            (Border, Border) => None,
            (Safe, Risk) | (Risk, Safe) => {
                return Err("safe and risk vertices cannot share an edge; insert a border vertex".into())
            }
        };
        match (derived, declared) {
            (Some(d), None) => Ok(d),
            (Some(d), Some(given)) if d == given => Ok(d),
            (Some(d), Some(given)) => Err(format!(
                "declared zone {given:?} contradicts the endpoint zones (must be {d:?})"
            )),
            (None, Some(given)) => Ok(given),
            (None, None) => Err("border-border edge needs an explicit zone".into()),
        }
    }

    /// Snapshot of a refined roadmap in explicit form.
    pub fn from_refined(r: &RefinedRoadmap) -> Self {
        let vertices = (0..r.n_vertices() as u32)
            .map(|v| {
                let p = r.position(v);
                ExplicitVertex { x: p.x, y: p.y, zone: r.zone(v) }
            })
            .collect();
        let mut edges = Vec::new();
        for u in 0..r.n_vertices() as u32 {
            for e in r.neighbors(u) {
                if u < e.to {
                    let euclid = r.position(u).dist(r.position(e.to));
                    let needs_len = (e.len - euclid).abs() > 1e-12;
                    let needs_zone =
                        r.zone(u) == VertexZone::Border && r.zone(e.to) == VertexZone::Border;
                    edges.push(ExplicitEdge {
                        u,
                        v: e.to,
                        len: needs_len.then_some(e.len),
                        zone: needs_zone.then_some(e.zone),
                    });
                }
            }
        }
        ExplicitGraphSpec { vertices, edges, start: None, goal: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::GridWorld;
    use approx::assert_relative_eq;

    fn strip() -> (World, Roadmap) {
        let grid = GridWorld::parse("grid 1 3 1.0\n.~.\n").unwrap();
        let roadmap = build_grid_roadmap(&grid, 4).unwrap();
        (World::Grid(grid), roadmap)
    }

    #[test]
    fn grid_roadmap_counts() {
        let grid = GridWorld::uniform(3, 3, 1.0, ZoneLabel::Safe);
        let four = build_grid_roadmap(&grid, 4).unwrap();
        assert_eq!(four.positions.len(), 9);
        assert_eq!(four.edges.len(), 12);
        let eight = build_grid_roadmap(&grid, 8).unwrap();
        assert_eq!(eight.edges.len(), 20);
    }

    #[test]
    fn grid_roadmap_skips_obstacles_and_corner_cuts() {
        let grid = GridWorld::parse("grid 2 2 1.0\n.#\n..\n").unwrap();
        let rm = build_grid_roadmap(&grid, 8).unwrap();
        assert_eq!(rm.positions.len(), 3);
        // The diagonal between (0,0) and (1,1) grazes the obstacle corner.
        let diag = rm.edges.iter().any(|&(u, v)| {
            let (a, b) = (rm.positions[u as usize], rm.positions[v as usize]);
            (a.dist(b) - std::f64::consts::SQRT_2).abs() < 1e-12
        });
        assert!(!diag, "corner-cutting diagonal must be rejected");
        assert_eq!(rm.edges.len(), 2);
    }

    #[test]
    fn refine_strip_inserts_borders() {
        let (world, roadmap) = strip();
        let refined = roadmap.refine(&world).unwrap();
        assert_eq!(refined.n_vertices(), 5);
        assert_eq!(refined.border_count(), 2);
        assert_eq!(refined.zone(0), VertexZone::Safe);
        assert_eq!(refined.zone(1), VertexZone::Risk);
        assert_eq!(refined.zone(2), VertexZone::Safe);
        assert_eq!(refined.zone(3), VertexZone::Border);
        assert_eq!(refined.zone(4), VertexZone::Border);
        assert_eq!(refined.position(3), Point::new(1.0, 0.5));
        assert_eq!(refined.position(4), Point::new(2.0, 0.5));

        let e = refined.edge_between(0, 3).unwrap();
        assert_eq!(e.zone, EdgeZone::Safe);
        assert_relative_eq!(e.len, 0.5);
        let e = refined.edge_between(3, 1).unwrap();
        assert_eq!(e.zone, EdgeZone::Risk);
        assert_relative_eq!(e.len, 0.5);
        assert_eq!(refined.n_edges(), 4);
        assert_eq!(refined.border_ordinal(3), Some(0));
        assert_eq!(refined.border_ordinal(4), Some(1));
        assert_eq!(refined.border_ordinal(0), None);
        match refined.origin(3) {
            VertexOrigin::Inserted { u: 0, v: 1, param } => assert_relative_eq!(param, 0.5),
            other => panic!("unexpected origin {other:?}"),
        }
    }

    #[test]
    fn refine_preserves_total_length() {
        let grid = GridWorld::parse("grid 3 3 1.0\n.~.\n~~~\n.~.\n").unwrap();
        let roadmap = build_grid_roadmap(&grid, 8).unwrap();
        let raw_total: f64 = roadmap.edges.iter().map(|&(u, v)| roadmap.len_of(u, v)).sum();
        let refined = roadmap.refine(&World::Grid(grid)).unwrap();
        let mut refined_total = 0.0;
        for v in 0..refined.n_vertices() as u32 {
            for e in refined.neighbors(v) {
                refined_total += e.len;
            }
        }
        refined_total /= 2.0;
        assert_relative_eq!(refined_total, raw_total, epsilon = 1e-12);
    }

    #[test]
    fn refine_promotes_on_boundary_vertex() {
        let grid = GridWorld::parse("grid 1 2 1.0\n.~\n").unwrap();
        let roadmap = Roadmap {
            positions: vec![Point::new(1.0, 0.5), Point::new(1.5, 0.5)],
            edges: vec![(0, 1)],
        };
        let refined = roadmap.refine(&World::Grid(grid)).unwrap();
        assert_eq!(refined.n_vertices(), 2, "no duplicate vertex inserted");
        assert_eq!(refined.zone(0), VertexZone::Border);
        assert_eq!(refined.zone(1), VertexZone::Risk);
        assert_eq!(refined.edge_between(0, 1).unwrap().zone, EdgeZone::Risk);
    }

    #[test]
    fn large_grid_counts() {
        let grid = GridWorld::uniform(201, 201, 1.0, ZoneLabel::Safe);
        let rm = build_grid_roadmap(&grid, 4).unwrap();
        assert_eq!(rm.positions.len(), 201 * 201);
        assert_eq!(rm.edges.len(), 2 * 201 * 200);
    }

    #[test]
    fn halton_roadmap_deterministic() {
        let world = World::Grid(GridWorld::uniform(4, 4, 1.0, ZoneLabel::Safe));
        let a = build_halton_roadmap(&world, 20, 1.5, 0).unwrap();
        let b = build_halton_roadmap(&world, 20, 1.5, 0).unwrap();
        assert_eq!(a.positions, b.positions);
        assert_eq!(a.edges, b.edges);
        let c = build_halton_roadmap(&world, 20, 1.5, 7).unwrap();
        assert_ne!(a.positions, c.positions);
        for &p in &a.positions {
            assert!(p.x >= 0.0 && p.x <= 4.0 && p.y >= 0.0 && p.y <= 4.0);
        }
        for &(u, v) in &a.edges {
            assert!(a.positions[u as usize].dist(a.positions[v as usize]) <= 1.5);
        }
    }

    #[test]
    fn explicit_graph_round_trip() {
        let json = r#"{
            "vertices": [
                {"x": 0.0, "y": 0.0, "zone": "safe"},
                {"x": 1.0, "y": 0.0, "zone": "border"},
                {"x": 2.0, "y": 0.0, "zone": "risk"}
            ],
            "edges": [
                {"u": 0, "v": 1},
                {"u": 1, "v": 2, "len": 1.5}
            ],
            "start": 0,
            "goal": 2
        }"#;
        let spec = ExplicitGraphSpec::parse(json).unwrap();
        let refined = spec.build().unwrap();
        assert_eq!(refined.n_vertices(), 3);
        assert_eq!(refined.zone(1), VertexZone::Border);
        assert_eq!(refined.edge_between(0, 1).unwrap().zone, EdgeZone::Safe);
        let e = refined.edge_between(1, 2).unwrap();
        assert_eq!(e.zone, EdgeZone::Risk);
        assert_relative_eq!(e.len, 1.5);

        let back = ExplicitGraphSpec::from_refined(&refined);
        let rebuilt = back.build().unwrap();
        assert_eq!(rebuilt.n_vertices(), refined.n_vertices());
        assert_eq!(rebuilt.edge_between(1, 2).unwrap(), e);
    }

    #[test]
    fn explicit_graph_rejects_bad_input() {
        let base = |edges: &str| {
            format!(
                r#"{{"vertices": [
                    {{"x": 0.0, "y": 0.0, "zone": "safe"}},
                    {{"x": 1.0, "y": 0.0, "zone": "risk"}},
                    {{"x": 2.0, "y": 0.0, "zone": "border"}},
                    {{"x": 3.0, "y": 0.0, "zone": "border"}}
                ], "edges": [{edges}]}}"#
            )
        };
        // Safe-risk edge without a border vertex.
        let err = ExplicitGraphSpec::parse(&base(r#"{"u": 0, "v": 1}"#))
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // len shorter than the Euclidean distance.
        let err = ExplicitGraphSpec::parse(&base(r#"{"u": 0, "v": 2, "len": 0.5}"#))
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // Border-border edge without a declared zone.
        let err = ExplicitGraphSpec::parse(&base(r#"{"u": 2, "v": 3}"#))
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // With the zone declared it is accepted.
        let ok = ExplicitGraphSpec::parse(&base(r#"{"u": 2, "v": 3, "zone": "risk"}"#))
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(ok.edge_between(2, 3).unwrap().zone, EdgeZone::Risk);
    }

    #[test]
    fn nearest_vertex_breaks_ties_by_id() {
        let spec = ExplicitGraphSpec {
            vertices: vec![
                ExplicitVertex { x: 0.0, y: 0.0, zone: VertexZone::Safe },
                ExplicitVertex { x: 2.0, y: 0.0, zone: VertexZone::Safe },
            ],
            edges: vec![ExplicitEdge { u: 0, v: 1, len: None, zone: None }],
            start: None,
            goal: None,
        };
        let refined = spec.build().unwrap();
        assert_eq!(refined.nearest_vertex(Point::new(1.0, 0.0)), 0);
        assert_eq!(refined.nearest_vertex(Point::new(1.9, 0.0)), 1);
    }
}
