//! Built-in scenario generators: the two-channel counterexample graph,
//! seeded random graphs for randomized testing, and procedural coastal
//! worlds.

use crate::geom::{Point, Polygon};
use crate::roadmap::{
    EdgeZone, ExplicitEdge, ExplicitGraphSpec, ExplicitVertex, RefinedRoadmap, VertexZone,
};
use crate::world::GridWorld;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The two-channel graph where greedy label replacement fails: the cheap
/// route to `y` (via `x1`) is the expensive route to `z`, because the longer
/// approach through `x2` enters risk closer to `y` and carries less exposure.
pub struct TwoChannel {
    pub roadmap: RefinedRoadmap,
    pub xs: u32,
    pub x1: u32,
    pub x2: u32,
    pub y: u32,
    pub z: u32,
}

pub fn two_channel() -> TwoChannel {
    let spec = ExplicitGraphSpec {
        vertices: vec![
            ExplicitVertex { x: 0.5, y: 1.0, zone: VertexZone::Safe },   // xs
            ExplicitVertex { x: 1.0, y: 1.0, zone: VertexZone::Border }, // x1
            ExplicitVertex { x: 2.5, y: 2.0, zone: VertexZone::Border }, // x2
            ExplicitVertex { x: 2.5, y: 1.0, zone: VertexZone::Risk },   // y
            ExplicitVertex { x: 3.0, y: 1.0, zone: VertexZone::Risk },   // z
        ],
        edges: vec![
            ExplicitEdge { u: 0, v: 1, len: Some(0.5), zone: None },
            ExplicitEdge { u: 0, v: 2, len: Some(3.0), zone: None },
            ExplicitEdge { u: 1, v: 3, len: Some(1.5), zone: None },
            ExplicitEdge { u: 2, v: 3, len: Some(1.0), zone: None },
            ExplicitEdge { u: 3, v: 4, len: Some(0.5), zone: None },
        ],
        start: Some(0),
        goal: Some(4),
    };
    TwoChannel {
        roadmap: spec.build().expect("two-channel fixture is valid"),
        xs: 0,
        x1: 1,
        x2: 2,
        y: 3,
        z: 4,
    }
}

/// Seeded random refined graph with at most `max_vertices` vertices, plus a
/// start/goal pair drawn from the Safe and Border vertices. The same seed
/// always produces the same instance. Start and goal are not guaranteed to
/// be connected.
pub fn random_refined_graph(seed: u64, max_vertices: usize) -> (RefinedRoadmap, u32, u32) {
    assert!(max_vertices >= 4, "need at least 4 vertices");
    for attempt in 0..u64::MAX {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let n = rng.gen_range(4..=max_vertices);
        let mut vertices = Vec::with_capacity(n);
        for _ in 0..n {
            let zone = match rng.gen_range(0..10) {
                0..=3 => VertexZone::Safe,
                4..=6 => VertexZone::Risk,
                _ => VertexZone::Border,
            };
            vertices.push(ExplicitVertex {
                x: rng.gen_range(0.0..10.0),
                y: rng.gen_range(0.0..10.0),
                zone,
            });
        }
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                let (zu, zv) = (vertices[u as usize].zone, vertices[v as usize].zone);
                let incompatible = matches!(
                    (zu, zv),
                    (VertexZone::Safe, VertexZone::Risk) | (VertexZone::Risk, VertexZone::Safe)
                );
                // Draw the randomness unconditionally so instance shape stays
                // a pure function of the seed.
                let keep = rng.gen_bool(0.5);
                let stretch = 1.0 + rng.gen_range(0.0..0.8);
                let zone_pick = rng.gen_bool(0.5);
                if incompatible || !keep {
                    continue;
                }
                let a = Point::new(vertices[u as usize].x, vertices[u as usize].y);
                let b = Point::new(vertices[v as usize].x, vertices[v as usize].y);
                let zone = (zu == VertexZone::Border && zv == VertexZone::Border)
                    .then_some(if zone_pick { EdgeZone::Safe } else { EdgeZone::Risk });
                edges.push(ExplicitEdge { u, v, len: Some(a.dist(b) * stretch), zone });
            }
        }
        let spec = ExplicitGraphSpec { vertices, edges, start: None, goal: None };
        let Ok(roadmap) = spec.build() else { continue };
        let endpoints: Vec<u32> = (0..roadmap.n_vertices() as u32)
            .filter(|&v| roadmap.zone(v) != VertexZone::Risk)
            .collect();
        if endpoints.len() < 2 {
            continue;
        }
        let start = endpoints[rng.gen_range(0..endpoints.len())];
        let goal = loop {
            let g = endpoints[rng.gen_range(0..endpoints.len())];
            if g != start {
                break g;
            }
        };
        return (roadmap, start, goal);
    }
    unreachable!("some attempt always succeeds");
}

/// Seeded random walk along roadmap edges, at most `max_steps` edges long.
/// Vertices may repeat; the walk stops early at dead ends.
pub fn random_walk(roadmap: &RefinedRoadmap, seed: u64, max_steps: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = rng.gen_range(0..roadmap.n_vertices()) as u32;
    let mut path = vec![v];
    for _ in 0..max_steps {
        let neighbors = roadmap.neighbors(v);
        if neighbors.is_empty() {
            break;
        }
        v = neighbors[rng.gen_range(0..neighbors.len())].to;
        path.push(v);
    }
    path
}

/// Blobby island polygons for a coastal world, centers kept away from the
/// map edge.
pub fn coastal_islands(seed: u64, width: f64, height: f64, n_islands: usize) -> Vec<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_scale = width.min(height);
    let mut islands = Vec::with_capacity(n_islands);
    for _ in 0..n_islands {
        let cx = rng.gen_range(0.2..0.8) * width;
        let cy = rng.gen_range(0.2..0.8) * height;
        let base = rng.gen_range(0.08..0.16) * base_scale;
        let p1 = rng.gen_range(0.0..std::f64::consts::TAU);
        let p2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let a1 = rng.gen_range(0.2..0.35);
        let a2 = rng.gen_range(0.1..0.2);
        let sides = 24;
        let mut poly = Vec::with_capacity(sides);
        for k in 0..sides {
            let theta = k as f64 / sides as f64 * std::f64::consts::TAU;
            let r = base * (1.0 + a1 * (3.0 * theta + p1).sin() + a2 * (7.0 * theta + p2).sin());
            poly.push(Point::new(cx + r * theta.cos(), cy + r * theta.sin()));
        }
        islands.push(poly);
    }
    islands
}

/// Procedural coastal grid world: islands as obstacles, open water farther
/// than `d` from every island as risk, the coastal band as safe.
pub fn coastal_world(
    seed: u64,
    rows: usize,
    cols: usize,
    cell_size: f64,
    d: f64,
    n_islands: usize,
) -> GridWorld {
    let islands = coastal_islands(seed, cols as f64 * cell_size, rows as f64 * cell_size, n_islands);
    crate::world::risk_offset_world(&islands, d, rows, cols, cell_size)
        .expect("coastal construction parameters are valid")
}
