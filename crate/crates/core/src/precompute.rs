//! Precomputation planner: all-pairs shortest risk traversals between
//! border vertices, folded into an augmented safe graph.
//!
//! Any minimal-cost path decomposes into safe stretches and complete risk
//! excursions between border vertices. The minimal duration `T(b1, b2)` of a
//! risk-interior traversal is independent of the query, so one APSP over the
//! risk subgraph turns the planning problem into plain Dijkstra on a graph
//! whose excursion edges are weighted `(exp(alpha * T) - 1) / alpha`.
//!
//! The price is the `O(n_B^2)` table; [`precompute_search`] refuses with
//! [`Error::MemoryBudget`] when the estimate exceeds its budget, which is
//! this method's characteristic failure mode on border-dense maps.

use crate::cost::{path_cost, CostBreakdown, CostModel};
use crate::error::{Error, Result};
use crate::roadmap::{EdgeZone, RefinedRoadmap, VertexZone};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

/// Default memory budget for the border table: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Estimated bytes for the table plus per-source scratch.
pub fn estimate_table_bytes(n_border: usize, n_risk_sub: usize) -> u64 {
    (n_border as u64 * n_border as u64) * 8 + n_risk_sub as u64 * 12
}

/// Minimal risk-interior traversal durations between all border pairs.
pub struct BorderTable {
    n_border: usize,
    /// Row-major durations; `INFINITY` when no risk-interior route exists.
    durations: Vec<f64>,
    /// Refined ids of risk-subgraph vertices (Risk and Border), ascending.
    sub_vertices: Vec<u32>,
    /// Risk-subgraph adjacency over subgraph indices.
    sub_adj: Vec<Vec<(u32, f64)>>,
    /// Subgraph index of each border ordinal.
    border_subs: Vec<u32>,
}

impl BorderTable {
    pub fn n_border(&self) -> usize {
        self.n_border
    }

    pub fn n_risk_sub(&self) -> usize {
        self.sub_vertices.len()
    }

    /// Minimal risk-interior duration from border ordinal `i` to `j`.
    pub fn duration(&self, i: usize, j: usize) -> f64 {
        self.durations[i * self.n_border + j]
    }

    fn risk_dijkstra(&self, source_sub: u32) -> (Vec<f64>, Vec<u32>) {
        #[derive(PartialEq)]
        struct E(f64, u32);
        impl Eq for E {}
        impl PartialOrd for E {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for E {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
            }
        }
        let n = self.sub_adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![u32::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source_sub as usize] = 0.0;
        heap.push(Reverse(E(0.0, source_sub)));
        while let Some(Reverse(E(d, v))) = heap.pop() {
            if done[v as usize] || dist[v as usize] != d {
                continue;
            }
            done[v as usize] = true;
            for &(to, len) in &self.sub_adj[v as usize] {
                let cand = d + len;
                if cand < dist[to as usize] {
                    dist[to as usize] = cand;
                    pred[to as usize] = v;
                    heap.push(Reverse(E(cand, to)));
                }
            }
        }
        (dist, pred)
    }

    /// A minimal-duration risk-interior path between border ordinals, as
    /// refined vertex ids including both endpoints.
    pub fn risk_path(&self, from_ord: usize, to_ord: usize) -> Result<Vec<u32>> {
        if !self.duration(from_ord, to_ord).is_finite() {
            return Err(Error::Unreachable);
        }
        let (_, pred) = self.risk_dijkstra(self.border_subs[from_ord]);
        let mut path = Vec::new();
        let mut cur = self.border_subs[to_ord];
        loop {
            path.push(self.sub_vertices[cur as usize]);
            if cur == self.border_subs[from_ord] {
                break;
            }
            cur = pred[cur as usize];
            if cur == u32::MAX {
                return Err(Error::Internal("pred chain broken in risk subgraph".into()));
            }
        }
        path.reverse();
        Ok(path)
    }
}

/// Build the border table: one Dijkstra over the risk subgraph per border
/// vertex. Border vertices may appear as interior hops of a tabulated
/// traversal; such entries are upper bounds whose exact counterparts exist
/// as multi-excursion routes in the augmented graph, so optimality is
/// unaffected.
pub fn compute_border_table(roadmap: &RefinedRoadmap, budget: u64) -> Result<BorderTable> {
    let n = roadmap.n_vertices();
    let mut sub_of = vec![u32::MAX; n];
    let mut sub_vertices = Vec::new();
    for v in 0..n as u32 {
        if roadmap.zone(v) != VertexZone::Safe {
            sub_of[v as usize] = sub_vertices.len() as u32;
            sub_vertices.push(v);
        }
    }
    let n_border = roadmap.border_count();
    let estimated = estimate_table_bytes(n_border, sub_vertices.len());
    if estimated > budget {
        return Err(Error::MemoryBudget { estimated_bytes: estimated, budget_bytes: budget });
    }

    let mut sub_adj = vec![Vec::new(); sub_vertices.len()];
    for (si, &v) in sub_vertices.iter().enumerate() {
        for edge in roadmap.neighbors(v) {
            if edge.zone == EdgeZone::Risk {
                sub_adj[si].push((sub_of[edge.to as usize], edge.len));
            }
        }
    }
    let border_subs: Vec<u32> = roadmap
        .border_vertices()
        .iter()
        .map(|&b| sub_of[b as usize])
        .collect();

    let mut table = BorderTable {
        n_border,
        durations: Vec::new(),
        sub_vertices,
        sub_adj,
        border_subs,
    };
    let mut durations = vec![f64::INFINITY; n_border * n_border];
    for i in 0..n_border {
        let (dist, _) = table.risk_dijkstra(table.border_subs[i]);
        for j in 0..n_border {
            durations[i * n_border + j] = dist[table.border_subs[j] as usize];
        }
    }
    table.durations = durations;
    Ok(table)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PrecomputeStats {
    /// Risk-subgraph assembly plus the all-pairs sweep.
    pub apsp_time: Duration,
    /// Augmented graph assembly.
    pub build_time: Duration,
    /// Final Dijkstra and path expansion.
    pub search_time: Duration,
    pub n_border: usize,
    pub n_risk_sub: usize,
    pub table_bytes: u64,
    pub aug_vertices: usize,
    pub aug_edges: usize,
    pub expansions: usize,
}

#[derive(Clone, Debug)]
pub struct PrecomputeResult {
    pub path: Vec<u32>,
    pub cost: f64,
    pub breakdown: CostBreakdown,
    pub stats: PrecomputeStats,
}

#[derive(Clone, Copy)]
enum AugEdgeKind {
    /// One refined safe edge.
    Direct,
    /// A complete risk excursion between two border vertices.
    Excursion,
}

#[derive(Clone, Copy)]
struct AugEdge {
    to: u32,
    weight: f64,
    kind: AugEdgeKind,
}

/// Minimal-exposure path via the precomputed border table. Start and goal
/// must lie in safe space (Safe or Border vertices); queries from inside the
/// risk region are not expressible in the augmented graph.
pub fn precompute_search(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    model: &CostModel,
    budget: Option<u64>,
) -> Result<PrecomputeResult> {
    let n = roadmap.n_vertices();
    if start as usize >= n || goal as usize >= n {
        return Err(Error::InvalidQuery(format!(
            "start {start} / goal {goal} out of range for {n} vertices"
        )));
    }
    for (name, v) in [("start", start), ("goal", goal)] {
        if roadmap.zone(v) == VertexZone::Risk {
            return Err(Error::UnsupportedQuery(format!(
                "precompute planner requires a safe {name}, but vertex {v} is inside risk"
            )));
        }
    }
    let budget = budget.unwrap_or(DEFAULT_MEMORY_BUDGET);
    let mut stats = PrecomputeStats::default();

    let t0 = Instant::now();
    let table = compute_border_table(roadmap, budget)?;
    stats.apsp_time = t0.elapsed();
    stats.n_border = table.n_border();
    stats.n_risk_sub = table.n_risk_sub();
    stats.table_bytes = estimate_table_bytes(table.n_border(), table.n_risk_sub());

    // Augmented graph over Safe and Border vertices.
    let t1 = Instant::now();
    let mut aug_of = vec![u32::MAX; n];
    let mut aug_vertices = Vec::new();
    for v in 0..n as u32 {
        if roadmap.zone(v) != VertexZone::Risk {
            aug_of[v as usize] = aug_vertices.len() as u32;
            aug_vertices.push(v);
        }
    }
    let mut adj: Vec<Vec<AugEdge>> = vec![Vec::new(); aug_vertices.len()];
    let mut aug_edges = 0usize;
    for (ai, &v) in aug_vertices.iter().enumerate() {
        for edge in roadmap.neighbors(v) {
            if edge.zone == EdgeZone::Safe {
                adj[ai].push(AugEdge {
                    to: aug_of[edge.to as usize],
                    weight: edge.len,
                    kind: AugEdgeKind::Direct,
                });
                aug_edges += 1;
            }
        }
    }
    let borders = roadmap.border_vertices();
    for i in 0..table.n_border() {
        for j in 0..table.n_border() {
            if i == j {
                continue;
            }
            let t = table.duration(i, j);
            if t.is_finite() {
                adj[aug_of[borders[i] as usize] as usize].push(AugEdge {
                    to: aug_of[borders[j] as usize],
                    weight: model.excursion_cost(t),
                    kind: AugEdgeKind::Excursion,
                });
                aug_edges += 1;
            }
        }
    }
    stats.aug_vertices = aug_vertices.len();
    stats.aug_edges = aug_edges;
    stats.build_time = t1.elapsed();

    // Plain Dijkstra on the augmented graph.
    let t2 = Instant::now();
    #[derive(PartialEq)]
    struct E(f64, u32);
    impl Eq for E {}
    impl PartialOrd for E {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for E {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
        }
    }
    let (s, g) = (aug_of[start as usize], aug_of[goal as usize]);
    let mut dist = vec![f64::INFINITY; aug_vertices.len()];
    let mut parent: Vec<Option<(u32, AugEdgeKind)>> = vec![None; aug_vertices.len()];
    let mut done = vec![false; aug_vertices.len()];
    let mut heap = BinaryHeap::new();
    dist[s as usize] = 0.0;
    heap.push(Reverse(E(0.0, s)));
    let mut found = false;
    while let Some(Reverse(E(d, v))) = heap.pop() {
        if done[v as usize] || dist[v as usize] != d {
            continue;
        }
        done[v as usize] = true;
        stats.expansions += 1;
        if v == g {
            found = true;
            break;
        }
        for e in &adj[v as usize] {
            let cand = d + e.weight;
            if cand < dist[e.to as usize] {
                dist[e.to as usize] = cand;
                parent[e.to as usize] = Some((v, e.kind));
                heap.push(Reverse(E(cand, e.to)));
            }
        }
    }
    if !found {
        return Err(Error::Unreachable);
    }

    // Expand the augmented path back into refined vertices.
    let mut aug_path = vec![g];
    let mut kinds = Vec::new();
    let mut cur = g;
    while let Some((prev, kind)) = parent[cur as usize] {
        aug_path.push(prev);
        kinds.push(kind);
        cur = prev;
    }
    aug_path.reverse();
    kinds.reverse();

    let mut path = vec![start];
    for (step, &kind) in kinds.iter().enumerate() {
        let from = aug_vertices[aug_path[step] as usize];
        let to = aug_vertices[aug_path[step + 1] as usize];
        match kind {
            AugEdgeKind::Direct => path.push(to),
            AugEdgeKind::Excursion => {
                let i = roadmap.border_ordinal(from).expect("excursion from border") as usize;
                let j = roadmap.border_ordinal(to).expect("excursion to border") as usize;
                let leg = table.risk_path(i, j)?;
                path.extend_from_slice(&leg[1..]);
            }
        }
    }
    stats.search_time = t2.elapsed();

    let breakdown = path_cost(roadmap, &path, model)?;
    Ok(PrecomputeResult { path, cost: dist[g as usize], breakdown, stats })
}
