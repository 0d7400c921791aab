//! Baseline planners: plain shortest path and minimal risk time.
//!
//! Both ignore the exposure cost while searching and report it afterwards,
//! so their results bracket the minimal-exposure planner from both sides.

use crate::cost::{path_cost, CostBreakdown, CostModel};
use crate::error::{Error, Result};
use crate::roadmap::{EdgeZone, RefinedRoadmap};
use crate::search::{HeapEntry, SearchStats, PHI_NONE};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Debug)]
pub struct BaselineResult {
    pub path: Vec<u32>,
    /// Objective value of the baseline itself (length, or risk time).
    pub objective: f64,
    /// Exposure-aware evaluation of the returned path.
    pub breakdown: CostBreakdown,
    pub stats: SearchStats,
}

/// Plain shortest path by length. Uses the same queue discipline (priority,
/// tie-breaks, lazy deletion) as the incremental planner, so on risk-free
/// roadmaps the two produce identical pop traces.
pub fn dijkstra_shortest(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    model: &CostModel,
) -> Result<BaselineResult> {
    let n = roadmap.n_vertices();
    if start as usize >= n || goal as usize >= n {
        return Err(Error::InvalidQuery(format!(
            "start {start} / goal {goal} out of range for {n} vertices"
        )));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![u32::MAX; n];
    let mut finalized = vec![false; n];
    let mut heap: BinaryHeap<Reverse<HeapEntry>> = BinaryHeap::new();
    let mut stats = SearchStats::default();

    dist[start as usize] = 0.0;
    heap.push(Reverse(HeapEntry { f: 0.0, lambda: 0.0, vertex: start, phi: PHI_NONE, g: 0.0 }));
    stats.pushes = 1;
    stats.max_queue = 1;
    stats.max_live_channels = 1;

    while let Some(Reverse(entry)) = heap.pop() {
        let v = entry.vertex;
        if finalized[v as usize] || dist[v as usize] != entry.g {
            stats.stale_pops += 1;
            continue;
        }
        finalized[v as usize] = true;
        stats.expansions += 1;
        stats.pop_trace.push(v);
        if v == goal {
            let path = reconstruct(&parent, goal);
            let breakdown = path_cost(roadmap, &path, model)?;
            return Ok(BaselineResult { path, objective: entry.g, breakdown, stats });
        }
        for edge in roadmap.neighbors(v) {
            let cand = entry.g + edge.len;
            if cand < dist[edge.to as usize] {
                dist[edge.to as usize] = cand;
                parent[edge.to as usize] = v;
                heap.push(Reverse(HeapEntry {
                    f: cand,
                    lambda: 0.0,
                    vertex: edge.to,
                    phi: PHI_NONE,
                    g: cand,
                }));
                stats.pushes += 1;
                stats.max_queue = stats.max_queue.max(heap.len());
            }
        }
    }
    Err(Error::Unreachable)
}

/// Minimal risk time, with length as the tie-breaker: Dijkstra over the
/// lexicographic weight `(risk_time, length)`.
pub fn min_risk_path(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    model: &CostModel,
) -> Result<BaselineResult> {
    let n = roadmap.n_vertices();
    if start as usize >= n || goal as usize >= n {
        return Err(Error::InvalidQuery(format!(
            "start {start} / goal {goal} out of range for {n} vertices"
        )));
    }
    #[derive(Clone, Copy, PartialEq)]
    struct Lex {
        risk: f64,
        len: f64,
    }
    impl Lex {
        fn less(&self, other: &Lex) -> bool {
            match self.risk.total_cmp(&other.risk) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => self.len < other.len,
            }
        }
    }
    #[derive(Clone, Copy)]
    struct Entry {
        key: Lex,
        vertex: u32,
    }
    impl PartialEq for Entry {
        fn eq(&self, other: &Self) -> bool {
            self.cmp(other) == std::cmp::Ordering::Equal
        }
    }
    impl Eq for Entry {}
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.key
                .risk
                .total_cmp(&other.key.risk)
                .then(self.key.len.total_cmp(&other.key.len))
                .then(self.vertex.cmp(&other.vertex))
        }
    }

    let mut best = vec![Lex { risk: f64::INFINITY, len: f64::INFINITY }; n];
    let mut parent = vec![u32::MAX; n];
    let mut finalized = vec![false; n];
    let mut heap: BinaryHeap<Reverse<Entry>> = BinaryHeap::new();
    let mut stats = SearchStats::default();

    best[start as usize] = Lex { risk: 0.0, len: 0.0 };
    heap.push(Reverse(Entry { key: Lex { risk: 0.0, len: 0.0 }, vertex: start }));
    stats.pushes = 1;
    stats.max_queue = 1;
    stats.max_live_channels = 1;

    while let Some(Reverse(entry)) = heap.pop() {
        let v = entry.vertex;
        if finalized[v as usize] || best[v as usize] != entry.key {
            stats.stale_pops += 1;
            continue;
        }
        finalized[v as usize] = true;
        stats.expansions += 1;
        stats.pop_trace.push(v);
        if v == goal {
            let path = reconstruct(&parent, goal);
            let breakdown = path_cost(roadmap, &path, model)?;
            return Ok(BaselineResult { path, objective: entry.key.risk, breakdown, stats });
        }
        for edge in roadmap.neighbors(v) {
            let cand = Lex {
                risk: entry.key.risk + if edge.zone == EdgeZone::Risk { edge.len } else { 0.0 },
                len: entry.key.len + edge.len,
            };
            if cand.less(&best[edge.to as usize]) {
                best[edge.to as usize] = cand;
                parent[edge.to as usize] = v;
                heap.push(Reverse(Entry { key: cand, vertex: edge.to }));
                stats.pushes += 1;
                stats.max_queue = stats.max_queue.max(heap.len());
            }
        }
    }
    Err(Error::Unreachable)
}

fn reconstruct(parent: &[u32], goal: u32) -> Vec<u32> {
    let mut path = vec![goal];
    let mut v = goal;
    while parent[v as usize] != u32::MAX {
        v = parent[v as usize];
        path.push(v);
    }
    path.reverse();
    path
}
