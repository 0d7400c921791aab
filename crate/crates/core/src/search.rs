//! Incremental minimal-exposure search.
//!
//! Exposure cost lacks optimal substructure on vertices: the cheapest route
//! to a risk vertex may carry more accumulated exposure than a pricier one,
//! and lose on every continuation. Labels are therefore keyed by *channel*
//! `(vertex, phi)` where `phi` identifies the border vertex through which
//! the current risk excursion was entered. Within a channel cost and
//! exposure order identically (the entry prefix is shared), so channels keep
//! a single best label; across channels only pointwise-dominated labels are
//! discarded.

use crate::cost::{path_cost, CostBreakdown, CostModel};
use crate::error::{Error, Result};
use crate::roadmap::{EdgeZone, RefinedRoadmap, VertexZone};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Channel of labels outside any risk excursion (exposure zero).
pub const PHI_NONE: u32 = u32::MAX;
/// Channel of labels whose excursion began at the start vertex itself.
pub const PHI_START: u32 = u32::MAX - 1;

/// Human-readable channel name for traces.
pub fn phi_name(phi: u32) -> String {
    match phi {
        PHI_NONE => "-".into(),
        PHI_START => "start".into(),
        ord => format!("b{ord}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelState {
    Queued,
    Finalized,
    Evicted,
}

/// Search label: best known arrival on one channel.
#[derive(Clone, Copy, Debug)]
pub struct Label {
    pub phi: u32,
    pub cost: f64,
    /// Elapsed time = path length at unit speed.
    pub time: f64,
    /// Exposure on arrival (time since safe space was last touched).
    pub lambda: f64,
    /// Channel of the predecessor label, if any.
    pub parent: Option<(u32, u32)>,
    pub state: LabelState,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct HeapEntry {
    pub f: f64,
    pub lambda: f64,
    pub vertex: u32,
    pub phi: u32,
    /// Cost at push time; an entry is stale when it no longer matches its label.
    pub g: f64,
}

impl HeapEntry {
    fn key(&self) -> (f64, f64, u32, u32, f64) {
        (self.f, self.lambda, self.vertex, self.phi, self.g)
    }
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (f1, l1, v1, p1, g1) = self.key();
        let (f2, l2, v2, p2, g2) = other.key();
        f1.total_cmp(&f2)
            .then(l1.total_cmp(&l2))
            .then(v1.cmp(&v2))
            .then(p1.cmp(&p2))
            .then(g1.total_cmp(&g2))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub model: CostModel,
    /// Add the Euclidean distance to the goal to queue priorities. Admissible
    /// because cost accrues at rate >= 1.
    pub heuristic: bool,
    /// Discard labels pointwise-dominated across channels (default). The
    /// search stays exact with this off; it only explores more labels.
    pub domination_pruning: bool,
    pub capture_trace: bool,
    /// Keep the full label table in the result (small instances only).
    pub capture_labels: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            model: CostModel::default(),
            heuristic: false,
            domination_pruning: true,
            capture_trace: false,
            capture_labels: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum TraceEvent {
    Push { vertex: u32, phi: u32, cost: f64, lambda: f64 },
    /// A queued label on the same channel was replaced by a cheaper one.
    Improve { vertex: u32, phi: u32, cost: f64, lambda: f64 },
    /// A candidate label was discarded at insertion.
    Prune { vertex: u32, phi: u32, cost: f64, lambda: f64 },
    /// A queued label was discarded because a new label dominates it.
    Evict { vertex: u32, phi: u32 },
    Pop { vertex: u32, phi: u32, cost: f64, lambda: f64 },
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Finalized pops (node expansions).
    pub expansions: usize,
    pub pushes: usize,
    pub stale_pops: usize,
    pub max_queue: usize,
    /// Peak number of live (queued or finalized) channels at any vertex.
    pub max_live_channels: usize,
    /// Vertices in finalization order.
    pub pop_trace: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub path: Vec<u32>,
    /// Cost of the returned path as accumulated by the search.
    pub cost: f64,
    /// Independent re-evaluation of the returned path.
    pub breakdown: CostBreakdown,
    pub stats: SearchStats,
    pub trace: Vec<TraceEvent>,
    /// Label table per vertex, when `capture_labels` was set.
    pub labels: Option<Vec<Vec<Label>>>,
}

struct SearchState<'a> {
    roadmap: &'a RefinedRoadmap,
    options: SearchOptions,
    labels: Vec<Vec<Label>>,
    heap: BinaryHeap<Reverse<HeapEntry>>,
    stats: SearchStats,
    trace: Vec<TraceEvent>,
    goal_pos: crate::geom::Point,
}

impl<'a> SearchState<'a> {
    fn h(&self, v: u32) -> f64 {
        if self.options.heuristic {
            self.roadmap.position(v).dist(self.goal_pos)
        } else {
            0.0
        }
    }

    fn record(&mut self, event: TraceEvent) {
        if self.options.capture_trace {
            self.trace.push(event);
        }
    }

    fn push_entry(&mut self, vertex: u32, phi: u32, cost: f64, lambda: f64) {
        let entry = HeapEntry { f: cost + self.h(vertex), lambda, vertex, phi, g: cost };
        self.heap.push(Reverse(entry));
        self.stats.pushes += 1;
        self.stats.max_queue = self.stats.max_queue.max(self.heap.len());
    }

    /// Insert or improve the label for channel `(vertex, phi)`.
    fn relax(
        &mut self,
        vertex: u32,
        phi: u32,
        cost: f64,
        time: f64,
        lambda: f64,
        parent: (u32, u32),
    ) {
        if self.options.domination_pruning {
            let dominated = self.labels[vertex as usize].iter().any(|l| {
                l.state != LabelState::Evicted && l.cost <= cost && l.lambda <= lambda
            });
            if dominated {
                self.record(TraceEvent::Prune { vertex, phi, cost, lambda });
                return;
            }
        }
        let new_label = Label {
            phi,
            cost,
            time,
            lambda,
            parent: Some(parent),
            state: LabelState::Queued,
        };
        let list = &mut self.labels[vertex as usize];
        match list.iter_mut().find(|l| l.phi == phi) {
            Some(slot) => match slot.state {
                LabelState::Finalized => {
                    // Consistent priorities: a finalized channel is optimal.
                    debug_assert!(cost >= slot.cost - 1e-12);
                    self.record(TraceEvent::Prune { vertex, phi, cost, lambda });
                    return;
                }
                LabelState::Queued => {
                    if cost >= slot.cost {
                        self.record(TraceEvent::Prune { vertex, phi, cost, lambda });
                        return;
                    }
                    *slot = new_label;
                    self.record(TraceEvent::Improve { vertex, phi, cost, lambda });
                    self.push_entry(vertex, phi, cost, lambda);
                }
                LabelState::Evicted => {
                    *slot = new_label;
                    self.record(TraceEvent::Push { vertex, phi, cost, lambda });
                    self.push_entry(vertex, phi, cost, lambda);
                }
            },
            None => {
                list.push(new_label);
                self.record(TraceEvent::Push { vertex, phi, cost, lambda });
                self.push_entry(vertex, phi, cost, lambda);
            }
        }
        if self.options.domination_pruning {
            let mut evicted = Vec::new();
            for l in self.labels[vertex as usize].iter_mut() {
                if l.phi != phi
                    && l.state == LabelState::Queued
                    && l.cost >= cost
                    && l.lambda >= lambda
                {
                    l.state = LabelState::Evicted;
                    evicted.push(l.phi);
                }
            }
            for phi in evicted {
                self.record(TraceEvent::Evict { vertex, phi });
            }
        }
        let live = self.labels[vertex as usize]
            .iter()
            .filter(|l| l.state != LabelState::Evicted)
            .count();
        self.stats.max_live_channels = self.stats.max_live_channels.max(live);
    }

    fn label(&self, vertex: u32, phi: u32) -> Option<&Label> {
        self.labels[vertex as usize].iter().find(|l| l.phi == phi)
    }

    fn reconstruct(&self, goal: u32, phi: u32) -> Vec<u32> {
        let mut path = Vec::new();
        let mut cur = Some((goal, phi));
        while let Some((v, phi)) = cur {
            path.push(v);
            cur = self.label(v, phi).expect("parent chain is intact").parent;
        }
        path.reverse();
        path
    }
}

/// Exact minimal-exposure-cost search from `start` to `goal`.
///
/// Runs as a generalized Dijkstra over channels; with
/// [`SearchOptions::heuristic`] set it becomes the A* variant. Returns
/// [`Error::Unreachable`] when no collision-free path exists.
pub fn incremental_search(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let n = roadmap.n_vertices();
    if start as usize >= n || goal as usize >= n {
        return Err(Error::InvalidQuery(format!(
            "start {start} / goal {goal} out of range for {n} vertices"
        )));
    }
    let mut st = SearchState {
        roadmap,
        options: *options,
        labels: vec![Vec::new(); n],
        heap: BinaryHeap::new(),
        stats: SearchStats::default(),
        trace: Vec::new(),
        goal_pos: roadmap.position(goal),
    };

    let start_phi = if roadmap.zone(start) == VertexZone::Risk {
        PHI_START
    } else {
        PHI_NONE
    };
    st.labels[start as usize].push(Label {
        phi: start_phi,
        cost: 0.0,
        time: 0.0,
        lambda: 0.0,
        parent: None,
        state: LabelState::Queued,
    });
    st.record(TraceEvent::Push { vertex: start, phi: start_phi, cost: 0.0, lambda: 0.0 });
    st.push_entry(start, start_phi, 0.0, 0.0);
    st.stats.max_live_channels = 1;

    while let Some(Reverse(entry)) = st.heap.pop() {
        let v = entry.vertex;
        let Some(label) = st.label(v, entry.phi).copied() else {
            st.stats.stale_pops += 1;
            continue;
        };
        if label.state != LabelState::Queued || label.cost != entry.g {
            st.stats.stale_pops += 1;
            continue;
        }
        st.labels[v as usize]
            .iter_mut()
            .find(|l| l.phi == entry.phi)
            .expect("label present")
            .state = LabelState::Finalized;
        st.stats.expansions += 1;
        st.stats.pop_trace.push(v);
        st.record(TraceEvent::Pop { vertex: v, phi: entry.phi, cost: label.cost, lambda: label.lambda });

        if v == goal {
            let path = st.reconstruct(goal, entry.phi);
            let breakdown = path_cost(roadmap, &path, &options.model)?;
            return Ok(SearchResult {
                path,
                cost: label.cost,
                breakdown,
                stats: st.stats,
                trace: st.trace,
                labels: options.capture_labels.then_some(st.labels),
            });
        }

        for edge in roadmap.neighbors(v) {
            let (seg_cost, lambda_after) =
                options.model.segment_cost(label.lambda, edge.len, edge.zone)?;
            let cost = label.cost + seg_cost;
            let time = label.time + edge.len;
            let (phi, lambda) = match edge.zone {
                EdgeZone::Safe => (PHI_NONE, 0.0),
                EdgeZone::Risk => {
                    if roadmap.zone(edge.to) != VertexZone::Risk {
                        // Excursion ends on arrival: exposure resets.
                        (PHI_NONE, 0.0)
                    } else {
                        let phi = match roadmap.zone(v) {
                            VertexZone::Border => roadmap
                                .border_ordinal(v)
                                .expect("border vertices have ordinals"),
                            VertexZone::Risk => label.phi,
                            VertexZone::Safe => {
                                return Err(Error::Internal(format!(
                                    "risk edge out of safe vertex {v}"
                                )))
                            }
                        };
                        (phi, lambda_after)
                    }
                }
            };
            st.relax(edge.to, phi, cost, time, lambda, (v, label.phi));
        }
    }
    Err(Error::Unreachable)
}

/// [`incremental_search`] with the straight-line heuristic enabled.
pub fn astar_search(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let options = SearchOptions { heuristic: true, ..*options };
    incremental_search(roadmap, start, goal, &options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_refined_graph, two_channel};
    use crate::roadmap::{build_grid_roadmap, ExplicitEdge, ExplicitGraphSpec, ExplicitVertex};
    use crate::world::{GridWorld, World};
    use approx::assert_relative_eq;

    fn opts() -> SearchOptions {
        SearchOptions { capture_trace: true, capture_labels: true, ..SearchOptions::default() }
    }

    #[test]
    fn two_channel_goal_y() {
        let g = two_channel();
        let r = incremental_search(&g.roadmap, g.xs, g.y, &opts()).unwrap();
        assert_relative_eq!(r.cost, 0.5 + 1.5f64.exp() - 1.0, epsilon = 1e-12);
        assert_eq!(r.path, vec![g.xs, g.x1, g.y]);
        assert_relative_eq!(r.breakdown.total_cost, r.cost, epsilon = 1e-12);
    }

    #[test]
    fn two_channel_goal_z_avoids_greedy_trap() {
        let g = two_channel();
        let r = incremental_search(&g.roadmap, g.xs, g.z, &opts()).unwrap();
        // The cheap arrival at y (via x1) is the wrong prefix for z.
        assert_relative_eq!(r.cost, 3.0 + 1.5f64.exp() - 1.0, epsilon = 1e-12);
        assert_eq!(r.path, vec![g.xs, g.x2, g.y, g.z]);
        assert_relative_eq!(r.breakdown.total_cost, r.cost, epsilon = 1e-12);
    }

    #[test]
    fn two_channel_trace_shows_coexistence_and_domination() {
        let g = two_channel();
        let r = incremental_search(&g.roadmap, g.xs, g.z, &opts()).unwrap();
        let phi_x1 = g.roadmap.border_ordinal(g.x1).unwrap();
        let phi_x2 = g.roadmap.border_ordinal(g.x2).unwrap();

        let pops: Vec<(u32, u32)> = r
            .trace
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Pop { vertex, phi, .. } => Some((*vertex, *phi)),
                _ => None,
            })
            .collect();
        assert_eq!(
            pops,
            vec![
                (g.xs, PHI_NONE),
                (g.x1, PHI_NONE),
                (g.x2, PHI_NONE),
                (g.y, phi_x1),
                (g.y, phi_x2),
                (g.z, phi_x2),
            ]
        );

        // Both incomparable labels at y were pushed and finalized.
        let y_pushes: Vec<u32> = r
            .trace
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Push { vertex, phi, .. } if *vertex == g.y => Some(*phi),
                _ => None,
            })
            .collect();
        assert_eq!(y_pushes, vec![phi_x1, phi_x2]);

        // The z label via x1 is evicted when the dominating x2 label arrives.
        assert!(r
            .trace
            .iter()
            .any(|e| matches!(e, TraceEvent::Evict { vertex, phi } if *vertex == g.z && *phi == phi_x1)));
    }

    #[test]
    fn pruning_off_same_optimum() {
        for seed in 0..40 {
            let (roadmap, start, goal) = random_refined_graph(seed, 10);
            let with = incremental_search(&roadmap, start, goal, &SearchOptions::default());
            let without = incremental_search(
                &roadmap,
                start,
                goal,
                &SearchOptions { domination_pruning: false, ..SearchOptions::default() },
            );
            match (with, without) {
                (Ok(a), Ok(b)) => {
                    assert_relative_eq!(a.cost, b.cost, epsilon = 1e-9);
                    assert!(a.stats.expansions <= b.stats.expansions);
                }
                (Err(Error::Unreachable), Err(Error::Unreachable)) => {}
                (a, b) => panic!("seed {seed}: divergent outcomes {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn heuristic_same_cost_fewer_or_equal_relaxations() {
        for seed in 0..40 {
            let (roadmap, start, goal) = random_refined_graph(seed, 10);
            let plain = incremental_search(&roadmap, start, goal, &SearchOptions::default());
            let astar = astar_search(&roadmap, start, goal, &SearchOptions::default());
            match (plain, astar) {
                (Ok(a), Ok(b)) => {
                    assert_relative_eq!(a.cost, b.cost, epsilon = 1e-9);
                    assert_relative_eq!(a.breakdown.total_cost, b.breakdown.total_cost, epsilon = 1e-9);
                }
                (Err(Error::Unreachable), Err(Error::Unreachable)) => {}
                (a, b) => panic!("seed {seed}: divergent outcomes {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn live_channels_bounded_by_borders_plus_one() {
        for seed in 0..40 {
            let (roadmap, start, goal) = random_refined_graph(seed, 12);
            let r = incremental_search(&roadmap, start, goal, &opts());
            let stats = match r {
                Ok(res) => res.stats,
                Err(Error::Unreachable) => continue,
                Err(e) => panic!("seed {seed}: {e}"),
            };
            assert!(
                stats.max_live_channels <= roadmap.border_count() + 1,
                "seed {seed}: {} channels with {} borders",
                stats.max_live_channels,
                roadmap.border_count()
            );
        }
    }

    #[test]
    fn risk_free_grid_reduces_to_dijkstra_costs() {
        let grid = GridWorld::parse("grid 3 3 1.0\n...\n.#.\n...\n").unwrap();
        let roadmap = build_grid_roadmap(&grid, 4)
            .unwrap()
            .refine(&World::Grid(grid))
            .unwrap();
        let r = incremental_search(&roadmap, 0, 7, &opts()).unwrap();
        // Around the center obstacle: 4 unit moves.
        assert_relative_eq!(r.cost, 4.0);
        assert_relative_eq!(r.breakdown.risk_time, 0.0);
        assert_eq!(r.stats.max_live_channels, 1);
    }

    #[test]
    fn start_inside_risk_uses_start_channel() {
        let spec = ExplicitGraphSpec {
            vertices: vec![
                ExplicitVertex { x: 0.0, y: 0.0, zone: VertexZone::Risk },
                ExplicitVertex { x: 1.0, y: 0.0, zone: VertexZone::Border },
                ExplicitVertex { x: 2.0, y: 0.0, zone: VertexZone::Safe },
            ],
            edges: vec![
                ExplicitEdge { u: 0, v: 1, len: None, zone: None },
                ExplicitEdge { u: 1, v: 2, len: None, zone: None },
            ],
            start: None,
            goal: None,
        };
        let roadmap = spec.build().unwrap();
        let r = incremental_search(&roadmap, 0, 2, &opts()).unwrap();
        assert_relative_eq!(r.cost, (1.0f64.exp() - 1.0) + 1.0, epsilon = 1e-12);
        assert!(r
            .trace
            .iter()
            .any(|e| matches!(e, TraceEvent::Pop { vertex: 0, phi: PHI_START, .. })));
    }

    #[test]
    fn unreachable_and_trivial_queries() {
        let g = two_channel();
        // Same start and goal.
        let r = incremental_search(&g.roadmap, g.y, g.y, &opts()).unwrap();
        assert_eq!(r.path, vec![g.y]);
        assert_eq!(r.cost, 0.0);
        // Disconnected goal.
        let spec = ExplicitGraphSpec {
            vertices: vec![
                ExplicitVertex { x: 0.0, y: 0.0, zone: VertexZone::Safe },
                ExplicitVertex { x: 5.0, y: 0.0, zone: VertexZone::Safe },
            ],
            edges: vec![],
            start: None,
            goal: None,
        };
        let roadmap = spec.build().unwrap();
        assert!(matches!(
            incremental_search(&roadmap, 0, 1, &SearchOptions::default()),
            Err(Error::Unreachable)
        ));
        // Out-of-range query.
        assert!(matches!(
            incremental_search(&roadmap, 0, 9, &SearchOptions::default()),
            Err(Error::InvalidQuery(_))
        ));
    }

    #[test]
    fn label_cost_matches_independent_path_cost() {
        for seed in 0..60 {
            let (roadmap, start, goal) = random_refined_graph(seed, 12);
            match incremental_search(&roadmap, start, goal, &SearchOptions::default()) {
                Ok(r) => {
                    assert_relative_eq!(r.cost, r.breakdown.total_cost, epsilon = 1e-9);
                    assert_eq!(r.path.first(), Some(&start));
                    assert_eq!(r.path.last(), Some(&goal));
                }
                Err(Error::Unreachable) => {}
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
    }
}
