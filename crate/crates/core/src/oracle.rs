//! Brute-force reference results for small instances.
//!
//! The oracle computes, by exhaustive relaxation to a fixpoint, the exact
//! Pareto frontier of `(cost, exposure)` over *all* walks from the start —
//! revisits allowed. No priority queue, no pruning lemmas: per channel it
//! keeps every pointwise-undominated pair, which is finite because edge
//! lengths are positive. Used to cross-check the planners on instances small
//! enough to afford it.

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::roadmap::{EdgeZone, RefinedRoadmap, VertexZone};
use crate::search::{PHI_NONE, PHI_START};
use std::collections::HashMap;

pub const DEFAULT_VERTEX_CAP: usize = 14;
const NODE_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub model: CostModel,
    /// Refuse instances with more vertices than this.
    pub vertex_cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { model: CostModel::default(), vertex_cap: DEFAULT_VERTEX_CAP }
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    vertex: u32,
    phi: u32,
    cost: f64,
    lambda: f64,
    parent: Option<u32>,
}

/// Fixpoint of the exhaustive relaxation: per channel, the Pareto-minimal
/// `(cost, lambda)` pairs over all walks from the start.
pub struct OracleFrontiers {
    nodes: Vec<Node>,
    /// Arena indices of the surviving pairs per channel.
    channels: HashMap<(u32, u32), Vec<u32>>,
    start: u32,
}

pub fn oracle_frontiers(
    roadmap: &RefinedRoadmap,
    start: u32,
    options: &OracleOptions,
) -> Result<OracleFrontiers> {
    let n = roadmap.n_vertices();
    if n > options.vertex_cap {
        return Err(Error::InstanceTooLarge { vertices: n, cap: options.vertex_cap });
    }
    if start as usize >= n {
        return Err(Error::InvalidQuery(format!("start {start} out of range")));
    }
    let model = options.model;
    let mut nodes: Vec<Node> = Vec::new();
    let mut channels: HashMap<(u32, u32), Vec<u32>> = HashMap::new();

    let start_phi = if roadmap.zone(start) == VertexZone::Risk {
        PHI_START
    } else {
        PHI_NONE
    };
    nodes.push(Node { vertex: start, phi: start_phi, cost: 0.0, lambda: 0.0, parent: None });
    channels.insert((start, start_phi), vec![0]);

    // Process the arena in insertion order. A node whose index has been
    // dropped from its channel set was dominated after creation; skip it.
    let mut cursor = 0usize;
    while cursor < nodes.len() {
        let idx = cursor as u32;
        let node = nodes[cursor];
        cursor += 1;
        let set = channels.get(&(node.vertex, node.phi)).expect("channel exists");
        if !set.contains(&idx) {
            continue;
        }
        for edge in roadmap.neighbors(node.vertex) {
            let (seg_cost, lambda_after) =
                model.segment_cost(node.lambda, edge.len, edge.zone)?;
            let cost = node.cost + seg_cost;
            let (phi, lambda) = match edge.zone {
                EdgeZone::Safe => (PHI_NONE, 0.0),
                EdgeZone::Risk => {
                    if roadmap.zone(edge.to) != VertexZone::Risk {
                        (PHI_NONE, 0.0)
                    } else {
                        let phi = match roadmap.zone(node.vertex) {
                            VertexZone::Border => roadmap
                                .border_ordinal(node.vertex)
                                .expect("border vertex has an ordinal"),
                            VertexZone::Risk => node.phi,
                            VertexZone::Safe => {
                                return Err(Error::Internal(
                                    "risk edge out of a safe vertex".into(),
                                ))
                            }
                        };
                        (phi, lambda_after)
                    }
                }
            };

            let set = channels.entry((edge.to, phi)).or_default();
            if set
                .iter()
                .any(|&i| nodes[i as usize].cost <= cost && nodes[i as usize].lambda <= lambda)
            {
                continue;
            }
            set.retain(|&i| {
                !(nodes[i as usize].cost >= cost && nodes[i as usize].lambda >= lambda)
            });
            if nodes.len() >= NODE_CAP {
                return Err(Error::InstanceTooLarge { vertices: n, cap: options.vertex_cap });
            }
            set.push(nodes.len() as u32);
            nodes.push(Node { vertex: edge.to, phi, cost, lambda, parent: Some(idx) });
        }
    }
    Ok(OracleFrontiers { nodes, channels, start })
}

impl OracleFrontiers {
    /// Pareto-minimal `(cost, lambda)` pairs over all walks reaching `v`,
    /// merged across channels and sorted by cost.
    pub fn vertex_frontier(&self, v: u32) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self
            .channels
            .iter()
            .filter(|((vertex, _), _)| *vertex == v)
            .flat_map(|(_, set)| set.iter())
            .map(|&i| (self.nodes[i as usize].cost, self.nodes[i as usize].lambda))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut frontier: Vec<(f64, f64)> = Vec::new();
        for (c, l) in pairs {
            if !frontier.iter().any(|&(fc, fl)| fc <= c && fl <= l) {
                frontier.push((c, l));
            }
        }
        frontier
    }

    /// Minimal cost of reaching `goal` and one witness walk.
    pub fn optimum(&self, goal: u32) -> Result<(f64, Vec<u32>)> {
        let best = self
            .channels
            .iter()
            .filter(|((vertex, _), _)| *vertex == goal)
            .flat_map(|(_, set)| set.iter())
            .min_by(|&&a, &&b| {
                let (na, nb) = (&self.nodes[a as usize], &self.nodes[b as usize]);
                na.cost
                    .total_cmp(&nb.cost)
                    .then(na.lambda.total_cmp(&nb.lambda))
                    .then(a.cmp(&b))
            });
        let Some(&best) = best else {
            return Err(Error::Unreachable);
        };
        let mut path = Vec::new();
        let mut cur = Some(best);
        while let Some(i) = cur {
            let node = &self.nodes[i as usize];
            path.push(node.vertex);
            cur = node.parent;
        }
        path.reverse();
        debug_assert_eq!(path.first(), Some(&self.start));
        Ok((self.nodes[best as usize].cost, path))
    }
}

/// Minimal exposure cost from `start` to `goal` by exhaustive relaxation,
/// with a witness walk.
pub fn brute_force_optimum(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    options: &OracleOptions,
) -> Result<(f64, Vec<u32>)> {
    if goal as usize >= roadmap.n_vertices() {
        return Err(Error::InvalidQuery(format!("goal {goal} out of range")));
    }
    oracle_frontiers(roadmap, start, options)?.optimum(goal)
}

/// All vertex-simple paths from `start` to `goal`, for diagnostics. Note
/// that minimal-exposure solutions are *not* always vertex-simple: re-touching
/// safe space to split one long excursion into two can pay off, so this
/// enumeration may miss the optimum. [`brute_force_optimum`] does not.
pub fn enumerate_simple_paths(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    vertex_cap: usize,
) -> Result<Vec<Vec<u32>>> {
    let n = roadmap.n_vertices();
    if n > vertex_cap {
        return Err(Error::InstanceTooLarge { vertices: n, cap: vertex_cap });
    }
    if start as usize >= n || goal as usize >= n {
        return Err(Error::InvalidQuery("start or goal out of range".into()));
    }
    let mut paths = Vec::new();
    let mut stack = vec![start];
    let mut on_path = vec![false; n];
    on_path[start as usize] = true;

    fn dfs(
        roadmap: &RefinedRoadmap,
        goal: u32,
        stack: &mut Vec<u32>,
        on_path: &mut Vec<bool>,
        paths: &mut Vec<Vec<u32>>,
    ) {
        let v = *stack.last().expect("stack nonempty");
        if v == goal {
            paths.push(stack.clone());
            return;
        }
        for edge in roadmap.neighbors(v) {
            if !on_path[edge.to as usize] {
                on_path[edge.to as usize] = true;
                stack.push(edge.to);
                dfs(roadmap, goal, stack, on_path, paths);
                stack.pop();
                on_path[edge.to as usize] = false;
            }
        }
    }
    dfs(roadmap, goal, &mut stack, &mut on_path, &mut paths);
    Ok(paths)
}
