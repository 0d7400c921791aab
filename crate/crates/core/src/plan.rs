//! One entry point over every planner so callers (CLI, demo, benchmarks)
//! compare algorithms through a single result shape.

use crate::baselines::{dijkstra_shortest, min_risk_path};
use crate::cost::{CostBreakdown, CostModel};
use crate::error::{Error, Result};
use crate::precompute::{precompute_search, PrecomputeStats};
use crate::roadmap::RefinedRoadmap;
use crate::search::{incremental_search, SearchOptions, TraceEvent};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Channel-label search; minimizes exposure cost.
    Incremental,
    /// Channel-label search with the Euclidean lower bound; same optima.
    Astar,
    /// Border APSP table + augmented-graph Dijkstra; same optima.
    Precompute,
    /// Plain shortest path; ignores risk.
    Dijkstra,
    /// Lexicographic (risk time, length) baseline.
    MinRisk,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Incremental,
        Algorithm::Astar,
        Algorithm::Precompute,
        Algorithm::Dijkstra,
        Algorithm::MinRisk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Incremental => "incremental",
            Algorithm::Astar => "astar",
            Algorithm::Precompute => "precompute",
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::MinRisk => "min-risk",
        }
    }

    /// Whether the objective this algorithm minimizes is the exposure cost.
    pub fn minimizes_cost(self) -> bool {
        !matches!(self, Algorithm::Dijkstra | Algorithm::MinRisk)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(Algorithm::Incremental),
            "astar" => Ok(Algorithm::Astar),
            "precompute" => Ok(Algorithm::Precompute),
            "dijkstra" => Ok(Algorithm::Dijkstra),
            "min-risk" => Ok(Algorithm::MinRisk),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?}; expected one of incremental, astar, \
                 precompute, dijkstra, min-risk"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanConfig {
    pub algorithm: Algorithm,
    pub model: CostModel,
    pub domination_pruning: bool,
    pub capture_trace: bool,
    /// Byte budget for the precompute duration table; `None` = default.
    pub memory_budget: Option<u64>,
}

impl PlanConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        PlanConfig {
            algorithm,
            model: CostModel::default(),
            domination_pruning: true,
            capture_trace: false,
            memory_budget: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanOutcome {
    pub algorithm: Algorithm,
    pub path: Vec<u32>,
    /// Value of the algorithm's own objective (exposure cost, length, or
    /// lexicographic risk time).
    pub objective: f64,
    /// Exposure-cost breakdown of the returned path, always recomputed
    /// from the path itself.
    pub breakdown: CostBreakdown,
    pub expansions: usize,
    pub queue_peak: usize,
    pub live_channels_peak: usize,
    pub trace: Vec<TraceEvent>,
    pub precompute: Option<PrecomputeStats>,
}

/// Tolerance for the cross-check between an algorithm's reported optimum and
/// the independent recomputation of its path's cost.
const RECOMPUTE_TOL: f64 = 1e-9;

pub fn run_plan(
    roadmap: &RefinedRoadmap,
    start: u32,
    goal: u32,
    config: &PlanConfig,
) -> Result<PlanOutcome> {
    let outcome = match config.algorithm {
        Algorithm::Incremental | Algorithm::Astar => {
            let options = SearchOptions {
                model: config.model,
                heuristic: config.algorithm == Algorithm::Astar,
                domination_pruning: config.domination_pruning,
                capture_trace: config.capture_trace,
                capture_labels: false,
            };
            let r = incremental_search(roadmap, start, goal, &options)?;
            PlanOutcome {
                algorithm: config.algorithm,
                path: r.path,
                objective: r.cost,
                breakdown: r.breakdown,
                expansions: r.stats.expansions,
                queue_peak: r.stats.max_queue,
                live_channels_peak: r.stats.max_live_channels,
                trace: r.trace,
                precompute: None,
            }
        }
        Algorithm::Precompute => {
            let r = precompute_search(roadmap, start, goal, &config.model, config.memory_budget)?;
            PlanOutcome {
                algorithm: config.algorithm,
                path: r.path,
                objective: r.cost,
                breakdown: r.breakdown,
                expansions: r.stats.expansions,
                queue_peak: 0,
                live_channels_peak: 0,
                trace: Vec::new(),
                precompute: Some(r.stats),
            }
        }
        Algorithm::Dijkstra => {
            let r = dijkstra_shortest(roadmap, start, goal, &config.model)?;
            PlanOutcome {
                algorithm: config.algorithm,
                path: r.path,
                objective: r.objective,
                breakdown: r.breakdown,
                expansions: r.stats.expansions,
                queue_peak: r.stats.max_queue,
                live_channels_peak: r.stats.max_live_channels,
                trace: Vec::new(),
                precompute: None,
            }
        }
        Algorithm::MinRisk => {
            let r = min_risk_path(roadmap, start, goal, &config.model)?;
            PlanOutcome {
                algorithm: config.algorithm,
                path: r.path,
                objective: r.objective,
                breakdown: r.breakdown,
                expansions: r.stats.expansions,
                queue_peak: r.stats.max_queue,
                live_channels_peak: r.stats.max_live_channels,
                trace: Vec::new(),
                precompute: None,
            }
        }
    };
    if config.algorithm.minimizes_cost() {
        let diff = (outcome.objective - outcome.breakdown.total_cost).abs();
        if diff > RECOMPUTE_TOL * outcome.breakdown.total_cost.abs().max(1.0) {
            return Err(Error::Internal(format!(
                "{} reported cost {} but its path recomputes to {}",
                config.algorithm, outcome.objective, outcome.breakdown.total_cost
            )));
        }
    }
    Ok(outcome)
}

/// Serializable summary of a plan, for `--out` files and the demo page.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanReport {
    pub algorithm: String,
    pub start: u32,
    pub goal: u32,
    pub cost: f64,
    pub objective: f64,
    pub length: f64,
    pub safe_time: f64,
    pub risk_time: f64,
    pub excursions: usize,
    pub path: Vec<u32>,
    pub polyline: Vec<[f64; 2]>,
    pub expansions: usize,
    pub queue_peak: usize,
    pub live_channels_peak: usize,
    /// Wall time measured by the caller; absent when not timed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl PlanReport {
    pub fn new(outcome: &PlanOutcome, roadmap: &RefinedRoadmap, start: u32, goal: u32) -> Self {
        let polyline = outcome
            .path
            .iter()
            .map(|&v| {
                let p = roadmap.position(v);
                [p.x, p.y]
            })
            .collect();
        PlanReport {
            algorithm: outcome.algorithm.name().to_string(),
            start,
            goal,
            cost: outcome.breakdown.total_cost,
            objective: outcome.objective,
            length: outcome.breakdown.length,
            safe_time: outcome.breakdown.safe_time,
            risk_time: outcome.breakdown.risk_time,
            excursions: outcome.breakdown.excursions.len(),
            path: outcome.path.clone(),
            polyline,
            expansions: outcome.expansions,
            queue_peak: outcome.queue_peak,
            live_channels_peak: outcome.live_channels_peak,
            runtime_ms: None,
        }
    }
}
