//! Risk-exposure cost of paths traversed at unit speed.
//!
//! Inside the risk region the instantaneous cost rate is `exp(alpha * l)`
//! where `l` is the time since the path last touched safe space; in safe
//! space the rate is 1. Exposure resets to zero at Safe and Border vertices
//! (the boundary belongs to safe space).

use crate::error::{Error, Result};
use crate::roadmap::{EdgeZone, RefinedRoadmap, VertexZone};

/// Exposure cost model with penalty exponent `alpha > 0`.
#[derive(Clone, Copy, Debug)]
pub struct CostModel {
    alpha: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { alpha: 1.0 }
    }
}

impl CostModel {
    pub fn new(alpha: f64) -> Result<Self> {
        let valid = alpha.is_finite() && alpha > 0.0;
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        Ok(CostModel { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Cost and final exposure of one zone-pure piece of duration `dt`,
    /// entered with exposure `lambda0`.
    ///
    /// Safe pieces require `lambda0 == 0`: their start vertex is Safe or
    /// Border, where exposure has already reset.
    pub fn segment_cost(&self, lambda0: f64, dt: f64, zone: EdgeZone) -> Result<(f64, f64)> {
        let valid = dt >= 0.0 && lambda0 >= 0.0;
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "segment with dt {dt}, lambda0 {lambda0}"
            )));
        }
        match zone {
            EdgeZone::Safe => {
                if lambda0 != 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "safe segment entered with nonzero exposure {lambda0}"
                    )));
                }
                Ok((dt, 0.0))
            }
            EdgeZone::Risk => {
                let a = self.alpha;
                let cost = (a * lambda0).exp() * (a * dt).exp_m1() / a;
                Ok((cost, lambda0 + dt))
            }
        }
    }

    /// Cost of a full excursion of duration `d` entered with zero exposure.
    pub fn excursion_cost(&self, d: f64) -> f64 {
        (self.alpha * d).exp_m1() / self.alpha
    }
}

/// One maximal stay inside the risk region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Excursion {
    /// Vertex where the path entered risk; `None` when the path starts there.
    pub entry: Option<u32>,
    /// Vertex where the path returned to safe space; `None` when it ends in risk.
    pub exit: Option<u32>,
    pub duration: f64,
    pub cost: f64,
}

/// Cost decomposition of a path.
#[derive(Clone, Debug, PartialEq)]
pub struct CostBreakdown {
    pub total_cost: f64,
    /// Total length, which equals total duration at unit speed.
    pub length: f64,
    pub safe_time: f64,
    pub risk_time: f64,
    pub excursions: Vec<Excursion>,
}

/// Exact cost of a refined vertex path. Exposure starts at zero (a path that
/// begins inside risk is charged from its first moment) and resets at every
/// Safe or Border vertex.
pub fn path_cost(roadmap: &RefinedRoadmap, path: &[u32], model: &CostModel) -> Result<CostBreakdown> {
    if path.is_empty() {
        return Err(Error::InvalidParameter("empty path".into()));
    }
    let resets = |v: u32| roadmap.zone(v) != VertexZone::Risk;
    let mut total_cost = 0.0;
    let mut length = 0.0;
    let mut risk_time = 0.0;
    let mut lambda = 0.0;
    let mut excursions: Vec<Excursion> = Vec::new();
    let mut current: Option<Excursion> = if resets(path[0]) {
        None
    } else {
        Some(Excursion { entry: None, exit: None, duration: 0.0, cost: 0.0 })
    };

    for pair in path.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let edge = roadmap.edge_between(u, v).ok_or(Error::NotAnEdge {
            from: u as usize,
            to: v as usize,
        })?;
        let (cost, lambda_after) = model.segment_cost(lambda, edge.len, edge.zone)?;
        total_cost += cost;
        length += edge.len;
        lambda = lambda_after;
        if edge.zone == EdgeZone::Risk {
            risk_time += edge.len;
            let exc = current.get_or_insert(Excursion {
                entry: Some(u),
                exit: None,
                duration: 0.0,
                cost: 0.0,
            });
            exc.duration += edge.len;
            exc.cost += cost;
        }
        if resets(v) {
            lambda = 0.0;
            if let Some(mut exc) = current.take() {
                exc.exit = Some(v);
                excursions.push(exc);
            }
        }
    }
    if let Some(exc) = current.take() {
        excursions.push(exc);
    }
    Ok(CostBreakdown {
        total_cost,
        length,
        safe_time: length - risk_time,
        risk_time,
        excursions,
    })
}

/// Piecewise-linear exposure profile of a path as `(time, exposure)`
/// breakpoints. Resets appear as a vertical drop: `(t, peak)` followed by
/// `(t, 0)`.
pub fn exposure_profile(roadmap: &RefinedRoadmap, path: &[u32]) -> Result<Vec<(f64, f64)>> {
    if path.is_empty() {
        return Err(Error::InvalidParameter("empty path".into()));
    }
    let resets = |v: u32| roadmap.zone(v) != VertexZone::Risk;
    let mut t = 0.0;
    let mut lambda = 0.0;
    let mut profile = vec![(0.0, 0.0)];
    for pair in path.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let edge = roadmap.edge_between(u, v).ok_or(Error::NotAnEdge {
            from: u as usize,
            to: v as usize,
        })?;
        t += edge.len;
        if edge.zone == EdgeZone::Risk {
            lambda += edge.len;
        }
        profile.push((t, lambda));
        if resets(v) && lambda > 0.0 {
            lambda = 0.0;
            profile.push((t, 0.0));
        }
    }
    Ok(profile)
}
