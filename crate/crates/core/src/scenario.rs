//! Scenario files: a world source, a roadmap recipe, and a query.
//!
//! Exactly one world source must be present: `grid` (inline ASCII text),
//! `grid_file`, `polygons`, `graph` (an explicit refined graph, which needs
//! no roadmap recipe), or `graph_file`. Start and goal are vertex indices or
//! `[x, y]` points snapped to the nearest vertex.

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::roadmap::{build_grid_roadmap, build_halton_roadmap, ExplicitGraphSpec, RefinedRoadmap};
use crate::world::{GridWorld, PolygonWorldSpec, World};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygons: Option<PolygonWorldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<ExplicitGraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roadmap: Option<RoadmapRecipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Endpoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Endpoint>,
    #[serde(default)]
    pub options: ScenarioOptions,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoadmapRecipe {
    Grid {
        connectivity: u8,
    },
    Halton {
        n: usize,
        radius: f64,
        #[serde(default)]
        offset: u64,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Index(u32),
    Point([f64; 2]),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub heuristic: bool,
    #[serde(default = "default_true")]
    pub domination_pruning: bool,
    #[serde(default)]
    pub trace: bool,
}

fn default_alpha() -> f64 {
    1.0
}
fn default_true() -> bool {
    true
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            alpha: 1.0,
            heuristic: false,
            domination_pruning: true,
            trace: false,
        }
    }
}

/// A scenario with its world built and roadmap refined.
#[derive(Debug)]
pub struct ResolvedScenario {
    /// Absent for explicit-graph scenarios.
    pub world: Option<World>,
    pub roadmap: RefinedRoadmap,
    pub start: u32,
    pub goal: u32,
    pub options: ScenarioOptions,
}

impl Scenario {
    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Build the world and refined roadmap. Relative `*_file` references
    /// resolve against `base_dir`.
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<ResolvedScenario> {
        let sources = [
            self.grid.is_some(),
            self.grid_file.is_some(),
            self.polygons.is_some(),
            self.graph.is_some(),
            self.graph_file.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(Error::InvalidParameter(
                "scenario needs exactly one of: grid, grid_file, polygons, graph, graph_file"
                    .into(),
            ));
        }
        let resolve_path = |p: &str| match base_dir {
            Some(dir) => dir.join(p),
            None => std::path::PathBuf::from(p),
        };

        let mut embedded: Option<(Option<u32>, Option<u32>)> = None;
        let (world, roadmap) = if let Some(spec) = &self.graph {
            embedded = Some((spec.start, spec.goal));
            (None, spec.build()?)
        } else if let Some(path) = &self.graph_file {
            let text = std::fs::read_to_string(resolve_path(path))?;
            let spec = ExplicitGraphSpec::parse(&text)?;
            embedded = Some((spec.start, spec.goal));
            (None, spec.build()?)
        } else {
            let world = if let Some(text) = &self.grid {
                World::Grid(GridWorld::parse(text)?)
            } else if let Some(path) = &self.grid_file {
                let text = std::fs::read_to_string(resolve_path(path))?;
                World::Grid(GridWorld::parse(&text)?)
            } else {
                self.polygons.clone().expect("checked above").into_world()?
            };
            let recipe = self.roadmap.ok_or_else(|| {
                Error::InvalidParameter("world scenarios need a roadmap recipe".into())
            })?;
            let raw = match recipe {
                RoadmapRecipe::Grid { connectivity } => match &world {
                    World::Grid(g) => build_grid_roadmap(g, connectivity)?,
                    World::Polygons(_) => {
                        return Err(Error::InvalidParameter(
                            "grid roadmap recipe needs a grid world".into(),
                        ))
                    }
                },
                RoadmapRecipe::Halton { n, radius, offset } => {
                    build_halton_roadmap(&world, n, radius, offset)?
                }
            };
            let refined = raw.refine(&world)?;
            (Some(world), refined)
        };
        let pick = |ep: Option<Endpoint>, fallback: Option<u32>, name: &str| -> Result<u32> {
            match ep {
                Some(Endpoint::Index(i)) => {
                    if (i as usize) < roadmap.n_vertices() {
                        Ok(i)
                    } else {
                        Err(Error::InvalidQuery(format!(
                            "{name} index {i} out of range for {} vertices",
                            roadmap.n_vertices()
                        )))
                    }
                }
                Some(Endpoint::Point([x, y])) => Ok(roadmap.nearest_vertex(Point::new(x, y))),
                None => fallback.ok_or_else(|| {
                    Error::InvalidParameter(format!("scenario does not define a {name}"))
                }),
            }
        };
        let (emb_start, emb_goal) = embedded.unwrap_or((None, None));
        let start = pick(self.start, emb_start, "start")?;
        let goal = pick(self.goal, emb_goal, "goal")?;
        Ok(ResolvedScenario { world, roadmap, start, goal, options: self.options })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roadmap::VertexZone;

    #[test]
    fn grid_scenario_with_point_endpoints() {
        let json = r#"{
            "grid": "grid 1 3 1.0\n.~.\n",
            "roadmap": {"grid": {"connectivity": 4}},
            "start": [0.4, 0.6],
            "goal": [2.6, 0.4]
        }"#;
        let s = Scenario::parse(json).unwrap().resolve(None).unwrap();
        assert_eq!(s.start, 0);
        assert_eq!(s.goal, 2);
        assert_eq!(s.roadmap.n_vertices(), 5);
        assert!(s.world.is_some());
    }

    #[test]
    fn graph_scenario_uses_embedded_endpoints() {
        let json = r#"{
            "graph": {
                "vertices": [
                    {"x": 0.0, "y": 0.0, "zone": "safe"},
                    {"x": 1.0, "y": 0.0, "zone": "safe"}
                ],
                "edges": [{"u": 0, "v": 1}],
                "start": 0,
                "goal": 1
            }
        }"#;
        let s = Scenario::parse(json).unwrap().resolve(None).unwrap();
        assert_eq!((s.start, s.goal), (0, 1));
        assert!(s.world.is_none());
        assert_eq!(s.roadmap.zone(0), VertexZone::Safe);
    }

    #[test]
    fn scenario_validation_errors() {
        // No world source at all.
        let err = Scenario::parse(r#"{"start": 0, "goal": 1}"#)
            .unwrap()
            .resolve(None)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // Two world sources.
        let json = r#"{
            "grid": "grid 1 1 1.0\n.\n",
            "graph": {"vertices": [{"x": 0, "y": 0, "zone": "safe"}], "edges": []},
            "roadmap": {"grid": {"connectivity": 4}}
        }"#;
        let err = Scenario::parse(json).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // Missing roadmap recipe for a world scenario.
        let json = r#"{"grid": "grid 1 1 1.0\n.\n", "start": 0, "goal": 0}"#;
        let err = Scenario::parse(json).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // Missing goal.
        let json = r#"{
            "grid": "grid 1 2 1.0\n..\n",
            "roadmap": {"grid": {"connectivity": 4}},
            "start": 0
        }"#;
        let err = Scenario::parse(json).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // Unknown fields are parse errors.
        assert!(Scenario::parse(r#"{"grdi": "x"}"#).is_err());
    }

    #[test]
    fn options_defaults() {
        let json = r#"{
            "grid": "grid 1 2 1.0\n..\n",
            "roadmap": {"grid": {"connectivity": 4}},
            "start": 0, "goal": 1,
            "options": {"alpha": 2.5}
        }"#;
        let s = Scenario::parse(json).unwrap();
        assert_eq!(s.options.alpha, 2.5);
        assert!(s.options.domination_pruning);
        assert!(!s.options.heuristic);
        assert!(!s.options.trace);
    }

    #[test]
    fn halton_recipe_resolves() {
        let json = r#"{
            "grid": "grid 4 4 1.0\n....\n....\n....\n....\n",
            "roadmap": {"halton": {"n": 12, "radius": 2.0}},
            "start": [0.1, 0.1],
            "goal": [3.9, 3.9]
        }"#;
        let s = Scenario::parse(json).unwrap().resolve(None).unwrap();
        assert_eq!(s.roadmap.n_vertices(), 12);
        assert_ne!(s.start, s.goal);
    }
}
