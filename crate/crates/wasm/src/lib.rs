//! Browser bindings; see `www/index.html` for the demo page.
//!
//! Build with `wasm-pack build --target web --out-dir www/pkg`. The crate
//! also compiles natively so the response schemas stay under `cargo test`.

use rasp::cost::{exposure_profile, CostModel};
use rasp::generators::coastal_world;
use rasp::geom::Point;
use rasp::plan::{run_plan, Algorithm, PlanConfig, PlanOutcome, PlanReport};
use rasp::render::{render_svg, PathStyle, RenderOptions, RenderPath};
use rasp::roadmap::{build_grid_roadmap, RefinedRoadmap};
use rasp::world::{GridWorld, World, ZoneLabel};
use rasp::{Error, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

struct Loaded {
    grid: GridWorld,
    roadmap: RefinedRoadmap,
}

/// One demo session: a generated coastal world plus its refined roadmap,
/// queried repeatedly as the user moves endpoints and toggles planners.
#[wasm_bindgen]
pub struct Demo {
    loaded: Option<Loaded>,
}

#[derive(Serialize)]
struct WorldResponse {
    rows: usize,
    cols: usize,
    cell_size: f64,
    /// Row-major zone characters, row 0 at the world's bottom edge:
    /// `.` safe, `~` risk, `#` obstacle.
    cells: Vec<String>,
    vertices: usize,
    edges: usize,
    borders: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
enum PlanResponse {
    Unreachable {
        reachable: bool,
        algorithm: String,
        start: u32,
        goal: u32,
    },
    Path {
        reachable: bool,
        #[serde(flatten)]
        report: PlanReport,
        /// Exposure over time along the path, for the profile chart.
        profile: Vec<(f64, f64)>,
    },
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    #[allow(clippy::new_without_default)]
    pub fn new() -> Demo {
        Demo { loaded: None }
    }

    /// Generate a 201x201 coastal world and return its zones and roadmap
    /// summary as JSON.
    pub fn generate(&mut self, seed: u32, d: f64, islands: u32) -> std::result::Result<String, JsError> {
        self.generate_inner(seed as u64, d, islands as usize).map_err(into_js)
    }

    /// Plan between the roadmap vertices nearest the two points and return
    /// the path, its cost breakdown, and the exposure profile as JSON.
    pub fn plan(
        &self,
        sx: f64,
        sy: f64,
        gx: f64,
        gy: f64,
        algo: &str,
        alpha: f64,
    ) -> std::result::Result<String, JsError> {
        self.plan_inner(Point::new(sx, sy), Point::new(gx, gy), algo, alpha).map_err(into_js)
    }

    /// Render the current world with one path per requested algorithm
    /// (comma-separated) to a standalone SVG document.
    pub fn svg(
        &self,
        sx: f64,
        sy: f64,
        gx: f64,
        gy: f64,
        algos: &str,
        alpha: f64,
    ) -> std::result::Result<String, JsError> {
        self.svg_inner(Point::new(sx, sy), Point::new(gx, gy), algos, alpha).map_err(into_js)
    }
}

fn into_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

impl Demo {
    fn generate_inner(&mut self, seed: u64, d: f64, islands: usize) -> Result<String> {
        let valid_d = d.is_finite() && d > 0.0;
        if !valid_d {
            return Err(Error::InvalidParameter(format!("risk offset must be positive, got {d}")));
        }
        if islands == 0 || islands > 16 {
            return Err(Error::InvalidParameter(format!("island count {islands} outside 1..=16")));
        }
        let grid = coastal_world(seed, 201, 201, 1.0, d, islands);
        let world = World::Grid(grid.clone());
        let roadmap = build_grid_roadmap(&grid, 8)?.refine(&world)?;
        let cells = (0..grid.rows())
            .map(|r| {
                (0..grid.cols())
                    .map(|c| match grid.cell(r, c) {
                        ZoneLabel::Safe => '.',
                        ZoneLabel::Risk => '~',
                        ZoneLabel::Obstacle => '#',
                    })
                    .collect()
            })
            .collect();
        let response = WorldResponse {
            rows: grid.rows(),
            cols: grid.cols(),
            cell_size: grid.cell_size(),
            cells,
            vertices: roadmap.n_vertices(),
            edges: roadmap.n_edges(),
            borders: roadmap.border_count(),
        };
        let json = serde_json::to_string(&response).map_err(Error::Json)?;
        self.loaded = Some(Loaded { grid, roadmap });
        Ok(json)
    }

    fn run(&self, start: Point, goal: Point, algo: &str, alpha: f64) -> Result<(u32, u32, Algorithm, Result<PlanOutcome>)> {
        let loaded = self
            .loaded
            .as_ref()
            .ok_or_else(|| Error::InvalidQuery("no world generated yet".into()))?;
        let algorithm: Algorithm = algo.parse()?;
        let config = PlanConfig {
            model: CostModel::new(alpha)?,
            ..PlanConfig::new(algorithm)
        };
        let s = loaded.roadmap.nearest_vertex(start);
        let g = loaded.roadmap.nearest_vertex(goal);
        Ok((s, g, algorithm, run_plan(&loaded.roadmap, s, g, &config)))
    }

    fn plan_inner(&self, start: Point, goal: Point, algo: &str, alpha: f64) -> Result<String> {
        let (s, g, algorithm, outcome) = self.run(start, goal, algo, alpha)?;
        let roadmap = &self.loaded.as_ref().unwrap().roadmap;
        let response = match outcome {
            Ok(outcome) => PlanResponse::Path {
                reachable: true,
                profile: exposure_profile(roadmap, &outcome.path)?,
                report: PlanReport::new(&outcome, roadmap, s, g),
            },
            Err(Error::Unreachable) => PlanResponse::Unreachable {
                reachable: false,
                algorithm: algorithm.name().to_string(),
                start: s,
                goal: g,
            },
            Err(e) => return Err(e),
        };
        serde_json::to_string(&response).map_err(Error::Json)
    }

    fn svg_inner(&self, start: Point, goal: Point, algos: &str, alpha: f64) -> Result<String> {
        let loaded = self
            .loaded
            .as_ref()
            .ok_or_else(|| Error::InvalidQuery("no world generated yet".into()))?;
        let mut paths = Vec::new();
        let mut endpoints = None;
        for algo in algos.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            let (s, g, algorithm, outcome) = self.run(start, goal, algo, alpha)?;
            endpoints = Some((s, g));
            match outcome {
                Ok(outcome) => paths.push(RenderPath {
                    label: format!("{} (cost {:.3})", algorithm.name(), outcome.objective),
                    vertices: outcome.path,
                    style: PathStyle::for_algorithm(algorithm),
                }),
                Err(Error::Unreachable) => {}
                Err(e) => return Err(e),
            }
        }
        let (s, g) = endpoints
            .ok_or_else(|| Error::InvalidParameter("no algorithms requested".into()))?;
        render_svg(
            Some(&World::Grid(loaded.grid.clone())),
            &loaded.roadmap,
            &paths,
            Some(s),
            Some(g),
            &RenderOptions::default(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Demo {
        let mut demo = Demo::new();
        demo.generate_inner(3, 8.0, 8).unwrap();
        demo
    }

    #[test]
    fn generate_reports_world_and_roadmap_shape() {
        let mut demo = Demo::new();
        let json = demo.generate_inner(3, 8.0, 8).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"], 201);
        assert_eq!(v["cells"].as_array().unwrap().len(), 201);
        assert_eq!(v["cells"][0].as_str().unwrap().len(), 201);
        assert!(v["borders"].as_u64().unwrap() > 0);
    }

    #[test]
    fn plan_returns_path_breakdown_and_profile() {
        let demo = demo();
        let json = demo
            .plan_inner(Point::new(0.0, 0.0), Point::new(201.0, 201.0), "incremental", 1.0)
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["reachable"], true);
        assert!(v["cost"].as_f64().unwrap() > 0.0);
        let polyline = v["polyline"].as_array().unwrap();
        let profile = v["profile"].as_array().unwrap();
        assert!(polyline.len() >= 2);
        assert!(profile.len() >= polyline.len());
    }

    #[test]
    fn unknown_algorithm_and_missing_world_are_rejected() {
        let demo = demo();
        assert!(demo
            .plan_inner(Point::new(0.0, 0.0), Point::new(1.0, 1.0), "warp", 1.0)
            .is_err());
        let empty = Demo::new();
        assert!(empty
            .plan_inner(Point::new(0.0, 0.0), Point::new(1.0, 1.0), "incremental", 1.0)
            .is_err());
    }

    #[test]
    fn svg_renders_requested_paths() {
        let demo = demo();
        let svg = demo
            .svg_inner(
                Point::new(0.0, 0.0),
                Point::new(201.0, 201.0),
                "incremental, dijkstra, min-risk",
                1.0,
            )
            .unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("stroke-dasharray=\"7 4\""));
        assert!(svg.contains("incremental (cost "));
    }
}
