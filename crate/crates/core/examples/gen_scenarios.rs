//! Regenerates the checked-in files under `scenarios/`.
//!
//! Run with `cargo run -p rasp --example gen_scenarios`. Output is
//! deterministic, so reruns leave the files unchanged.

use rasp::generators::{coastal_islands, two_channel};
use rasp::geom::Point;
use rasp::roadmap::ExplicitGraphSpec;
use rasp::scenario::{Endpoint, RoadmapRecipe, Scenario, ScenarioOptions};
use rasp::world::{GridDims, PolygonWorldSpec, ZoneLabel};
use std::path::Path;

fn write(dir: &Path, name: &str, scenario: &Scenario) {
    let text = serde_json::to_string_pretty(scenario).unwrap() + "\n";
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    std::fs::create_dir_all(&dir).unwrap();

    // Two-channel graph: the smallest instance where the cheapest route to an
    // intermediate vertex is not a prefix of the cheapest route through it.
    let fixture = two_channel();
    let mut graph = ExplicitGraphSpec::from_refined(&fixture.roadmap);
    graph.start = Some(fixture.xs);
    graph.goal = Some(fixture.z);
    let scenario = Scenario {
        grid: None,
        grid_file: None,
        polygons: None,
        graph: Some(graph),
        graph_file: None,
        roadmap: None,
        start: None,
        goal: None,
        options: ScenarioOptions::default(),
    };
    write(&dir, "two-channel.json", &scenario);

    // A risk diamond between start and goal: straight through, skirt the rim
    // with a mid-crossing breather, or go around.
    let grid = "grid 5 9 1.0\n\
                .........\n\
                ....~....\n\
                ...~~~...\n\
                ....~....\n\
                .........\n";
    let scenario = Scenario {
        grid: Some(grid.to_string()),
        grid_file: None,
        polygons: None,
        graph: None,
        graph_file: None,
        roadmap: Some(RoadmapRecipe::Grid { connectivity: 8 }),
        start: Some(Endpoint::Point([0.5, 2.5])),
        goal: Some(Endpoint::Point([8.5, 2.5])),
        options: ScenarioOptions::default(),
    };
    write(&dir, "strip.json", &scenario);

    // Coastal archipelago: islands are obstacles, open water beyond the
    // offset is risk, the coastal band is safe.
    let (rows, cols, cell_size, d, seed, n_islands) = (201, 201, 1.0, 8.0, 3u64, 8);
    let islands = coastal_islands(seed, cols as f64 * cell_size, rows as f64 * cell_size, n_islands);
    let spec = PolygonWorldSpec {
        bounds: Some([[0.0, 0.0], [cols as f64 * cell_size, rows as f64 * cell_size]]),
        obstacles: islands
            .iter()
            .map(|poly| poly.iter().map(|p| [p.x, p.y]).collect())
            .collect(),
        risk: Vec::new(),
        risk_offset: Some(d),
        grid: Some(GridDims { rows, cols, cell_size }),
    };
    // Endpoints: the safe cells nearest opposite corners, so the query spans
    // the archipelago.
    let world = spec.clone().into_world().unwrap();
    let grid = match &world {
        rasp::world::World::Grid(g) => g,
        _ => unreachable!(),
    };
    let nearest_safe = |target: Point| -> [f64; 2] {
        let mut best = None;
        for r in 0..grid.rows() {
            for c in 0..grid.cols() {
                if grid.cell(r, c) == ZoneLabel::Safe {
                    let center = grid.cell_center(r, c);
                    let dist = center.dist(target);
                    if best.is_none_or(|(d0, _)| dist < d0) {
                        best = Some((dist, center));
                    }
                }
            }
        }
        let (_, p) = best.expect("coastal world has safe cells");
        [p.x, p.y]
    };
    let start = nearest_safe(Point::new(0.0, 0.0));
    let goal = nearest_safe(Point::new(cols as f64, rows as f64));
    let scenario = Scenario {
        grid: None,
        grid_file: None,
        polygons: Some(spec),
        graph: None,
        graph_file: None,
        roadmap: Some(RoadmapRecipe::Grid { connectivity: 8 }),
        start: Some(Endpoint::Point(start)),
        goal: Some(Endpoint::Point(goal)),
        options: ScenarioOptions::default(),
    };
    write(&dir, "coastal.json", &scenario);
}
