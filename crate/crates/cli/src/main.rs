//! Command-line planner for risk-exposure-aware roadmap search.
//!
//! Exit codes: 0 success, 2 unreachable goal, 3 scenario/parameter parse
//! error, 4 resource abort (memory budget or oracle cap).

use clap::{Args, Parser, Subcommand};
use rasp::cost::CostModel;
use rasp::generators::random_refined_graph;
use rasp::oracle::{brute_force_optimum, OracleOptions};
use rasp::plan::{run_plan, Algorithm, PlanConfig, PlanOutcome, PlanReport};
use rasp::render::{render_svg, PathStyle, RenderOptions, RenderPath};
use rasp::scenario::{ResolvedScenario, Scenario};
use rasp::Error;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rasp",
    version,
    about = "Minimal-exposure path planning on roadmaps with risk zones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one path and export it as JSON (and optionally SVG).
    Plan(PlanArgs),
    /// Time planners on a scenario; prints a table, optionally writes CSV.
    Bench(BenchArgs),
    /// Check planners against the brute-force oracle on random instances.
    OracleCheck(OracleCheckArgs),
    /// Draw the world, roadmap, and planned paths as a deterministic SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario's cost-model alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Byte budget for the precompute border table.
    #[arg(long)]
    memory_budget: Option<u64>,
}

impl ScenarioArgs {
    fn resolve(&self) -> rasp::Result<(ResolvedScenario, CostModel)> {
        let scenario = Scenario::load(&self.scenario)?;
        let resolved = scenario.resolve(self.scenario.parent())?;
        let alpha = self.alpha.unwrap_or(resolved.options.alpha);
        let model = CostModel::new(alpha)?;
        Ok((resolved, model))
    }
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Planner: incremental, astar, precompute, dijkstra, or min-risk.
    #[arg(long, default_value = "incremental")]
    algo: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the planned path to this SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Include queue trace events in the JSON report.
    #[arg(long)]
    trace: bool,
    /// Disable cross-channel domination pruning.
    #[arg(long)]
    no_pruning: bool,
    /// Use the Euclidean heuristic (equivalent to --algo astar).
    #[arg(long)]
    heuristic: bool,
    /// Draw roadmap edges in the SVG regardless of size.
    #[arg(long)]
    show_roadmap: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Planner to time; repeatable. Defaults to all planners.
    #[arg(long = "algo")]
    algos: Vec<String>,
    /// Repetitions per planner.
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Write one CSV row per planner here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Number of random instances.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Vertex cap for generated instances.
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    /// First seed; instances use seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Planner whose path to draw; repeatable.
    /// Defaults to incremental, dijkstra, min-risk.
    #[arg(long = "algo")]
    algos: Vec<String>,
    /// Write the SVG here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Image width in pixels.
    #[arg(long, default_value_t = 800)]
    width: u32,
    /// Draw roadmap edges and border vertices.
    #[arg(long)]
    show_roadmap: bool,
    /// Draw the world only.
    #[arg(long)]
    no_paths: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's default usage-error code (2) out of the spoken-for
            // exit-code space.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Unreachable => 2,
        Error::Parse { .. } | Error::Json(_) | Error::InvalidParameter(_) => 3,
        Error::MemoryBudget { .. } | Error::InstanceTooLarge { .. } => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> rasp::Result<i32> {
    match cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Bench(args) => cmd_bench(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
        Command::Render(args) => cmd_render(args),
    }
}

fn parse_algos(raw: &[String], defaults: &[Algorithm]) -> rasp::Result<Vec<Algorithm>> {
    if raw.is_empty() {
        return Ok(defaults.to_vec());
    }
    if raw.len() == 1 && raw[0] == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    raw.iter().map(|s| s.parse()).collect()
}

fn emit_json(value: &serde_json::Value, out: Option<&Path>) -> rasp::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_plan(args: PlanArgs) -> rasp::Result<i32> {
    let (resolved, model) = args.scenario.resolve()?;
    let mut algorithm: Algorithm = args.algo.parse()?;
    if args.heuristic && algorithm == Algorithm::Incremental {
        algorithm = Algorithm::Astar;
    }
    let capture_trace = args.trace || resolved.options.trace;
    let config = PlanConfig {
        algorithm,
        model,
        domination_pruning: resolved.options.domination_pruning && !args.no_pruning,
        capture_trace,
        memory_budget: args.scenario.memory_budget,
    };
    let started = Instant::now();
    let outcome = match run_plan(&resolved.roadmap, resolved.start, resolved.goal, &config) {
        Ok(outcome) => outcome,
        Err(Error::Unreachable) => {
            let value = json!({
                "algorithm": algorithm.name(),
                "start": resolved.start,
                "goal": resolved.goal,
                "alpha": model.alpha(),
                "reachable": false,
            });
            emit_json(&value, args.out.as_deref())?;
            eprintln!("goal {} is unreachable from start {}", resolved.goal, resolved.start);
            return Ok(2);
        }
        Err(e) => return Err(e),
    };
    let runtime_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut report = PlanReport::new(&outcome, &resolved.roadmap, resolved.start, resolved.goal);
    report.runtime_ms = Some(runtime_ms);
    let mut value = serde_json::to_value(&report)?;
    value["reachable"] = json!(true);
    value["alpha"] = json!(model.alpha());
    if capture_trace {
        value["trace"] = serde_json::to_value(&outcome.trace)?;
    }
    if let Some(p) = &outcome.precompute {
        value["precompute"] = json!({
            "apsp_ms": p.apsp_time.as_secs_f64() * 1e3,
            "build_ms": p.build_time.as_secs_f64() * 1e3,
            "search_ms": p.search_time.as_secs_f64() * 1e3,
            "n_border": p.n_border,
            "n_risk_sub": p.n_risk_sub,
            "table_bytes": p.table_bytes,
            "aug_vertices": p.aug_vertices,
            "aug_edges": p.aug_edges,
        });
    }
    emit_json(&value, args.out.as_deref())?;
    if args.out.is_some() {
        println!(
            "{}: cost {:.6}, length {:.3}, risk time {:.3} over {} excursion(s), \
             {} expansions, {:.2} ms",
            algorithm,
            report.cost,
            report.length,
            report.risk_time,
            report.excursions,
            report.expansions,
            runtime_ms
        );
    }
    if let Some(svg_path) = &args.svg {
        let paths = vec![RenderPath {
            label: format!("{} (cost {:.3})", algorithm, report.cost),
            vertices: outcome.path.clone(),
            style: PathStyle::for_algorithm(algorithm),
        }];
        let options = RenderOptions {
            show_roadmap: args.show_roadmap || resolved.roadmap.n_vertices() <= 1500,
            ..RenderOptions::default()
        };
        let svg = render_svg(
            resolved.world.as_ref(),
            &resolved.roadmap,
            &paths,
            Some(resolved.start),
            Some(resolved.goal),
            &options,
        )?;
        std::fs::write(svg_path, svg)?;
    }
    Ok(0)
}

struct BenchRow {
    algorithm: Algorithm,
    /// `None` when the planner did not finish (memory-budget abort).
    timing: Option<BenchTiming>,
}

struct BenchTiming {
    mean_ms: f64,
    stddev_ms: f64,
    cost: f64,
    length: f64,
    expansions: usize,
    apsp_share: Option<f64>,
    table_bytes: Option<u64>,
}

fn mean_stddev(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn cmd_bench(args: BenchArgs) -> rasp::Result<i32> {
    let (resolved, model) = args.scenario.resolve()?;
    let algos = parse_algos(&args.algos, &Algorithm::ALL)?;
    let reps = args.reps.max(1);
    println!(
        "scenario {}: {} vertices, {} edges, {} border vertices; alpha {}, {} repetition(s)",
        args.scenario.scenario.display(),
        resolved.roadmap.n_vertices(),
        resolved.roadmap.n_edges(),
        resolved.roadmap.border_count(),
        model.alpha(),
        reps
    );

    let mut rows = Vec::new();
    for algorithm in algos {
        let mut config = PlanConfig::new(algorithm);
        config.model = model;
        config.domination_pruning = resolved.options.domination_pruning;
        config.memory_budget = args.scenario.memory_budget;
        let mut times_ms = Vec::with_capacity(reps);
        let mut last: Option<PlanOutcome> = None;
        let mut dnf = false;
        for _ in 0..reps {
            let started = Instant::now();
            match run_plan(&resolved.roadmap, resolved.start, resolved.goal, &config) {
                Ok(outcome) => {
                    times_ms.push(started.elapsed().as_secs_f64() * 1e3);
                    last = Some(outcome);
                }
                Err(Error::MemoryBudget { .. }) => {
                    dnf = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let timing = if dnf {
            None
        } else {
            let outcome = last.expect("reps >= 1");
            let (mean_ms, stddev_ms) = mean_stddev(&times_ms);
            let (apsp_share, table_bytes) = match &outcome.precompute {
                Some(p) => {
                    let total = (p.apsp_time + p.build_time + p.search_time).as_secs_f64();
                    let share = if total > 0.0 {
                        p.apsp_time.as_secs_f64() / total
                    } else {
                        0.0
                    };
                    (Some(share), Some(p.table_bytes))
                }
                None => (None, None),
            };
            Some(BenchTiming {
                mean_ms,
                stddev_ms,
                cost: outcome.breakdown.total_cost,
                length: outcome.breakdown.length,
                expansions: outcome.expansions,
                apsp_share,
                table_bytes,
            })
        };
        rows.push(BenchRow { algorithm, timing });
    }

    println!(
        "{:<12} {:>12} {:>12} {:>14} {:>10} {:>11} {:>7} {:>10}",
        "algorithm", "mean ms", "stddev ms", "cost", "length", "expansions", "apsp%", "table KiB"
    );
    for row in &rows {
        match &row.timing {
            Some(t) => println!(
                "{:<12} {:>12.3} {:>12.3} {:>14.6} {:>10.3} {:>11} {:>7} {:>10}",
                row.algorithm.name(),
                t.mean_ms,
                t.stddev_ms,
                t.cost,
                t.length,
                t.expansions,
                t.apsp_share
                    .map(|s| format!("{:.1}", s * 100.0))
                    .unwrap_or_else(|| "-".into()),
                t.table_bytes
                    .map(|b| format!("{}", b / 1024))
                    .unwrap_or_else(|| "-".into()),
            ),
            None => println!(
                "{:<12} {:>12} {:>12} {:>14} {:>10} {:>11} {:>7} {:>10}",
                row.algorithm.name(),
                "DNF",
                "---",
                "---",
                "---",
                "---",
                "-",
                "-"
            ),
        }
    }

    if let Some(csv_path) = &args.csv {
        let mut csv = String::from(
            "algorithm,status,reps,mean_ms,stddev_ms,cost,length,expansions,apsp_share,table_bytes\n",
        );
        for row in &rows {
            match &row.timing {
                Some(t) => csv.push_str(&format!(
                    "{},ok,{},{:.6},{:.6},{:.9},{:.9},{},{},{}\n",
                    row.algorithm.name(),
                    reps,
                    t.mean_ms,
                    t.stddev_ms,
                    t.cost,
                    t.length,
                    t.expansions,
                    t.apsp_share.map(|s| format!("{s:.6}")).unwrap_or_default(),
                    t.table_bytes.map(|b| b.to_string()).unwrap_or_default(),
                )),
                None => csv.push_str(&format!(
                    "{},dnf,{},,,,,,,\n",
                    row.algorithm.name(),
                    reps
                )),
            }
        }
        std::fs::write(csv_path, csv)?;
    }
    Ok(0)
}

fn cmd_oracle_check(args: OracleCheckArgs) -> rasp::Result<i32> {
    let model = CostModel::new(args.alpha)?;
    let oracle_options = OracleOptions { model, vertex_cap: args.max_vertices };
    let variants: [(&str, Algorithm, bool); 4] = [
        ("incremental", Algorithm::Incremental, true),
        ("incremental/no-pruning", Algorithm::Incremental, false),
        ("astar", Algorithm::Astar, true),
        ("precompute", Algorithm::Precompute, true),
    ];
    let mut mismatches = 0usize;
    for i in 0..args.count {
        let seed = args.seed + i as u64;
        let (roadmap, start, goal) = random_refined_graph(seed, args.max_vertices);
        let expect = match brute_force_optimum(&roadmap, start, goal, &oracle_options) {
            Ok((cost, _)) => Some(cost),
            Err(Error::Unreachable) => None,
            Err(e) => return Err(e),
        };
        for (name, algorithm, pruning) in variants {
            let mut config = PlanConfig::new(algorithm);
            config.model = model;
            config.domination_pruning = pruning;
            let got = match run_plan(&roadmap, start, goal, &config) {
                Ok(outcome) => Some(outcome.objective),
                Err(Error::Unreachable) => None,
                Err(e) => return Err(e),
            };
            let ok = match (expect, got) {
                (None, None) => true,
                (Some(a), Some(b)) => (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                _ => false,
            };
            if !ok {
                mismatches += 1;
                println!(
                    "mismatch: seed {seed}, {name}: oracle {expect:?}, planner {got:?}"
                );
            }
        }
    }
    let checks = args.count * variants.len();
    println!(
        "oracle-check: {}/{} checks match over {} random instances (seeds {}..{})",
        checks - mismatches,
        checks,
        args.count,
        args.seed,
        args.seed + args.count as u64
    );
    Ok(if mismatches == 0 { 0 } else { 1 })
}

fn cmd_render(args: RenderArgs) -> rasp::Result<i32> {
    let (resolved, model) = args.scenario.resolve()?;
    let algos = if args.no_paths {
        Vec::new()
    } else {
        parse_algos(
            &args.algos,
            &[Algorithm::Incremental, Algorithm::Dijkstra, Algorithm::MinRisk],
        )?
    };
    let mut paths = Vec::new();
    for algorithm in algos {
        let mut config = PlanConfig::new(algorithm);
        config.model = model;
        config.domination_pruning = resolved.options.domination_pruning;
        config.memory_budget = args.scenario.memory_budget;
        let outcome = run_plan(&resolved.roadmap, resolved.start, resolved.goal, &config)?;
        paths.push(RenderPath {
            label: format!("{} (cost {:.3})", algorithm, outcome.breakdown.total_cost),
            vertices: outcome.path,
            style: PathStyle::for_algorithm(algorithm),
        });
    }
    let options = RenderOptions {
        width_px: args.width as f64,
        show_roadmap: args.show_roadmap,
        legend: true,
    };
    let svg = render_svg(
        resolved.world.as_ref(),
        &resolved.roadmap,
        &paths,
        Some(resolved.start),
        Some(resolved.goal),
        &options,
    )?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &svg)?;
            println!("wrote {}", path.display());
        }
        None => print!("{svg}"),
    }
    Ok(0)
}
