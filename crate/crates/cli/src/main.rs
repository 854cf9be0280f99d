//! CLI for the cubic long-cycle engine.
//!
//! Exit codes: 0 success, 1 assertion or bound failure, 2 input error.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use circum_core::bounds::{self, WeightRule};
use circum_core::error::Error;
use circum_core::eulerian::eulerian_subgraph;
use circum_core::generate::random_cubic_3connected;
use circum_core::graph::{EdgeId, MultiGraph, WeightMap};
use circum_core::longcycle::long_cycle;
use circum_core::oracle;
use circum_core::verify::{self, VerifyConfig};
use circum_core::{io as gio, Result};

#[derive(Parser)]
#[command(
    name = "circum",
    about = "Long cycles through prescribed edges in weighted cubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a cycle through two prescribed edges meeting the weight bound.
    Longcycle {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        f: u32,
        #[arg(long)]
        json: bool,
        /// Write the derivation trace as JSON to this file.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Find a connected even-degree subgraph through one or two edges.
    Eulerian {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        f: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Exact maximum-weight cycle by brute force.
    Oracle {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        f: Option<u32>,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Generate a random 3-connected cubic graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Random vertex weights, e.g. "max:10" (default: unit weights).
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the randomized verification harness.
    Verify {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Report the numeric constants and the inequality grid checks.
    Bounds {
        #[arg(long, default_value_t = 50)]
        grid_max: u64,
        #[arg(long)]
        json: bool,
    },
}

fn load_graph(path: &str) -> Result<(MultiGraph, WeightMap)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?;
    gio::from_str(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_)
                | Error::UnknownEdge(_)
                | Error::UnknownVertex(_)
                | Error::PreconditionViolated(_)
                | Error::OddOrder(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Longcycle {
            graph,
            e,
            f,
            json,
            trace,
        } => {
            let (g, w) = load_graph(&graph)?;
            let r = long_cycle(&g, &w, EdgeId(e), EdgeId(f))?;
            if let Some(path) = trace {
                let t = serde_json::to_string_pretty(&r.trace)
                    .map_err(|e| Error::Internal(e.to_string()))?;
                fs::write(&path, t).map_err(|e| Error::Input(format!("{path}: {e}")))?;
            }
            if json {
                let edges: Vec<u32> = r.cycle.edges().iter().map(|d| d.0).collect();
                let out = serde_json::json!({
                    "weight": r.weight,
                    "bound": r.bound,
                    "kind": format!("{:?}", r.kind),
                    "cycle_edges": edges,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!(
                    "cycle of weight {} (bound {:.6}, {:?}) through {} edges:",
                    r.weight,
                    r.bound,
                    r.kind,
                    r.cycle.len()
                );
                let ids: Vec<String> = r.cycle.edges().iter().map(|d| d.0.to_string()).collect();
                println!("  {}", ids.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eulerian { graph, e, f, json } => {
            let (g, w) = load_graph(&graph)?;
            let r = eulerian_subgraph(&g, &w, EdgeId(e), f.map(EdgeId))?;
            let mut degrees: BTreeMap<u32, usize> = BTreeMap::new();
            for &d in &r.edges {
                let (a, b) = g.endpoints(d)?;
                *degrees.entry(a.0).or_default() += 1;
                *degrees.entry(b.0).or_default() += 1;
            }
            if json {
                let out = serde_json::json!({
                    "weight": r.weight,
                    "bound": r.bound,
                    "edges": r.edges.iter().map(|d| d.0).collect::<Vec<_>>(),
                    "degrees": degrees,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!(
                    "Eulerian subgraph: weight {} (bound {:.6}), {} edges, {} vertices",
                    r.weight,
                    r.bound,
                    r.edges.len(),
                    r.vertices.len()
                );
                let ids: Vec<String> = r.edges.iter().map(|d| d.0.to_string()).collect();
                println!("  edges: {}", ids.join(" "));
                let degs: Vec<String> = degrees.iter().map(|(v, d)| format!("{v}:{d}")).collect();
                println!("  degrees: {}", degs.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            graph,
            e,
            f,
            budget_ms,
        } => {
            let (g, w) = load_graph(&graph)?;
            if f.is_some() && e.is_none() {
                return Err(Error::Input("--f requires --e".into()));
            }
            let r = oracle::max_cycle(&g, &w, e.map(EdgeId), f.map(EdgeId), budget_ms)?;
            match r {
                Some(best) => {
                    let ids: Vec<String> =
                        best.cycle.edges().iter().map(|d| d.0.to_string()).collect();
                    println!("max cycle weight {}: {}", best.weight, ids.join(" "));
                }
                None => println!("no qualifying cycle"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            n,
            seed,
            weights,
            out,
        } => {
            let g = random_cubic_3connected(n, seed)?;
            let w = match weights.as_deref() {
                None => WeightMap::uniform(&g, 1),
                Some(spec) => {
                    let max: u64 = spec
                        .strip_prefix("max:")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Input(format!("bad --weights {spec:?}")))?;
                    use rand::Rng;
                    use rand_chacha::rand_core::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x77);
                    let mut w = WeightMap::new();
                    for v in g.vertices() {
                        w.set(v, rng.random_range(0..=max));
                    }
                    w
                }
            };
            let text = gio::to_text(&g, &w);
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Error::Input(format!("{path}: {e}")))?
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            trials,
            nmax,
            seed,
            json,
        } => {
            let cfg = VerifyConfig {
                trials,
                nmax,
                seed,
                ..VerifyConfig::default()
            };
            let start = std::time::Instant::now();
            let report = verify::run(&cfg)?;
            eprintln!("verify wall time: {:?}", start.elapsed());
            if json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "verify: {} instances, {} oracle-checked, {} failures",
                    report.instances,
                    report.oracle_checked,
                    report.failures.len()
                );
                for f in &report.failures {
                    println!("  FAIL {f}");
                }
                let mut labels: Vec<_> = report.branch_histogram.iter().collect();
                labels.sort();
                for (label, count) in labels {
                    println!("  {label}: {count}");
                }
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bounds { grid_max, json } => {
            let report = bounds::constants_report();
            let root = bounds::optimal_exponent(1e-12)?;
            let mut grid: BTreeMap<String, (u64, u64)> = BTreeMap::new();
            for rule in WeightRule::all() {
                let (checked, failures) = grid_check(rule, grid_max);
                grid.insert(rule.name().to_string(), (checked, failures));
            }
            if json {
                let out = serde_json::json!({
                    "constants": report,
                    "optimal_exponent": root,
                    "grid": grid.iter().map(|(k, (c, f))| {
                        (k.clone(), serde_json::json!({"checked": c, "failures": f}))
                    }).collect::<BTreeMap<_, _>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("constants:");
                for (name, value) in &report {
                    println!("  {name} = {value:.9}");
                }
                println!("optimal exponent root: {root:.9}");
                println!("grid checks (hypothesis-satisfying points, conclusion failures):");
                let mut bad = false;
                for (rule, (checked, failures)) in &grid {
                    println!("  rule {rule}: {checked} checked, {failures} failures");
                    bad |= *failures > 0;
                }
                if bad {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Exhaustive grid for low arity, seeded sampling for arity 4 and 5.
fn grid_check(rule: WeightRule, grid_max: u64) -> (u64, u64) {
    struct Tally {
        checked: u64,
        failures: u64,
    }
    impl Tally {
        fn eval(&mut self, rule: WeightRule, params: &[f64]) {
            if let Ok(m) = bounds::rule_margin(rule, params) {
                self.checked += 1;
                if m < -bounds::CONCLUSION_SLACK {
                    self.failures += 1;
                }
            }
        }
    }
    let mut t = Tally {
        checked: 0,
        failures: 0,
    };
    let m = grid_max;
    match rule.arity() {
        2 => {
            for x in 0..=m {
                for y in 0..=m {
                    t.eval(rule, &[x as f64, y as f64]);
                }
            }
        }
        3 => {
            for x in 0..=m {
                for y in 0..=m {
                    for z in 0..=m {
                        t.eval(rule, &[x as f64, y as f64, z as f64]);
                    }
                }
            }
        }
        arity => {
            use rand::Rng;
            use rand_chacha::rand_core::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
            let mut tries = 0u64;
            while t.checked < 100_000 && tries < 20_000_000 {
                tries += 1;
                let params: Vec<f64> = (0..arity).map(|_| rng.random_range(0..=m) as f64).collect();
                t.eval(rule, &params);
            }
        }
    }
    (t.checked, t.failures)
}
