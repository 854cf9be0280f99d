//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Criteria:
//! 1. bound satisfaction over the fixed corpus plus 200 seeded random
//!    3-connected cubic graphs (n in 4..=14), every edge pair, 25 weightings;
//! 2. oracle sandwich (bound <= engine weight <= brute-force optimum) on the
//!    same instances up to order 14;
//! 3. printed-constant reproduction;
//! 4. optimal exponent root;
//! 5. inequality grid property;
//! 6. Eulerian subgraphs on 50 seeded 3-edge-connected graphs;
//! 7. branch coverage of the default verify run;
//! 8. byte-identical verify reports under a fixed seed.

use std::collections::BTreeSet;

use circum_core::bounds::{self, WeightRule};
use circum_core::corpus;
use circum_core::cuts;
use circum_core::error::Error;
use circum_core::eulerian;
use circum_core::generate::random_cubic_3connected;
use circum_core::graph::{EdgeId, MultiGraph, VertexId, WeightMap};
use circum_core::longcycle::{long_cycle, meets};
use circum_core::oracle;
use circum_core::surgery::Window;
use circum_core::verify::{self, VerifyConfig};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORACLE_NMAX: usize = 14;

fn all_pairs(g: &MultiGraph) -> Vec<(EdgeId, EdgeId)> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            out.push((edges[i], edges[j]));
        }
    }
    out
}

/// The 25 weightings per graph: all-zero, one heavy vertex, and 23 seeded
/// uniform draws from {0..10}.
fn weightings(g: &MultiGraph, seed: u64) -> Vec<WeightMap> {
    let mut out = Vec::with_capacity(25);
    out.push(WeightMap::new());
    let mut heavy = WeightMap::new();
    if let Some(v) = g.vertices().last() {
        heavy.set(v, 10);
    }
    out.push(heavy);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..23 {
        let mut w = WeightMap::new();
        for v in g.vertices() {
            w.set(v, rng.random_range(0..=10));
        }
        out.push(w);
    }
    out
}

/// Criteria 1 and 2 on one graph; returns instances checked.
fn sweep_graph(tag: &str, g: &MultiGraph, seed: u64) -> Result<usize, String> {
    let pairs = all_pairs(g);
    let mut count = 0;
    for (wi, w) in weightings(g, seed).into_iter().enumerate() {
        for &(e, f) in &pairs {
            count += 1;
            let r = long_cycle(g, &w, e, f).map_err(|err| match err {
                Error::InternalBoundMiss(d) => format!("{tag}/w{wi}: bound miss: {d}"),
                other => format!("{tag}/w{wi} ({e:?},{f:?}): {other}"),
            })?;
            r.cycle
                .validate(g)
                .map_err(|err| format!("{tag}/w{wi}: invalid cycle: {err}"))?;
            if !r.cycle.contains_edge(e) || !r.cycle.contains_edge(f) {
                return Err(format!("{tag}/w{wi}: cycle misses a prescribed edge"));
            }
            if !meets(r.weight, r.bound) {
                return Err(format!(
                    "{tag}/w{wi}: weight {} < bound {}",
                    r.weight, r.bound
                ));
            }
            if g.order() <= ORACLE_NMAX {
                let best = oracle::max_cycle(g, &w, Some(e), Some(f), None)
                    .map_err(|err| format!("{tag}/w{wi}: oracle: {err}"))?
                    .ok_or_else(|| format!("{tag}/w{wi}: oracle found no cycle"))?;
                if r.weight > best.weight {
                    return Err(format!(
                        "{tag}/w{wi}: engine weight {} above optimum {}",
                        r.weight, best.weight
                    ));
                }
            }
        }
    }
    Ok(count)
}

fn random_graph_spec(i: usize) -> (usize, u64) {
    let sizes = [4, 6, 8, 10, 12, 14];
    (sizes[i % sizes.len()], i as u64)
}

fn run_sweep(which: &str, indices: impl Iterator<Item = usize>) {
    let mut instances = 0;
    for i in indices {
        let (n, seed) = random_graph_spec(i);
        let g = random_cubic_3connected(n, seed).expect("generator failed");
        match sweep_graph(&format!("random{i}/n{n}"), &g, 0xACCE97 + i as u64) {
            Ok(c) => instances += c,
            Err(msg) => {
                println!("criteria 1+2 ({which}): FAIL — {msg}");
                panic!("{msg}");
            }
        }
    }
    println!(
        "criteria 1+2 ({which}): PASS — {instances} instances bound-checked and oracle-sandwiched"
    );
}

#[test]
fn criterion_1_2_fixed_corpus() {
    let mut instances = 0;
    for (name, g) in corpus::all_named() {
        match sweep_graph(name, &g, 0xF1BED) {
            Ok(c) => instances += c,
            Err(msg) => {
                println!("criteria 1+2 (fixed corpus): FAIL — {msg}");
                panic!("{msg}");
            }
        }
    }
    println!("criteria 1+2 (fixed corpus): PASS — {instances} instances");
}

#[test]
fn criterion_1_2_random_graphs_part_a() {
    run_sweep("random part a", (0..200).filter(|i| i % 3 == 0));
}

#[test]
fn criterion_1_2_random_graphs_part_b() {
    run_sweep("random part b", (0..200).filter(|i| i % 3 == 1));
}

#[test]
fn criterion_1_2_random_graphs_part_c() {
    run_sweep("random part c", (0..200).filter(|i| i % 3 == 2));
}

#[test]
fn criterion_3_printed_constants() {
    let rep = bounds::constants_report();
    let close = |actual: f64, printed: f64, decimals: i32| -> Result<(), String> {
        let tol = (0.5 * 10f64.powi(-decimals)).max(0.01 * printed.abs());
        if (actual - printed).abs() <= tol {
            Ok(())
        } else {
            Err(format!("computed {actual} vs printed {printed}"))
        }
    };
    let checks: Vec<(&str, f64, f64, i32)> = vec![
        ("c", bounds::c(), 0.922, 3),
        ("alpha", bounds::alpha(), 1.983, 3),
        (
            "rule-i margin",
            bounds::rule_margin(WeightRule::I, &[8.956, 1.036, 1.0]).unwrap(),
            2.918e-5,
            8,
        ),
        (
            "rule-iii margin",
            bounds::rule_margin(WeightRule::Iii, &[8.884, 1.0]).unwrap(),
            0.0018,
            4,
        ),
        (
            "rule-iv margin",
            bounds::rule_margin(WeightRule::Iv, &[2.072, 1.036, 1.0, 1.0, 5.884]).unwrap(),
            0.0275,
            4,
        ),
        (
            "rule-v margin",
            bounds::rule_margin(WeightRule::V, &[1.0, 1.0, 1.0, 1.0]).unwrap(),
            0.128,
            3,
        ),
        ("split f1 spot", rep["adj_case1_f1"], 0.00775, 5),
        ("split x2-big spot", rep["adj_case1_x2big"], 0.134, 3),
        ("split x2-mid spot", rep["adj_case1_x2mid"], 0.175, 3),
        ("split x5-small spot", rep["adj_case1_x5small"], 0.04, 2),
        ("split x5-big spot", rep["adj_case1_x5big"], 0.066, 3),
        ("merged balanced spot", rep["adj_case2_balanced"], 0.117, 3),
        ("twin-sides spot", rep["nonadj_twin_sides"], 0.376, 3),
        ("q1 final spot", rep["nonadj_q1_final"], 0.096, 3),
        ("q2 final spot", rep["nonadj_q2_final"], 0.109, 3),
        ("derivative threshold", rep["two_c_root"], 21.275, 3),
    ];
    let mut failures = Vec::new();
    for (name, actual, printed, decimals) in checks {
        if let Err(msg) = close(actual, printed, decimals) {
            failures.push(format!("{name}: {msg}"));
        }
    }
    if failures.is_empty() {
        println!("criterion 3: PASS — 16 printed constants reproduced");
    } else {
        println!("criterion 3: FAIL — {failures:?}");
        panic!("{failures:?}");
    }
}

#[test]
fn criterion_4_optimal_exponent() {
    let start = std::time::Instant::now();
    let root = bounds::optimal_exponent(1e-12).unwrap();
    let residual = bounds::exponent_residual(root).abs();
    let elapsed = start.elapsed();
    let ok = root > 0.800008 && residual < 1e-12 && elapsed.as_secs() < 1;
    if ok {
        println!("criterion 4: PASS — root {root:.9}, residual {residual:.2e}, {elapsed:?}");
    } else {
        println!("criterion 4: FAIL — root {root}, residual {residual}, {elapsed:?}");
        panic!("optimal exponent failed");
    }
}

#[test]
fn criterion_5_grid_property() {
    let mut total_checked = 0u64;
    let mut failures = 0u64;
    for rule in WeightRule::all() {
        match rule.arity() {
            2 => {
                for x in 0..=50u64 {
                    for y in 0..=50 {
                        if let Ok(m) = bounds::rule_margin(rule, &[x as f64, y as f64]) {
                            total_checked += 1;
                            if m < -bounds::CONCLUSION_SLACK {
                                failures += 1;
                            }
                        }
                    }
                }
            }
            3 => {
                for x in 0..=50u64 {
                    for y in 0..=50 {
                        for z in 0..=50 {
                            if let Ok(m) =
                                bounds::rule_margin(rule, &[x as f64, y as f64, z as f64])
                            {
                                total_checked += 1;
                                if m < -bounds::CONCLUSION_SLACK {
                                    failures += 1;
                                }
                            }
                        }
                    }
                }
            }
            arity => {
                let mut rng = ChaCha8Rng::seed_from_u64(5);
                let mut accepted = 0u64;
                let mut draws = 0u64;
                while accepted < 100_000 && draws < 50_000_000 {
                    draws += 1;
                    let params: Vec<f64> = (0..arity)
                        .map(|_| rng.random_range(0..=50u64) as f64)
                        .collect();
                    if let Ok(m) = bounds::rule_margin(rule, &params) {
                        accepted += 1;
                        total_checked += 1;
                        if m < -bounds::CONCLUSION_SLACK {
                            failures += 1;
                        }
                    }
                }
                assert!(
                    accepted >= 100_000,
                    "rule {} produced only {accepted} hypothesis-true samples",
                    rule.name()
                );
            }
        }
    }
    if failures == 0 {
        println!("criterion 5: PASS — {total_checked} grid points, zero conclusion failures");
    } else {
        println!("criterion 5: FAIL — {failures} conclusion failures");
        panic!("grid property failed");
    }
}

/// A 3-edge-connected test input: a random cubic 3-connected graph with
/// 1..=3 random connected subsets contracted.
fn contracted_instance(seed: u64) -> (MultiGraph, WeightMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 6 + 2 * rng.random_range(0..=3);
    let g = random_cubic_3connected(n, rng.random()).unwrap();
    let mut win = Window::new(&g);
    let rounds = rng.random_range(1..=3);
    for _ in 0..rounds {
        let vs: Vec<VertexId> = win.graph().vertices().collect();
        let start = vs[rng.random_range(0..vs.len())];
        let mut set: BTreeSet<VertexId> = [start].into_iter().collect();
        let mut frontier = vec![start];
        let want = rng.random_range(2..=3);
        while set.len() < want {
            let Some(&at) = frontier.last() else { break };
            let nbs: Vec<VertexId> = win
                .graph()
                .incident(at)
                .iter()
                .map(|&(_, w)| w)
                .filter(|v| !set.contains(v))
                .collect();
            if nbs.is_empty() {
                frontier.pop();
                continue;
            }
            let next = nbs[rng.random_range(0..nbs.len())];
            set.insert(next);
            frontier.push(next);
        }
        if set.len() >= 2 && win.graph().order() - set.len() >= 2 {
            win.contract(&[set]).unwrap();
        }
    }
    let h = win.graph().clone();
    let mut w = WeightMap::new();
    for v in h.vertices() {
        w.set(v, rng.random_range(0..=10));
    }
    (h, w)
}

#[test]
fn criterion_6_eulerian_subgraphs() {
    let mut checked = 0;
    for seed in 0..50u64 {
        let (g, w) = contracted_instance(900 + seed);
        assert!(g.order() <= 12, "instance too large");
        assert!(
            cuts::edge_connectivity_at_least(&g, 3),
            "contraction lost 3-edge-connectivity"
        );
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let e = edges[seed as usize % edges.len()];
        let f = edges
            .iter()
            .copied()
            .find(|&d| d != e)
            .expect("graph has at least two edges");
        for chosen in [None, Some(f)] {
            let r = match eulerian::eulerian_subgraph(&g, &w, e, chosen) {
                Ok(r) => r,
                Err(err) => {
                    println!("criterion 6: FAIL — seed {seed}: {err}");
                    panic!("{err}");
                }
            };
            // Independent re-checks of the subgraph properties.
            assert!(r.cubic.is_cubic() && cuts::is_3_connected(&r.cubic));
            let mut deg: std::collections::BTreeMap<VertexId, usize> = Default::default();
            for &d in &r.edges {
                let (a, b) = g.endpoints(d).unwrap();
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            assert!(deg.values().all(|d| d % 2 == 0), "odd degree in subgraph");
            assert!(r.edges.contains(&e));
            if let Some(f) = chosen {
                assert!(r.edges.contains(&f));
            }
            let total = w.total(&g) as f64;
            let want = match chosen {
                None => total.powf(0.8),
                Some(_) => {
                    // The partner may come out adjacent in the cubified
                    // graph, in which case the stronger bound applies; the
                    // criterion asks for at least the weaker one.
                    bounds::c() * total.powf(0.8)
                }
            };
            assert!(
                r.weight as f64 + 1e-9 >= want,
                "seed {seed}: weight {} below {want}",
                r.weight
            );
            checked += 1;
        }
    }
    println!("criterion 6: PASS — {checked} Eulerian instances (both forms) verified");
}

const REQUIRED_BRANCHES: [&str; 21] = [
    "Base",
    "ZeroWeight",
    "AdjCutReduction",
    "AdjTriangleReduction",
    "AdjSidesUnique",
    "AdjSidesDisjoint",
    "AdjSidesNonadjacent",
    "AdjCaseSplit",
    "AdjCasePentagon",
    "AdjCaseMerged",
    "NonadjTwoCutReduction",
    "NonadjCutReduction",
    "NonadjSeparatingReduction",
    "NonadjNeighborReduction",
    "NonadjSidesDisjoint",
    "NonadjCrossEquality",
    "NonadjPairedSides",
    "NonadjTwinSides",
    "NonadjQ0",
    "NonadjQ1",
    "NonadjQ2",
];

#[test]
fn criterion_7_branch_coverage() {
    let report = verify::run(&VerifyConfig::default()).unwrap();
    assert!(report.passed(), "verify failures: {:?}", report.failures);
    let missing: Vec<&str> = REQUIRED_BRANCHES
        .iter()
        .copied()
        .filter(|b| !report.branch_histogram.contains_key(*b))
        .collect();
    if missing.is_empty() {
        println!(
            "criterion 7: PASS — all {} required branches fired over {} instances",
            REQUIRED_BRANCHES.len(),
            report.instances
        );
    } else {
        println!("criterion 7: FAIL — missing branches {missing:?}");
        panic!("missing branches: {missing:?}");
    }
}

#[test]
fn criterion_8_deterministic_reports() {
    let cfg = VerifyConfig {
        trials: 40,
        nmax: 10,
        seed: 20240817,
        oracle_nmax: 12,
    };
    let a = verify::run(&cfg).unwrap().to_json();
    let b = verify::run(&cfg).unwrap().to_json();
    if a == b {
        println!(
            "criterion 8: PASS — verify reports byte-identical ({} bytes)",
            a.len()
        );
    } else {
        println!("criterion 8: FAIL — reports differ");
        panic!("reports differ");
    }
}
