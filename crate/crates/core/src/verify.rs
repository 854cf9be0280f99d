//! End-to-end verification: seeded random instances plus the adversarial
//! corpus, every result validated against the cycle invariants and (within
//! budget) the brute-force oracle, with a branch-coverage histogram.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus;
use crate::error::Result;
use crate::generate::random_cubic_3connected;
use crate::graph::{EdgeId, MultiGraph, WeightMap};
use crate::longcycle::{long_cycle, meets};
use crate::oracle;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub nmax: usize,
    pub seed: u64,
    /// Oracle cross-checks run only on graphs up to this order.
    pub oracle_nmax: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 100,
            nmax: 12,
            seed: 7,
            oracle_nmax: 14,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub nmax: usize,
    pub seed: u64,
    pub instances: usize,
    pub oracle_checked: usize,
    pub failures: Vec<String>,
    pub branch_histogram: BTreeMap<String, u64>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Distinct edge pairs stratified by distance: one adjacent pair, one pair
/// joined by a third edge, and one pair farther apart (when they exist).
fn stratified_pairs(g: &MultiGraph) -> Vec<(EdgeId, EdgeId)> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut adjacent = None;
    let mut bridged = None;
    let mut far = None;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if g.edges_adjacent(e, f).unwrap() {
                adjacent.get_or_insert((e, f));
                continue;
            }
            let ve = g.vertices_of_edges(&[e]).unwrap();
            let vf = g.vertices_of_edges(&[f]).unwrap();
            let linked = g.edges().any(|(_, u, v)| {
                (ve.contains(&u) && vf.contains(&v)) || (ve.contains(&v) && vf.contains(&u))
            });
            if linked {
                bridged.get_or_insert((e, f));
            } else {
                far.get_or_insert((e, f));
            }
            if adjacent.is_some() && bridged.is_some() && far.is_some() {
                break;
            }
        }
    }
    [adjacent, bridged, far].into_iter().flatten().collect()
}

fn weightings(g: &MultiGraph, rng: &mut ChaCha8Rng) -> Vec<(&'static str, WeightMap)> {
    let mut random = WeightMap::new();
    for v in g.vertices() {
        random.set(v, rng.random_range(0..=10));
    }
    let zero = WeightMap::new();
    let mut heavy = WeightMap::new();
    if let Some(v) = g.vertices().last() {
        heavy.set(v, 100);
    }
    vec![("random", random), ("zero", zero), ("heavy", heavy)]
}

struct Runner {
    report: VerifyReport,
    oracle_nmax: usize,
}

impl Runner {
    fn check_instance(&mut self, tag: &str, g: &MultiGraph, w: &WeightMap, e: EdgeId, f: EdgeId) {
        self.report.instances += 1;
        let r = match long_cycle(g, w, e, f) {
            Ok(r) => r,
            Err(err) => {
                self.report
                    .failures
                    .push(format!("{tag}: engine error: {err}"));
                return;
            }
        };
        let mut labels = Vec::new();
        r.trace.collect_labels(&mut labels);
        for l in labels {
            *self.report.branch_histogram.entry(l).or_default() += 1;
        }
        if let Err(err) = r.cycle.validate(g) {
            self.report
                .failures
                .push(format!("{tag}: invalid cycle: {err}"));
            return;
        }
        if !r.cycle.contains_edge(e) || !r.cycle.contains_edge(f) {
            self.report
                .failures
                .push(format!("{tag}: cycle misses a prescribed edge"));
            return;
        }
        if r.cycle.weight(w) != r.weight {
            self.report.failures.push(format!("{tag}: weight mismatch"));
            return;
        }
        if !meets(r.weight, r.bound) {
            self.report.failures.push(format!(
                "{tag}: weight {} below bound {}",
                r.weight, r.bound
            ));
            return;
        }
        if let Err(msg) = r.trace.check_strict_descent() {
            self.report
                .failures
                .push(format!("{tag}: descent violation: {msg}"));
            return;
        }
        if g.order() <= self.oracle_nmax {
            self.report.oracle_checked += 1;
            match oracle::max_cycle(g, w, Some(e), Some(f), None) {
                Ok(Some(best)) => {
                    if best.weight < r.weight {
                        self.report.failures.push(format!(
                            "{tag}: engine weight {} exceeds oracle optimum {}",
                            r.weight, best.weight
                        ));
                    }
                }
                Ok(None) => {
                    self.report
                        .failures
                        .push(format!("{tag}: oracle found no cycle but the engine did"));
                }
                Err(err) => {
                    self.report
                        .failures
                        .push(format!("{tag}: oracle error: {err}"));
                }
            }
        }
    }
}

/// The adversarial corpus: named graphs plus instances crafted to reach
/// every case branch.
fn corpus_instances() -> Vec<(String, MultiGraph, WeightMap, EdgeId, EdgeId)> {
    let mut out: Vec<(String, MultiGraph, WeightMap, EdgeId, EdgeId)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, g) in corpus::all_named() {
        for (i, (e, f)) in stratified_pairs(&g).into_iter().enumerate() {
            for (wname, w) in weightings(&g, &mut rng) {
                out.push((format!("{name}/{i}/{wname}"), g.clone(), w, e, f));
            }
        }
    }
    // Terminal-triangle and terminal-cut reductions on the prism.
    let p = corpus::prism();
    let w1 = WeightMap::uniform(&p.graph, 1);
    out.push((
        "prism/triangle".into(),
        p.graph.clone(),
        w1.clone(),
        p.triangle_a_edges[0],
        p.triangle_a_edges[1],
    ));
    out.push((
        "prism/cut".into(),
        p.graph.clone(),
        w1,
        p.matching[0],
        p.triangle_a_edges[0],
    ));

    // Split-case instances across weight profiles; the named ones make the
    // corresponding candidate the selected winner.
    let fig = corpus::fig2_instance([1; 5]);
    let adj_pair = (fig.e, fig.f);
    let profiles: Vec<(&str, [u64; 5], u64)> = vec![
        ("c12", [0, 5, 1, 1, 1], 1),
        ("c52", [1, 1, 1, 1, 0], 0),
        ("stress", [2, 2, 2, 2, 2], 13),
        ("unit", [1, 1, 1, 1, 1], 1),
    ];
    for (name, xs, z) in profiles {
        let w = corpus::fig2_weights(&fig, xs, z);
        out.push((
            format!("fig2/{name}"),
            fig.graph.clone(),
            w,
            adj_pair.0,
            adj_pair.1,
        ));
    }
    let pent = corpus::pentagon_instance();
    out.push((
        "pentagon".into(),
        pent.graph.clone(),
        WeightMap::uniform(&pent.graph, 1),
        pent.e,
        pent.f,
    ));
    let f3 = corpus::fig3_instance(corpus::Fig3Sizes::default());
    let profiles3: Vec<(&str, [u64; 6])> = vec![
        ("unit", [1, 1, 1, 1, 1, 1]),
        ("c1", [0, 0, 0, 0, 0, 1]),
        ("c2", [1, 1, 0, 0, 0, 0]),
        ("cy", [1, 1, 1, 0, 0, 0]),
        ("cz", [1, 1, 1, 0, 1, 0]),
    ];
    for (name, p) in profiles3 {
        let w = corpus::fig3_weights(&f3, p[0], p[1], p[2], p[3], p[4], p[5]);
        out.push((format!("fig3/{name}"), f3.graph.clone(), w, f3.e, f3.f));
    }
    for (name, inst) in [
        ("paired", corpus::paired_sides_instance()),
        ("twin", corpus::twin_sides_instance()),
        ("q1", corpus::one_overlap_instance()),
        ("q2", corpus::two_overlap_instance()),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
        for (wname, w) in weightings(&inst.graph, &mut rng) {
            out.push((
                format!("{name}/{wname}"),
                inst.graph.clone(),
                w,
                inst.e,
                inst.f,
            ));
        }
    }
    let tb = corpus::two_blocks_bridged();
    out.push((
        "two-blocks".into(),
        tb.graph.clone(),
        WeightMap::uniform(&tb.graph, 2),
        tb.e_in_a,
        tb.f_in_b,
    ));
    out
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut runner = Runner {
        report: VerifyReport {
            trials: cfg.trials,
            nmax: cfg.nmax,
            seed: cfg.seed,
            instances: 0,
            oracle_checked: 0,
            failures: Vec::new(),
            branch_histogram: BTreeMap::new(),
        },
        oracle_nmax: cfg.oracle_nmax,
    };

    for (tag, g, w, e, f) in corpus_instances() {
        runner.check_instance(&tag, &g, &w, e, f);
    }

    let orders: Vec<usize> = (4..=cfg.nmax).step_by(2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let n = orders[rng.random_range(0..orders.len())];
        let g = random_cubic_3connected(n, rng.random())?;
        for (i, (e, f)) in stratified_pairs(&g).into_iter().enumerate() {
            for (wname, w) in weightings(&g, &mut rng) {
                runner.check_instance(&format!("trial{trial}/n{n}/{i}/{wname}"), &g, &w, e, f);
            }
        }
    }
    Ok(runner.report)
}
