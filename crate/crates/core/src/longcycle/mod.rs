//! The long-cycle engine: a recursive construction that, for a 2-connected
//! cubic multigraph with non-negative integer vertex weights and two
//! prescribed edges (every 2-edge cut separating them), returns a cycle
//! through both edges with weight at least `w(G)^r` when the edges are
//! adjacent and `c·w(G)^r` otherwise, together with a derivation trace.
//!
//! The recursion reduces the graph by cut-based surgeries, solves smaller
//! instances, and splices the recursive cycles back together; every splice's
//! weight gain is justified by one of the [`crate::bounds`] inequalities.

mod adjacent;
mod nonadjacent;

/// Re-verify at every recursion frame that each maximal side detaches
/// 3-connectedly (contract it, suppress its anchor, check connectivity).
pub(crate) const DETACH_CHECKS: bool = true;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::{self, WEIGHT_TOLERANCE};
use crate::cuts;
use crate::cycle::Cycle;
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};
use crate::search;
use crate::surgery::{DerivationScript, LiftItem, Window};

/// Which of the two guarantees applies to a call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Adjacent,
    Nonadjacent,
}

impl BoundKind {
    pub fn bound(self, total_weight: u64) -> f64 {
        let b = bounds::pow_r(total_weight as f64);
        match self {
            BoundKind::Adjacent => b,
            BoundKind::Nonadjacent => bounds::c() * b,
        }
    }
}

/// Does the integer weight meet the floating-point bound (with tolerance)?
pub fn meets(weight: u64, bound: f64) -> bool {
    weight as f64 + WEIGHT_TOLERANCE >= bound
}

/// Branch labels for traces; the verification harness requires each of
/// these to fire at least once over its corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BranchId {
    Base,
    ZeroWeight,
    AdjCutReduction,
    AdjTriangleReduction,
    AdjSidesUnique,
    AdjSidesDisjoint,
    AdjSidesNonadjacent,
    AdjCaseSplit,
    AdjCasePentagon,
    AdjCaseMerged,
    AdjMergedOuterPair,
    AdjMergedInnerPair,
    NonadjTwoCutReduction,
    NonadjCutReduction,
    NonadjSeparatingReduction,
    NonadjNeighborReduction,
    NonadjSidesDisjoint,
    NonadjCrossEquality,
    NonadjPairedSides,
    NonadjTwinSides,
    NonadjQ0,
    NonadjQ1,
    NonadjQ2,
}

/// Candidate cycle names used by the case analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CandidateName {
    C12,
    C52,
    C54,
    C5,
    Cz,
    C1,
    C2,
    Cy,
    Cx,
    CxP,
    CxPP,
}

#[derive(Clone, Debug, Serialize)]
pub enum TraceNode {
    /// Root of one engine call.
    Call {
        order: usize,
        kind: BoundKind,
        total_weight: u64,
        bound: f64,
        weight: u64,
    },
    Branch {
        id: BranchId,
    },
    Reduction {
        id: BranchId,
        detail: String,
        script: DerivationScript,
    },
    Candidate {
        name: CandidateName,
        weight: u64,
        target: f64,
        met: bool,
        winner: bool,
        script: DerivationScript,
    },
    Crossing {
        piece_size: usize,
        gain: u64,
    },
    Relabel {
        desc: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub node: TraceNode,
    pub children: Vec<Trace>,
}

impl Trace {
    pub fn leaf(node: TraceNode) -> Trace {
        Trace {
            node,
            children: Vec::new(),
        }
    }

    /// All branch labels in the subtree, for coverage histograms.
    pub fn collect_labels(&self, out: &mut Vec<String>) {
        match &self.node {
            TraceNode::Branch { id } | TraceNode::Reduction { id, .. } => {
                out.push(format!("{id:?}"));
            }
            TraceNode::Candidate { name, winner, .. } => {
                out.push(format!(
                    "cand:{name:?}{}",
                    if *winner { ":win" } else { "" }
                ));
            }
            _ => {}
        }
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    /// Largest child-call order under each call, for the descent invariant.
    pub fn check_strict_descent(&self) -> std::result::Result<(), String> {
        fn walk(t: &Trace, enclosing: Option<usize>) -> std::result::Result<(), String> {
            let next = match &t.node {
                TraceNode::Call { order, .. } => {
                    if let Some(parent) = enclosing {
                        if *order >= parent {
                            return Err(format!("call on {order} vertices under call on {parent}"));
                        }
                    }
                    Some(*order)
                }
                _ => enclosing,
            };
            for c in &t.children {
                walk(c, next)?;
            }
            Ok(())
        }
        walk(self, None)
    }
}

/// Result of one engine call: the cycle, its weight under the *caller's*
/// weight map, and the guaranteed bound it satisfies.
#[derive(Clone, Debug)]
pub struct CycleResult {
    pub cycle: Cycle,
    pub weight: u64,
    pub bound: f64,
    pub kind: BoundKind,
    pub trace: Trace,
}

/// Zero out the weights of all endpoints of `e` and `f`; returns the new
/// map and the weight removed (the shared endpoint counted once).
pub fn zero_terminal_weights(
    g: &MultiGraph,
    w: &WeightMap,
    e: EdgeId,
    f: EdgeId,
) -> Result<(WeightMap, u64)> {
    let terminals = g.vertices_of_edges(&[e, f])?;
    let removed = w.of_set(&terminals);
    let mut out = w.clone();
    for v in terminals {
        out.set(v, 0);
    }
    Ok((out, removed))
}

const MAX_WEIGHT: u64 = 1 << 31;

fn validate_input(g: &MultiGraph, w: &WeightMap, e: EdgeId, f: EdgeId) -> Result<()> {
    if e == f {
        return Err(Error::PreconditionViolated(
            "prescribed edges must be distinct".into(),
        ));
    }
    g.endpoints(e)?;
    g.endpoints(f)?;
    if !g.is_cubic() {
        return Err(Error::PreconditionViolated("graph must be cubic".into()));
    }
    if !cuts::is_2_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if !cuts::every_2_cut_separates(g, e, f) {
        return Err(Error::PreconditionViolated(
            "a 2-edge cut fails to separate the prescribed edges".into(),
        ));
    }
    for v in g.vertices() {
        if w.get(v) >= MAX_WEIGHT {
            return Err(Error::PreconditionViolated(
                "vertex weights must stay below 2^31".into(),
            ));
        }
    }
    Ok(())
}

/// The guaranteed long cycle. The returned weight is measured under the
/// given map `w` and satisfies `weight + 1e-9 >= bound`.
pub fn long_cycle(g: &MultiGraph, w: &WeightMap, e: EdgeId, f: EdgeId) -> Result<CycleResult> {
    long_cycle_inner(g, w, e, f, false)
}

/// Like [`long_cycle`], but the top call evaluates every case candidate
/// instead of stopping at the first one meeting the bound (the selected
/// winner is unchanged). Recursive calls stay lazy. Intended for coverage
/// analysis of the candidate table.
pub fn long_cycle_exhaustive(
    g: &MultiGraph,
    w: &WeightMap,
    e: EdgeId,
    f: EdgeId,
) -> Result<CycleResult> {
    long_cycle_inner(g, w, e, f, true)
}

fn long_cycle_inner(
    g: &MultiGraph,
    w: &WeightMap,
    e: EdgeId,
    f: EdgeId,
    exhaustive: bool,
) -> Result<CycleResult> {
    validate_input(g, w, e, f)?;
    let total = w.total(g);
    let kind = if g.edges_adjacent(e, f)? {
        BoundKind::Adjacent
    } else {
        BoundKind::Nonadjacent
    };
    let bound = kind.bound(total);

    // Base object: two vertices joined by three parallel edges.
    if g.order() == 2 {
        let cycle = Cycle::from_edge_list(g, vec![e, f])?;
        let weight = cycle.weight(w);
        ensure_internal!(meets(weight, bound), "base cycle misses its bound");
        return Ok(CycleResult {
            cycle,
            weight,
            bound,
            kind,
            trace: Trace {
                node: TraceNode::Call {
                    order: 2,
                    kind,
                    total_weight: total,
                    bound,
                    weight,
                },
                children: vec![Trace::leaf(TraceNode::Branch { id: BranchId::Base })],
            },
        });
    }

    let (zeroed, removed) = zero_terminal_weights(g, w, e, f)?;
    let frame_total = total - removed;

    let (cycle, children) = if frame_total == 0 {
        // All weight sits on the terminals: any cycle through both edges is
        // already optimal for the bound.
        let cycle = search::cycle_through_two_edges(g, e, f)?;
        (
            cycle,
            vec![Trace::leaf(TraceNode::Branch {
                id: BranchId::ZeroWeight,
            })],
        )
    } else {
        let frame = Frame {
            g,
            w: &zeroed,
            e,
            f,
            target: kind.bound(frame_total),
            exhaustive,
        };
        match kind {
            BoundKind::Adjacent => adjacent::adjacent_case(&frame)?,
            BoundKind::Nonadjacent => nonadjacent::nonadjacent_case(&frame)?,
        }
    };

    cycle.validate(g)?;
    ensure_internal!(
        cycle.contains_edge(e) && cycle.contains_edge(f),
        "result cycle lost a prescribed edge"
    );
    let weight = cycle.weight(w);
    if !meets(weight, bound) {
        return Err(Error::InternalBoundMiss(format!(
            "order {} weight {} bound {}",
            g.order(),
            weight,
            bound
        )));
    }
    Ok(CycleResult {
        cycle,
        weight,
        bound,
        kind,
        trace: Trace {
            node: TraceNode::Call {
                order: g.order(),
                kind,
                total_weight: total,
                bound,
                weight,
            },
            children,
        },
    })
}

/// Shared state for one case analysis: the graph, the frame (zeroed)
/// weights, the prescribed edges and the frame bound to beat.
pub(crate) struct Frame<'a> {
    pub g: &'a MultiGraph,
    pub w: &'a WeightMap,
    pub e: EdgeId,
    pub f: EdgeId,
    pub target: f64,
    /// Evaluate every candidate in a stage before returning the winner.
    pub exhaustive: bool,
}

/// Replacement route for one special piece visit: traversed from `entry` to
/// `exit`, the visit expands to `items` (reversed for the other direction).
pub(crate) struct RouteTemplate {
    pub entry: EdgeId,
    pub exit: EdgeId,
    pub items: Vec<LiftItem>,
}

/// All templates for one piece, matched by exact base vertex set.
pub(crate) struct SpecialRoute {
    pub piece: BTreeSet<VertexId>,
    pub templates: Vec<RouteTemplate>,
}

fn reverse_items(items: &[LiftItem]) -> Vec<LiftItem> {
    items
        .iter()
        .rev()
        .map(|it| match it {
            LiftItem::Edge(e) => LiftItem::Edge(*e),
            LiftItem::Visit { piece, entry, exit } => LiftItem::Visit {
                piece: piece.clone(),
                entry: *exit,
                exit: *entry,
            },
        })
        .collect()
}

/// Expand special visits using their route templates.
fn expand_specials(items: Vec<LiftItem>, specials: &[SpecialRoute]) -> Result<Vec<LiftItem>> {
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        match &item {
            LiftItem::Visit { piece, entry, exit } => {
                if let Some(sp) = specials.iter().find(|s| s.piece == *piece) {
                    let fwd = sp
                        .templates
                        .iter()
                        .find(|t| (t.entry, t.exit) == (*entry, *exit));
                    let bwd = sp
                        .templates
                        .iter()
                        .find(|t| (t.entry, t.exit) == (*exit, *entry));
                    match (fwd, bwd) {
                        (Some(t), _) => out.extend(t.items.iter().cloned()),
                        (None, Some(t)) => out.extend(reverse_items(&t.items)),
                        (None, None) => {
                            return Err(Error::Internal(format!(
                                "no route template for piece visit ({entry:?},{exit:?})"
                            )))
                        }
                    }
                } else {
                    out.push(item);
                }
            }
            LiftItem::Edge(_) => out.push(item),
        }
    }
    Ok(out)
}

/// Complete one generic piece visit by recursing on the piece with the
/// outside contracted to a weight-0 vertex; returns the inside path from the
/// entry edge's endpoint to the exit edge's endpoint.
fn complete_crossing(
    frame: &Frame,
    piece: &BTreeSet<VertexId>,
    entry: EdgeId,
    exit: EdgeId,
) -> Result<(Vec<EdgeId>, Option<Trace>)> {
    let g = frame.g;
    let inside = |edge: EdgeId| -> Result<VertexId> {
        let (a, b) = g.endpoints(edge)?;
        match (piece.contains(&a), piece.contains(&b)) {
            (true, false) => Ok(a),
            (false, true) => Ok(b),
            _ => Err(Error::Internal(format!(
                "{edge:?} is not a boundary edge of the piece"
            ))),
        }
    };
    let p1 = inside(entry)?;
    let p2 = inside(exit)?;
    if p1 == p2 {
        return Ok((Vec::new(), None));
    }
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !piece.contains(v)).collect();
    ensure_internal!(!outside.is_empty(), "piece visit covers the whole graph");
    let mut win = Window::new(g);
    win.contract(&[outside])?;
    ensure_internal!(
        win.graph().order() < g.order(),
        "crossing did not shrink the graph"
    );
    let sub = long_cycle(win.graph(), &win.derived_weights(frame.w), entry, exit)?;
    // Path across the piece: the recursive cycle minus the two boundary
    // edges (which meet at the contracted outside vertex).
    let mut remaining: BTreeSet<EdgeId> = sub.cycle.edge_set();
    ensure_internal!(
        remaining.remove(&entry) && remaining.remove(&exit),
        "crossing cycle must use both boundary edges"
    );
    let mut path = Vec::with_capacity(remaining.len());
    let mut at = p1;
    while at != p2 {
        let next = g
            .incident_edges(at)
            .find(|d| remaining.contains(d))
            .ok_or_else(|| Error::Internal("crossing path broke".into()))?;
        remaining.remove(&next);
        path.push(next);
        at = g.other_endpoint(next, at)?;
    }
    ensure_internal!(remaining.is_empty(), "crossing cycle was not a single path");
    let gain = sub.weight;
    let trace = Trace {
        node: TraceNode::Crossing {
            piece_size: piece.len(),
            gain,
        },
        children: vec![sub.trace],
    };
    Ok((path, Some(trace)))
}

/// Turn a routed lift into an actual base-graph cycle, completing every
/// piece visit (special templates first, then recursive crossings).
pub(crate) fn complete_lift(
    frame: &Frame,
    items: Vec<LiftItem>,
    specials: &[SpecialRoute],
) -> Result<(Cycle, Vec<Trace>)> {
    let expanded = expand_specials(items, specials)?;
    let mut edges = Vec::with_capacity(expanded.len());
    let mut traces = Vec::new();
    for item in expanded {
        match item {
            LiftItem::Edge(e) => edges.push(e),
            LiftItem::Visit { piece, entry, exit } => {
                let (path, trace) = complete_crossing(frame, &piece, entry, exit)?;
                edges.extend(path);
                traces.extend(trace);
            }
        }
    }
    let cycle = Cycle::from_edge_list(frame.g, edges)?;
    Ok((cycle, traces))
}

/// Evaluate one candidate: recurse on the window's derived graph with the
/// prescribed edge pair, lift, complete, and compare against the frame
/// target. `Ok(None)` means the candidate completed but missed the bound.
pub(crate) fn evaluate_candidate(
    frame: &Frame,
    name: CandidateName,
    window: &Window,
    d1: EdgeId,
    d2: EdgeId,
    specials: &[SpecialRoute],
) -> Result<(Option<Cycle>, Trace)> {
    ensure_internal!(
        window.graph().order() < frame.g.order(),
        "candidate graph did not shrink ({} vs {})",
        window.graph().order(),
        frame.g.order()
    );
    let sub = long_cycle(window.graph(), &window.derived_weights(frame.w), d1, d2)?;
    let items = window.route_cycle(&sub.cycle)?;
    let (cycle, crossing_traces) = complete_lift(frame, items, specials)?;
    let weight = cycle.weight(frame.w);
    let met = meets(weight, frame.target);
    let mut children = vec![sub.trace];
    children.extend(crossing_traces);
    let trace = Trace {
        node: TraceNode::Candidate {
            name,
            weight,
            target: frame.target,
            met,
            winner: false,
            script: window.script().clone(),
        },
        children,
    };
    Ok((met.then_some(cycle), trace))
}

/// Mark the candidate node of `trace` as the selected winner.
pub(crate) fn mark_winner(trace: &mut Trace) {
    if let TraceNode::Candidate { winner, .. } = &mut trace.node {
        *winner = true;
    }
}

/// Like [`evaluate_candidate`] for reductions whose success the theory
/// guarantees outright: a miss is an internal error.
pub(crate) fn force_candidate(
    frame: &Frame,
    id: BranchId,
    detail: &str,
    window: &Window,
    d1: EdgeId,
    d2: EdgeId,
    specials: &[SpecialRoute],
) -> Result<(Cycle, Vec<Trace>)> {
    ensure_internal!(
        window.graph().order() < frame.g.order(),
        "reduction graph did not shrink"
    );
    let sub = long_cycle(window.graph(), &window.derived_weights(frame.w), d1, d2)?;
    let items = window.route_cycle(&sub.cycle)?;
    let (cycle, crossing_traces) = complete_lift(frame, items, specials)?;
    let weight = cycle.weight(frame.w);
    if !meets(weight, frame.target) {
        return Err(Error::InternalBoundMiss(format!(
            "{id:?} ({detail}) weight {weight} target {}",
            frame.target
        )));
    }
    let mut children = vec![sub.trace];
    children.extend(crossing_traces);
    let trace = Trace {
        node: TraceNode::Reduction {
            id,
            detail: detail.to_string(),
            script: window.script().clone(),
        },
        children,
    };
    Ok((cycle, vec![trace]))
}

/// Edge of `w`'s derived graph realizing the base edge `b`.
pub(crate) fn containing(w: &Window, b: EdgeId) -> Result<EdgeId> {
    w.edge_containing(b)
        .ok_or_else(|| Error::Internal(format!("base edge {b:?} vanished from the derivation")))
}

/// Complete a lifted cycle: every piece visit is filled in by a recursive
/// engine call on the piece (outside contracted to a weight-0 vertex),
/// gaining at least `w(piece)^r` per visited piece. This is the public face
/// of the merge step the case analyses use internally.
pub fn complete_lifted_cycle(
    g: &MultiGraph,
    w: &WeightMap,
    items: Vec<LiftItem>,
) -> Result<(Cycle, u64)> {
    let dummy_target = 0.0;
    // The frame's prescribed edges are irrelevant for crossing completion.
    let first = g
        .edge_ids()
        .next()
        .ok_or_else(|| Error::Internal("empty graph".into()))?;
    let frame = Frame {
        g,
        w,
        e: first,
        f: first,
        target: dummy_target,
        exhaustive: false,
    };
    let (cycle, _) = complete_lift(&frame, items, &[])?;
    let weight = cycle.weight(w);
    Ok((cycle, weight))
}
