//! Case analysis for nonadjacent prescribed edges.
//!
//! Four reductions may fire in order: a 2-edge cut splits the graph into
//! two halves solved independently; a nontrivial 3-edge cut through a
//! terminal edge contracts one side away; a 3-edge cut separating the
//! terminal edges yields two recursive families matched by their crossing
//! pairs; and an edge joining the two terminal edges is suppressed. After
//! that the eight maximal 3-boundary sides at the four terminal vertices
//! are computed, coincidences across the two terminal groups are resolved
//! (the paired- and twin-sides reductions), and the remaining analysis
//! branches on the number of cross-group coincidences (0, 1 or 2).

use std::collections::{BTreeMap, BTreeSet};

use crate::cuts::{self, CutSide};
use crate::cycle::Cycle;
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::surgery::Window;

use super::{
    containing, evaluate_candidate, force_candidate, meets, BranchId, CandidateName, Frame, Trace,
    TraceNode,
};

pub(crate) fn nonadjacent_case(frame: &Frame) -> Result<(Cycle, Vec<Trace>)> {
    if let Some(out) = two_cut_reduction(frame)? {
        return Ok(out);
    }
    ensure_internal!(
        cuts::is_3_connected(frame.g),
        "nonadjacent case requires 3-connectivity after the 2-cut reduction"
    );
    if let Some(out) = cut_through_terminal(frame)? {
        return Ok(out);
    }
    if let Some(out) = separating_cut_reduction(frame)? {
        return Ok(out);
    }
    if let Some(out) = common_neighbor_reduction(frame)? {
        return Ok(out);
    }
    main_analysis(frame)
}

/// Any 2-edge cut separates `e` from `f`: split into the two halves, each
/// closed by a fresh edge standing for the far side, and join the halves.
fn two_cut_reduction(frame: &Frame) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    let Some((c1, c2, _)) = cuts::any_2_edge_cut(g) else {
        return Ok(None);
    };
    ensure_internal!(
        c1 != frame.e && c1 != frame.f && c2 != frame.e && c2 != frame.f,
        "2-edge cut contains a prescribed edge"
    );
    let skip: BTreeSet<EdgeId> = [c1, c2].into_iter().collect();
    let (e1, _) = g.endpoints(frame.e)?;
    let (f1, _) = g.endpoints(frame.f)?;
    let side_a = g.component_avoiding(e1, &skip);
    ensure_internal!(
        !side_a.contains(&f1),
        "2-edge cut fails to separate the terminal edges"
    );
    let side_b = g.component_avoiding(f1, &skip);
    ensure_internal!(
        side_a.len() + side_b.len() == g.order(),
        "2-edge cut left more than two components"
    );

    let build_half = |side: &BTreeSet<VertexId>| -> Result<(MultiGraph, EdgeId)> {
        let fresh = EdgeId(g.next_edge_mark());
        let attach = |cut_edge: EdgeId| -> Result<VertexId> {
            let (a, b) = g.endpoints(cut_edge)?;
            Ok(if side.contains(&a) { a } else { b })
        };
        let (a1, a2) = (attach(c1)?, attach(c2)?);
        ensure_internal!(a1 != a2, "2-edge cut edges share an attachment");
        let edges = g
            .edges()
            .filter(|(_, u, v)| side.contains(u) && side.contains(v))
            .chain([(fresh, a1, a2)]);
        Ok((MultiGraph::from_parts(side.iter().copied(), edges)?, fresh))
    };
    let (ga, bridge_a) = build_half(&side_a)?;
    let (gb, bridge_b) = build_half(&side_b)?;
    let ra = super::long_cycle(&ga, frame.w, frame.e, bridge_a)?;
    let rb = super::long_cycle(&gb, frame.w, bridge_b, frame.f)?;
    let mut set: BTreeSet<EdgeId> = ra.cycle.edge_set();
    set.remove(&bridge_a);
    let mut setb = rb.cycle.edge_set();
    setb.remove(&bridge_b);
    set.extend(setb);
    set.extend([c1, c2]);
    let cycle = Cycle::from_edge_set(g, &set)?;
    let weight = cycle.weight(frame.w);
    if !meets(weight, frame.target) {
        return Err(Error::InternalBoundMiss(format!(
            "two-cut join weight {weight} target {}",
            frame.target
        )));
    }
    Ok(Some((
        cycle,
        vec![Trace {
            node: TraceNode::Reduction {
                id: BranchId::NonadjTwoCutReduction,
                detail: format!("cut ({c1:?},{c2:?})"),
                script: Default::default(),
            },
            children: vec![ra.trace, rb.trace],
        }],
    )))
}

/// A nontrivial 3-edge cut containing a terminal edge: contract the side
/// away from the other terminal edge and recurse on the rest.
fn cut_through_terminal(frame: &Frame) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    for (anchor, other) in [(frame.e, frame.f), (frame.f, frame.e)] {
        let Some(cut) = cuts::nontrivial_3cut_containing(g, anchor)? else {
            continue;
        };
        let side = if cut.cut_edges.contains(&other) {
            // Both terminal edges cross; either side works.
            cut.side.clone()
        } else {
            let (o1, _) = g.endpoints(other)?;
            if cut.side.contains(&o1) {
                g.vertices().filter(|v| !cut.side.contains(v)).collect()
            } else {
                cut.side.clone()
            }
        };
        let mut w = Window::new(g);
        w.contract(&[side])?;
        let detail = format!("cut {:?}", cut.cut_edges);
        let (cycle, traces) = force_candidate(
            frame,
            BranchId::NonadjCutReduction,
            &detail,
            &w,
            frame.e,
            frame.f,
            &[],
        )?;
        return Ok(Some((cycle, traces)));
    }
    Ok(None)
}

/// A 3-edge cut separating `e` from `f`: three recursive cycles on each
/// side must share a crossing pair by pigeonhole; glue the matching pair.
fn separating_cut_reduction(frame: &Frame) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    let Some(cut) = cuts::separating_3cut(g, frame.e, frame.f)? else {
        return Ok(None);
    };
    let cut_vec: Vec<EdgeId> = cut.cut_edges.iter().copied().collect();
    let (e1, _) = g.endpoints(frame.e)?;
    let side_e = if cut.side.contains(&e1) {
        cut.side.clone()
    } else {
        g.vertices()
            .filter(|v| !cut.side.contains(v))
            .collect::<BTreeSet<_>>()
    };
    let side_f: BTreeSet<VertexId> = g.vertices().filter(|v| !side_e.contains(v)).collect();

    let run = |contracted: &BTreeSet<VertexId>,
               d1_is_e: bool|
     -> Result<Vec<(BTreeSet<EdgeId>, super::CycleResult)>> {
        let mut w = Window::new(g);
        w.contract(std::slice::from_ref(contracted))?;
        let dw = w.derived_weights(frame.w);
        let mut out = Vec::new();
        for &s in &cut_vec {
            let r = if d1_is_e {
                super::long_cycle(w.graph(), &dw, frame.e, s)?
            } else {
                super::long_cycle(w.graph(), &dw, s, frame.f)?
            };
            let pair: BTreeSet<EdgeId> = r
                .cycle
                .edge_set()
                .intersection(&cut.cut_edges)
                .copied()
                .collect();
            ensure_internal!(
                pair.len() == 2 && pair.contains(&s),
                "crossing pair malformed"
            );
            out.push((pair, r));
        }
        Ok(out)
    };
    let from_e = run(&side_f, true)?;
    let from_f = run(&side_e, false)?;
    for (pair_i, ri) in &from_e {
        for (pair_j, rj) in &from_f {
            if pair_i != pair_j {
                continue;
            }
            let mut set = ri.cycle.edge_set();
            set.extend(rj.cycle.edge_set());
            let cycle = Cycle::from_edge_set(g, &set)?;
            ensure_internal!(
                cycle.contains_edge(frame.e) && cycle.contains_edge(frame.f),
                "glued cycle lost a terminal edge"
            );
            let weight = cycle.weight(frame.w);
            if !meets(weight, frame.target) {
                return Err(Error::InternalBoundMiss(format!(
                    "separating-cut glue weight {weight} target {}",
                    frame.target
                )));
            }
            return Ok(Some((
                cycle,
                vec![Trace {
                    node: TraceNode::Reduction {
                        id: BranchId::NonadjSeparatingReduction,
                        detail: format!("cut {:?}", cut.cut_edges),
                        script: Default::default(),
                    },
                    children: vec![ri.trace.clone(), rj.trace.clone()],
                }],
            )));
        }
    }
    Err(Error::Internal(
        "pigeonhole match failed on a separating cut".into(),
    ))
}

/// An edge joining the two terminal edges: suppress it and recurse on the
/// merged terminals.
fn common_neighbor_reduction(frame: &Frame) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    let ve = g.vertices_of_edges(&[frame.e])?;
    let vf = g.vertices_of_edges(&[frame.f])?;
    let Some(bridge) = g
        .edges()
        .filter(|(_, u, v)| {
            (ve.contains(u) && vf.contains(v)) || (ve.contains(v) && vf.contains(u))
        })
        .map(|(d, _, _)| d)
        .next()
    else {
        return Ok(None);
    };
    let mut w = Window::new(g);
    w.suppress(bridge)?;
    let d1 = containing(&w, frame.e)?;
    let d2 = containing(&w, frame.f)?;
    let (cycle, traces) = force_candidate(
        frame,
        BranchId::NonadjNeighborReduction,
        &format!("bridge {bridge:?}"),
        &w,
        d1,
        d2,
        &[],
    )?;
    Ok(Some((cycle, traces)))
}

/// Terminal labeling: `u[0],u[1]` are the endpoints of `e`, `u[2],u[3]`
/// those of `f`; `se[i]` are the two non-terminal edges at `u[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Labels {
    u: [VertexId; 4],
    se: [[EdgeId; 2]; 4],
    e: EdgeId,
    f: EdgeId,
}

impl Labels {
    fn swap_e(&self) -> Labels {
        let mut l = self.clone();
        l.u.swap(0, 1);
        l.se.swap(0, 1);
        l
    }
    fn swap_f(&self) -> Labels {
        let mut l = self.clone();
        l.u.swap(2, 3);
        l.se.swap(2, 3);
        l
    }
    fn swap_groups(&self) -> Labels {
        Labels {
            u: [self.u[2], self.u[3], self.u[0], self.u[1]],
            se: [self.se[2], self.se[3], self.se[0], self.se[1]],
            e: self.f,
            f: self.e,
        }
    }
    fn swap_slot(&self, i: usize) -> Labels {
        let mut l = self.clone();
        l.se[i].swap(0, 1);
        l
    }
}

/// Every labeling reachable by the symmetry group (terminal swaps within
/// each edge, the edge swap, and per-terminal slot swaps).
fn orbit(start: &Labels) -> Vec<Labels> {
    let mut seen: BTreeSet<Labels> = [start.clone()].into_iter().collect();
    let mut queue = vec![start.clone()];
    while let Some(l) = queue.pop() {
        let mut nexts = vec![l.swap_e(), l.swap_f(), l.swap_groups()];
        for i in 0..4 {
            nexts.push(l.swap_slot(i));
        }
        for n in nexts {
            if seen.insert(n.clone()) {
                queue.push(n);
            }
        }
    }
    seen.into_iter().collect()
}

/// The labeling in the orbit satisfying `pred` minimizing `key`; labels
/// themselves break remaining ties deterministically.
fn normalize<K: Ord>(
    start: &Labels,
    pred: impl Fn(&Labels) -> bool,
    key: impl Fn(&Labels) -> K,
) -> Option<Labels> {
    orbit(start)
        .into_iter()
        .filter(|l| pred(l))
        .min_by_key(|l| (key(l), l.clone()))
}

struct Sides {
    map: BTreeMap<EdgeId, CutSide>,
}

impl Sides {
    fn side(&self, l: &Labels, i: usize, j: usize) -> &BTreeSet<VertexId> {
        &self.map[&l.se[i][j]].side
    }
}

fn main_analysis(frame: &Frame) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let (u1, u2) = g.endpoints(frame.e)?;
    let (u3, u4) = g.endpoints(frame.f)?;
    let mut se = [[EdgeId(0); 2]; 4];
    for (i, &u) in [u1, u2, u3, u4].iter().enumerate() {
        let extra: Vec<EdgeId> = g
            .incident_edges(u)
            .filter(|&d| d != frame.e && d != frame.f)
            .collect();
        ensure_internal!(extra.len() == 2, "terminal vertex is not cubic");
        se[i] = [extra[0], extra[1]];
    }
    let labels = Labels {
        u: [u1, u2, u3, u4],
        se,
        e: frame.e,
        f: frame.f,
    };
    let forbidden: BTreeSet<VertexId> = labels.u.into_iter().collect();

    let mut map = BTreeMap::new();
    for i in 0..4 {
        for j in 0..2 {
            let d = labels.se[i][j];
            map.insert(d, cuts::maximal_3cut_side(g, d, &forbidden)?);
        }
    }
    let sides = Sides { map };

    // Each side detaches 3-connectedly.
    if super::DETACH_CHECKS {
        for (&d, s) in &sides.map {
            let mut w = Window::new(g);
            w.contract(std::slice::from_ref(&s.side))?;
            w.suppress(d)?;
            ensure_internal!(
                cuts::is_3_connected(w.graph()),
                "side of {d:?} does not detach 3-connectedly"
            );
        }
    }

    let mut events = Vec::new();

    // Within each terminal group the four sides are pairwise disjoint.
    for group in [[0usize, 1], [2, 3]] {
        let mut all: Vec<&BTreeSet<VertexId>> = Vec::new();
        for &i in &group {
            for j in 0..2 {
                all.push(sides.side(&labels, i, j));
            }
        }
        for a in 0..all.len() {
            for b in (a + 1)..all.len() {
                ensure_internal!(all[a].is_disjoint(all[b]), "terminal-group sides overlap");
            }
        }
    }
    events.push(Trace::leaf(TraceNode::Branch {
        id: BranchId::NonadjSidesDisjoint,
    }));

    // Cross-group coincidences: any overlap is an equality of maximal sides.
    let mut matches: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 2..4 {
                for m in 0..2 {
                    let a = sides.side(&labels, i, j);
                    let b = sides.side(&labels, k, m);
                    if !a.is_disjoint(b) {
                        ensure_internal!(a == b, "cross-group overlap is not an equality");
                        matches.push(((i, j), (k, m)));
                    }
                }
            }
        }
    }
    if !matches.is_empty() {
        events.push(Trace::leaf(TraceNode::Branch {
            id: BranchId::NonadjCrossEquality,
        }));
    }

    // Paired sides: both sides of one e-terminal equal both of an f-terminal.
    let paired = |l: &Labels| {
        sides.side(l, 0, 0) == sides.side(l, 2, 0) && sides.side(l, 0, 1) == sides.side(l, 2, 1)
    };
    if let Some(l) = normalize(&labels, paired, |_| 0u8) {
        events.push(Trace::leaf(TraceNode::Relabel {
            desc: "paired-sides".into(),
        }));
        let out = paired_sides_reduction(frame, &l, &sides)?;
        events.extend(out.1);
        return Ok((out.0, events));
    }

    // Twin sides: both sides of one terminal equal one side each of the two
    // opposite terminals.
    let twin = |l: &Labels| {
        sides.side(l, 1, 0) == sides.side(l, 2, 0) && sides.side(l, 1, 1) == sides.side(l, 3, 0)
    };
    if let Some(l) = normalize(&labels, twin, |l| frame.w.of_set(sides.side(l, 1, 0))) {
        events.push(Trace::leaf(TraceNode::Relabel {
            desc: "twin-sides".into(),
        }));
        let out = twin_sides_reduction(frame, &l, &sides)?;
        events.extend(out.1);
        return Ok((out.0, events));
    }

    let q = matches.len();
    ensure_internal!(q <= 2, "more than two cross-group coincidences");
    match q {
        0 => {
            events.push(Trace::leaf(TraceNode::Branch {
                id: BranchId::NonadjQ0,
            }));
            let l = normalize(&labels, |_| true, |l| frame.w.of_set(sides.side(l, 0, 0)))
                .expect("orbit is never empty");
            let out = q0_case(frame, &l, &sides)?;
            events.extend(out.1);
            Ok((out.0, events))
        }
        1 => {
            events.push(Trace::leaf(TraceNode::Branch {
                id: BranchId::NonadjQ1,
            }));
            let pred = |l: &Labels| sides.side(l, 1, 1) == sides.side(l, 2, 1);
            let key = |l: &Labels| frame.w.of_set(sides.side(l, 0, 0));
            let l = normalize(&labels, pred, key)
                .ok_or_else(|| Error::Internal("q=1 normalization failed".into()))?;
            let out = q1_case(frame, &l, &sides)?;
            events.extend(out.1);
            Ok((out.0, events))
        }
        _ => {
            events.push(Trace::leaf(TraceNode::Branch {
                id: BranchId::NonadjQ2,
            }));
            let pred = |l: &Labels| {
                sides.side(l, 0, 1) == sides.side(l, 2, 1)
                    && sides.side(l, 1, 1) == sides.side(l, 3, 1)
            };
            let key = |l: &Labels| frame.w.of_set(sides.side(l, 0, 0));
            let l = normalize(&labels, pred, key)
                .ok_or_else(|| Error::Internal("q=2 normalization failed".into()))?;
            let out = q2_case(frame, &l, &sides)?;
            events.extend(out.1);
            Ok((out.0, events))
        }
    }
}

/// Paired sides: contract one shared side per slot, suppress both anchors
/// of the crossing slot pair, recurse through the merged terminal edges.
fn paired_sides_reduction(frame: &Frame, l: &Labels, sides: &Sides) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let x11 = sides.side(l, 0, 0).clone();
    let x12 = sides.side(l, 0, 1).clone();
    let (e12, e31) = (l.se[0][1], l.se[2][0]);
    let mut w = Window::new(g);
    w.contract(&[x12, x11])?;
    w.suppress(e12)?;
    w.suppress(e31)?;
    let d1 = containing(&w, frame.e)?;
    let d2 = containing(&w, frame.f)?;
    force_candidate(
        frame,
        BranchId::NonadjPairedSides,
        "paired sides",
        &w,
        d1,
        d2,
        &[],
    )
}

/// Twin sides: three candidates over the two shared bags.
fn twin_sides_reduction(frame: &Frame, l: &Labels, sides: &Sides) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let y1 = sides.side(l, 1, 0).clone();
    let y2 = sides.side(l, 1, 1).clone();
    let x1 = sides.side(l, 2, 1).clone();
    let x2 = sides.side(l, 3, 1).clone();
    let (e21, e22) = (l.se[1][0], l.se[1][1]);
    let (e31, e32) = (l.se[2][0], l.se[2][1]);
    let (e41, e42) = (l.se[3][0], l.se[3][1]);
    let mut events = vec![Trace::leaf(TraceNode::Branch {
        id: BranchId::NonadjTwinSides,
    })];

    let mut winner: Option<Cycle> = None;
    let mut run = |name: CandidateName,
                   build: &dyn Fn() -> Result<Window>,
                   winner: &mut Option<Cycle>|
     -> Result<()> {
        if winner.is_some() && !frame.exhaustive {
            return Ok(());
        }
        let w = build()?;
        let d1 = containing(&w, frame.e)?;
        let d2 = containing(&w, frame.f)?;
        let (won, mut trace) = evaluate_candidate(frame, name, &w, d1, d2, &[])?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                *winner = Some(c);
            }
        }
        events.push(trace);
        Ok(())
    };

    run(
        CandidateName::Cy,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[y1.clone(), y2.clone()])?;
            w.suppress(e21)?;
            w.suppress(e41)?;
            w.contract(std::slice::from_ref(&x2))?;
            Ok(w)
        },
        &mut winner,
    )?;
    run(
        CandidateName::Cx,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[y1.clone(), y2.clone()])?;
            w.suppress(e21)?;
            w.suppress(e41)?;
            w.contract(std::slice::from_ref(&x2))?;
            w.contract(std::slice::from_ref(&x1))?;
            w.suppress(e32)?;
            Ok(w)
        },
        &mut winner,
    )?;
    run(
        CandidateName::CxP,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[y2.clone(), y1.clone()])?;
            w.suppress(e22)?;
            w.suppress(e31)?;
            w.contract(std::slice::from_ref(&x1))?;
            w.contract(std::slice::from_ref(&x2))?;
            w.suppress(e42)?;
            Ok(w)
        },
        &mut winner,
    )?;
    match winner {
        Some(cycle) => Ok((cycle, events)),
        None => Err(Error::InternalBoundMiss(format!(
            "twin-sides candidates exhausted at order {}",
            g.order()
        ))),
    }
}

/// No cross-group coincidence: drop the lightest side and its slot partner.
fn q0_case(frame: &Frame, l: &Labels, sides: &Sides) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let mut w = Window::new(g);
    w.contract(&[sides.side(l, 0, 0).clone()])?;
    w.suppress(l.se[0][0])?;
    w.contract(&[sides.side(l, 0, 1).clone()])?;
    ensure_internal!(cuts::is_3_connected(w.graph()), "q0 graph not 3-connected");
    let d1 = containing(&w, frame.e)?;
    let d2 = containing(&w, frame.f)?;
    let (won, mut trace) = evaluate_candidate(frame, CandidateName::Cx, &w, d1, d2, &[])?;
    match won {
        Some(cycle) => {
            super::mark_winner(&mut trace);
            Ok((cycle, vec![trace]))
        }
        None => Err(Error::InternalBoundMiss(format!(
            "q0 candidate missed at order {}",
            g.order()
        ))),
    }
}

/// One coincidence (at slots (1,1)-(2,1)): four candidates.
fn q1_case(frame: &Frame, l: &Labels, sides: &Sides) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    ensure_internal!(
        sides.side(l, 1, 1) == sides.side(l, 2, 1),
        "q1 coincidence not in position"
    );
    let y = sides.side(l, 1, 1).clone();
    let (e11, _e12) = (l.se[0][0], l.se[0][1]);
    let (e21, e22) = (l.se[1][0], l.se[1][1]);
    let (e31, e32) = (l.se[2][0], l.se[2][1]);
    let x11s = sides.side(l, 0, 0).clone();
    let x12s = sides.side(l, 0, 1).clone();
    let x21s = sides.side(l, 1, 0).clone();
    let x31s = sides.side(l, 2, 0).clone();
    let mut events = Vec::new();

    let mut winner: Option<Cycle> = None;
    let run = |name: CandidateName,
               build: &dyn Fn() -> Result<Window>,
               require_3conn: bool,
               winner: &mut Option<Cycle>,
               events: &mut Vec<Trace>|
     -> Result<()> {
        if winner.is_some() && !frame.exhaustive {
            return Ok(());
        }
        let w = build()?;
        if require_3conn {
            ensure_internal!(
                cuts::is_3_connected(w.graph()),
                "q1 candidate graph not 3-connected"
            );
        }
        let d1 = containing(&w, frame.e)?;
        let d2 = containing(&w, frame.f)?;
        let (won, mut trace) = evaluate_candidate(frame, name, &w, d1, d2, &[])?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                *winner = Some(c);
            }
        }
        events.push(trace);
        Ok(())
    };

    run(
        CandidateName::Cx,
        &|| {
            let mut w = Window::new(g);
            w.contract(std::slice::from_ref(&x11s))?;
            w.suppress(e11)?;
            w.contract(std::slice::from_ref(&x12s))?;
            Ok(w)
        },
        true,
        &mut winner,
        &mut events,
    )?;
    run(
        CandidateName::CxP,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[x21s.clone(), y.clone()])?;
            w.suppress(e21)?;
            w.suppress(e32)?;
            w.contract(std::slice::from_ref(&x31s))?;
            Ok(w)
        },
        false,
        &mut winner,
        &mut events,
    )?;
    run(
        CandidateName::CxPP,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[x31s.clone(), y.clone()])?;
            w.suppress(e31)?;
            w.suppress(e22)?;
            w.contract(std::slice::from_ref(&x21s))?;
            Ok(w)
        },
        false,
        &mut winner,
        &mut events,
    )?;
    run(
        CandidateName::Cy,
        &|| {
            let mut w = Window::new(g);
            w.contract(std::slice::from_ref(&y))?;
            w.suppress(e22)?;
            w.contract(std::slice::from_ref(&x21s))?;
            Ok(w)
        },
        true,
        &mut winner,
        &mut events,
    )?;
    match winner {
        Some(cycle) => Ok((cycle, events)),
        None => Err(Error::InternalBoundMiss(format!(
            "q1 candidates exhausted at order {}",
            g.order()
        ))),
    }
}

/// Two coincidences (at slots (0,1)-(2,1) and (1,1)-(3,1)): two candidates.
fn q2_case(frame: &Frame, l: &Labels, sides: &Sides) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    ensure_internal!(
        sides.side(l, 0, 1) == sides.side(l, 2, 1) && sides.side(l, 1, 1) == sides.side(l, 3, 1),
        "q2 coincidences not in position"
    );
    let y1 = sides.side(l, 0, 1).clone();
    let (e11, e12) = (l.se[0][0], l.se[0][1]);
    let e32 = l.se[2][1];
    let x11s = sides.side(l, 0, 0).clone();
    let x31s = sides.side(l, 2, 0).clone();
    let mut events = Vec::new();

    let mut winner: Option<Cycle> = None;
    {
        let mut w = Window::new(g);
        w.contract(&[x11s.clone(), y1.clone()])?;
        w.suppress(e11)?;
        w.suppress(e32)?;
        w.contract(std::slice::from_ref(&x31s))?;
        let d1 = containing(&w, frame.e)?;
        let d2 = containing(&w, frame.f)?;
        let (won, mut trace) = evaluate_candidate(frame, CandidateName::Cx, &w, d1, d2, &[])?;
        if let Some(c) = won {
            super::mark_winner(&mut trace);
            winner = Some(c);
        }
        events.push(trace);
    }
    if winner.is_none() || frame.exhaustive {
        let mut w = Window::new(g);
        w.contract(std::slice::from_ref(&y1))?;
        w.suppress(e12)?;
        w.contract(std::slice::from_ref(&x11s))?;
        ensure_internal!(
            cuts::is_3_connected(w.graph()),
            "q2 Cy graph not 3-connected"
        );
        let d1 = containing(&w, frame.e)?;
        let d2 = containing(&w, frame.f)?;
        let (won, mut trace) = evaluate_candidate(frame, CandidateName::Cy, &w, d1, d2, &[])?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                winner = Some(c);
            }
        }
        events.push(trace);
    }
    match winner {
        Some(cycle) => Ok((cycle, events)),
        None => Err(Error::InternalBoundMiss(format!(
            "q2 candidates exhausted at order {}",
            g.order()
        ))),
    }
}
