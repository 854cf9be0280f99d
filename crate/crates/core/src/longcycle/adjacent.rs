//! Case analysis for adjacent prescribed edges.
//!
//! With `e = u1u2` and `f = u2u3` adjacent and every 2-edge cut separating
//! them, the graph is 3-connected. Two reductions may fire first: a
//! nontrivial 3-edge cut through a terminal edge splits off a side, and a
//! `u1u3` edge lets the whole terminal triangle contract away. Otherwise the
//! five maximal 3-boundary sides hanging off the terminals are computed and
//! the analysis branches on whether the sides of `u1` and `u3` stay
//! disjoint (the split case) or merge (the merged case).

use std::collections::BTreeSet;

use crate::cuts::{self, CutSide};
use crate::cycle::Cycle;
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::search;
use crate::surgery::{LiftItem, Window};

use super::{
    complete_lift, containing, evaluate_candidate, force_candidate, meets, BranchId, CandidateName,
    Frame, RouteTemplate, SpecialRoute, Trace, TraceNode,
};

/// Edge labels around the two adjacent terminal edges. `ea` are the two
/// non-terminal edges at `u1`, `eb` those at `u3`, `e5` the third edge of
/// the shared vertex `u2`.
#[derive(Clone, Debug)]
struct Labels {
    u1: VertexId,
    u2: VertexId,
    u3: VertexId,
    e: EdgeId,
    f: EdgeId,
    ea: [EdgeId; 2],
    eb: [EdgeId; 2],
    e5: EdgeId,
}

impl Labels {
    fn swap_a(&mut self) {
        self.ea.swap(0, 1);
    }
    fn swap_b(&mut self) {
        self.eb.swap(0, 1);
    }
    /// Mirror the configuration: u1 and u3 (and e and f) trade places.
    fn reflect(&mut self) {
        std::mem::swap(&mut self.u1, &mut self.u3);
        std::mem::swap(&mut self.e, &mut self.f);
        std::mem::swap(&mut self.ea, &mut self.eb);
    }
}

pub(crate) fn adjacent_case(frame: &Frame) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    ensure_internal!(
        cuts::is_3_connected(g),
        "adjacent case requires 3-connectivity"
    );

    // Terminal identification.
    let (a1, a2) = g.endpoints(frame.e)?;
    let (b1, b2) = g.endpoints(frame.f)?;
    let u2 = [a1, a2]
        .into_iter()
        .find(|v| *v == b1 || *v == b2)
        .ok_or_else(|| Error::Internal("adjacent edges share no endpoint".into()))?;
    let u1 = if a1 == u2 { a2 } else { a1 };
    let u3 = if b1 == u2 { b2 } else { b1 };
    ensure_internal!(u1 != u3, "parallel prescribed edges outside the base case");

    // Reduction: a nontrivial 3-edge cut through a terminal edge.
    if let Some(out) = cut_through_terminal(frame)? {
        return Ok(out);
    }

    // Reduction: an edge joining u1 and u3 closes a terminal triangle.
    if let Some(out) = terminal_triangle(frame, u1, u2, u3)? {
        return Ok(out);
    }

    let side_edges = |v: VertexId, skip: [EdgeId; 2]| -> Vec<EdgeId> {
        g.incident_edges(v).filter(|d| !skip.contains(d)).collect()
    };
    let ea = side_edges(u1, [frame.e, frame.f]);
    let eb = side_edges(u3, [frame.e, frame.f]);
    let e5v = side_edges(u2, [frame.e, frame.f]);
    ensure_internal!(
        ea.len() == 2 && eb.len() == 2 && e5v.len() == 1,
        "terminals are not cubic"
    );
    let labels = Labels {
        u1,
        u2,
        u3,
        e: frame.e,
        f: frame.f,
        ea: [ea[0], ea[1]],
        eb: [eb[0], eb[1]],
        e5: e5v[0],
    };

    let forbidden: BTreeSet<VertexId> = [u1, u2, u3].into_iter().collect();
    let mut sides: std::collections::BTreeMap<EdgeId, CutSide> = Default::default();
    for d in [
        labels.ea[0],
        labels.ea[1],
        labels.eb[0],
        labels.eb[1],
        labels.e5,
    ] {
        sides.insert(d, cuts::maximal_3cut_side(g, d, &forbidden)?);
    }
    let mut events = vec![Trace::leaf(TraceNode::Branch {
        id: BranchId::AdjSidesUnique,
    })];

    // Each side detaches 3-connectedly: contracting it and suppressing its
    // anchor edge must leave a 3-connected graph.
    if super::DETACH_CHECKS {
        for (&d, side) in &sides {
            let mut w = Window::new(g);
            w.contract(std::slice::from_ref(&side.side))?;
            w.suppress(d)?;
            ensure_internal!(
                cuts::is_3_connected(w.graph()),
                "side of {d:?} does not detach 3-connectedly"
            );
        }
    }

    // Disjointness within each terminal, and of the shared vertex's side.
    let side_of = |sides: &std::collections::BTreeMap<EdgeId, CutSide>,
                   d: EdgeId|
     -> BTreeSet<VertexId> { sides[&d].side.clone() };
    {
        let x1 = side_of(&sides, labels.ea[0]);
        let x2 = side_of(&sides, labels.ea[1]);
        let x3 = side_of(&sides, labels.eb[0]);
        let x4 = side_of(&sides, labels.eb[1]);
        let x5 = side_of(&sides, labels.e5);
        ensure_internal!(x1.is_disjoint(&x2), "sides at u1 overlap");
        ensure_internal!(x3.is_disjoint(&x4), "sides at u3 overlap");
        for x in [&x1, &x2, &x3, &x4] {
            ensure_internal!(
                x5.is_disjoint(x),
                "shared-vertex side overlaps a terminal side"
            );
        }
        events.push(Trace::leaf(TraceNode::Branch {
            id: BranchId::AdjSidesDisjoint,
        }));
        let no_edge_between = |p: &BTreeSet<VertexId>, q: &BTreeSet<VertexId>| {
            !g.edges().any(|(_, u, v)| {
                (p.contains(&u) && q.contains(&v)) || (p.contains(&v) && q.contains(&u))
            })
        };
        ensure_internal!(no_edge_between(&x1, &x2), "edge joins the two sides at u1");
        ensure_internal!(no_edge_between(&x3, &x4), "edge joins the two sides at u3");
        events.push(Trace::leaf(TraceNode::Branch {
            id: BranchId::AdjSidesNonadjacent,
        }));
    }

    let split = {
        let ab: BTreeSet<VertexId> = side_of(&sides, labels.ea[0])
            .union(&side_of(&sides, labels.ea[1]))
            .copied()
            .collect();
        let cd: BTreeSet<VertexId> = side_of(&sides, labels.eb[0])
            .union(&side_of(&sides, labels.eb[1]))
            .copied()
            .collect();
        ab.is_disjoint(&cd)
    };

    if split {
        events.push(Trace::leaf(TraceNode::Branch {
            id: BranchId::AdjCaseSplit,
        }));
        split_case(frame, labels, &sides, events)
    } else {
        events.push(Trace::leaf(TraceNode::Branch {
            id: BranchId::AdjCaseMerged,
        }));
        merged_case(frame, labels, &sides, events)
    }
}

/// A nontrivial 3-edge cut containing `e` or `f`: contract the side away
/// from the other terminal edge and recurse.
fn cut_through_terminal(frame: &Frame) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    for (anchor, other) in [(frame.e, frame.f), (frame.f, frame.e)] {
        let Some(cut) = cuts::nontrivial_3cut_containing(g, anchor)? else {
            continue;
        };
        ensure_internal!(
            !cut.cut_edges.contains(&other),
            "3-edge cut through both adjacent terminal edges"
        );
        // The other terminal edge sits inside one side; contract the other.
        let (o1, o2) = g.endpoints(other)?;
        let side = if cut.side.contains(&o1) {
            g.vertices()
                .filter(|v| !cut.side.contains(v))
                .collect::<BTreeSet<_>>()
        } else {
            cut.side.clone()
        };
        ensure_internal!(
            !side.contains(&o1) && !side.contains(&o2),
            "contracted side touches the other terminal edge"
        );
        let mut w = Window::new(g);
        w.contract(std::slice::from_ref(&side))?;
        let detail = format!("cut {:?}", cut.cut_edges);
        let (cycle, traces) = force_candidate(
            frame,
            BranchId::AdjCutReduction,
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

/// An edge `u1u3` closes a triangle on the terminals; contract it and reopen
/// the triangle along `e`,`f` in the lift.
fn terminal_triangle(
    frame: &Frame,
    u1: VertexId,
    u2: VertexId,
    u3: VertexId,
) -> Result<Option<(Cycle, Vec<Trace>)>> {
    let g = frame.g;
    let Some(t_edge) = g
        .edge_ids()
        .find(|&d| g.is_incident(d, u1) && g.is_incident(d, u3))
    else {
        return Ok(None);
    };
    let e1 = g
        .incident_edges(u1)
        .find(|&d| d != frame.e && d != t_edge)
        .ok_or_else(|| Error::Internal("u1 lost its outer edge".into()))?;
    let e4 = g
        .incident_edges(u3)
        .find(|&d| d != frame.f && d != t_edge)
        .ok_or_else(|| Error::Internal("u3 lost its outer edge".into()))?;
    let triangle: BTreeSet<VertexId> = [u1, u2, u3].into_iter().collect();
    let mut w = Window::new(g);
    w.contract(std::slice::from_ref(&triangle))?;
    let specials = [SpecialRoute {
        piece: triangle,
        templates: vec![RouteTemplate {
            entry: e1,
            exit: e4,
            items: vec![LiftItem::Edge(frame.e), LiftItem::Edge(frame.f)],
        }],
    }];
    let (cycle, traces) = force_candidate(
        frame,
        BranchId::AdjTriangleReduction,
        "terminal triangle",
        &w,
        e1,
        e4,
        &specials,
    )?;
    Ok(Some((cycle, traces)))
}

/// The split case: all five sides pairwise disjoint.
fn split_case(
    frame: &Frame,
    mut l: Labels,
    sides: &std::collections::BTreeMap<EdgeId, CutSide>,
    mut events: Vec<Trace>,
) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let weight_of = |d: EdgeId| -> u64 { frame.w.of_set(&sides[&d].side) };

    // Normalize: the lightest of the four terminal sides first at u1, and
    // the lighter side of u3 first.
    {
        let xs = [
            weight_of(l.ea[0]),
            weight_of(l.ea[1]),
            weight_of(l.eb[0]),
            weight_of(l.eb[1]),
        ];
        let argmin = (0..4).min_by_key(|&i| (xs[i], i)).unwrap();
        let mut ops: Vec<&str> = Vec::new();
        match argmin {
            0 => {}
            1 => {
                l.swap_a();
                ops.push("swap-a");
            }
            2 => {
                l.reflect();
                ops.push("reflect");
            }
            _ => {
                l.reflect();
                l.swap_a();
                ops.push("reflect");
                ops.push("swap-a");
            }
        }
        if weight_of(l.eb[0]) > weight_of(l.eb[1]) {
            l.swap_b();
            ops.push("swap-b");
        }
        if !ops.is_empty() {
            events.push(Trace::leaf(TraceNode::Relabel {
                desc: ops.join("+"),
            }));
        }
    }

    let x = |d: EdgeId| sides[&d].side.clone();
    let (e1, e2, e3, e4, e5) = (l.ea[0], l.ea[1], l.eb[0], l.eb[1], l.e5);

    // The candidates are tried in order; the first to reach the target is
    // the winner. In exhaustive mode all of them are still evaluated.
    let mut winner: Option<Cycle> = None;
    let try_candidate = |name: CandidateName,
                         build: &dyn Fn() -> Result<(Window, EdgeId, EdgeId)>,
                         winner: &mut Option<Cycle>,
                         events: &mut Vec<Trace>|
     -> Result<()> {
        if winner.is_some() && !frame.exhaustive {
            return Ok(());
        }
        let (w, d1, d2) = build()?;
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

    // Contract one side, suppress its anchor, contract a second side.
    let contract_suppress_contract =
        |first: EdgeId, second: EdgeId| -> Result<(Window, EdgeId, EdgeId)> {
            let mut w = Window::new(g);
            w.contract(&[x(first)])?;
            w.suppress(first)?;
            w.contract(&[x(second)])?;
            ensure_internal!(
                cuts::is_3_connected(w.graph()),
                "split-case contraction lost 3-connectivity"
            );
            let anchor = containing(&w, l.e)?;
            Ok((w, anchor, second))
        };

    // Structural early exit: when the five sides and the terminals cover
    // the whole graph, the side layer is a pentagon and a direct Hamilton
    // assembly of the contracted graph always reaches the bound.
    let mut w5 = Window::new(g);
    let order5 = [e1, e2, e3, e4, e5];
    let piece_sets: Vec<BTreeSet<VertexId>> = order5.iter().map(|&d| x(d)).collect();
    let vs5 = w5.contract(&piece_sets)?;
    let pids: Vec<usize> = vs5
        .iter()
        .map(|&v| {
            w5.piece_of_vertex(v)
                .expect("contracted vertex must be a piece")
        })
        .collect();
    if w5.graph().order() == 8 {
        let (cycle, trace) = pentagon_assembly(frame, &l, &w5, &vs5)?;
        events.push(trace);
        return Ok((cycle, events));
    }

    // Candidate: drop the light side at u1 and ride through the second.
    try_candidate(
        CandidateName::C12,
        &|| {
            let mut w = Window::new(g);
            w.contract(&[x(e1)])?;
            w.suppress(e1)?;
            w.contract(&[x(e2)])?;
            ensure_internal!(cuts::is_3_connected(w.graph()), "C12 graph not 3-connected");
            let anchor = containing(&w, l.e)?;
            Ok((w, anchor, l.f))
        },
        &mut winner,
        &mut events,
    )?;
    // Candidates: drop the shared-vertex side, ride through e2 / e4.
    try_candidate(
        CandidateName::C52,
        &|| contract_suppress_contract(e5, e2),
        &mut winner,
        &mut events,
    )?;
    try_candidate(
        CandidateName::C54,
        &|| contract_suppress_contract(e5, e4),
        &mut winner,
        &mut events,
    )?;
    // Candidate: drop the shared-vertex side, nonadjacent recursion on the
    // merged terminal edge and the merged far edge.
    try_candidate(
        CandidateName::C5,
        &|| {
            let mut w = Window::new(g);
            let pid = w
                .contract(&[x(e5)])?
                .first()
                .and_then(|&v| w.piece_of_vertex(v))
                .ok_or_else(|| Error::Internal("missing piece".into()))?;
            w.suppress(e5)?;
            ensure_internal!(cuts::is_3_connected(w.graph()), "C5 graph not 3-connected");
            let m_ef = containing(&w, l.e)?;
            let m5 = edge_with_marker(&w, pid)?;
            Ok((w, m_ef, m5))
        },
        &mut winner,
        &mut events,
    )?;
    if let Some(cycle) = winner {
        if !frame.exhaustive {
            return Ok((cycle, events));
        }
        winner = Some(cycle);
    }

    // Remainder candidate: peel the middle layer down to the remainder
    // graph, bridge two sides through the terminal path, and recurse.
    let mut wz = w5.clone();
    wz.delete_vertices(&[l.u1, l.u2, l.u3].into_iter().collect())?;
    wz.smooth_all_degree_two()?;
    ensure_internal!(
        cuts::is_2_connected(wz.graph()),
        "remainder graph not 2-connected"
    );

    let xw = [
        weight_of(e1),
        weight_of(e2),
        weight_of(e3),
        weight_of(e4),
        weight_of(e5),
    ];
    for (k, lidx) in [(1usize, 3usize), (1, 4), (2, 3), (2, 4)] {
        let mk = edge_with_marker(&wz, pids[k - 1])?;
        let ml = edge_with_marker(&wz, pids[lidx - 1])?;
        if mk == ml {
            continue;
        }
        let mut wb = wz.clone();
        let (sk, _, _) = wb.subdivide_at_piece(mk, pids[k - 1])?;
        let (sl, _, _) = wb.subdivide_at_piece(ml, pids[lidx - 1])?;
        let ek = [e1, e2][k - 1];
        let el = [e3, e4][lidx - 3];
        let bridge = wb.add_edge_real(
            sk,
            sl,
            vec![
                crate::surgery::RouteItem::Edge(ek),
                crate::surgery::RouteItem::Edge(l.e),
                crate::surgery::RouteItem::Edge(l.f),
                crate::surgery::RouteItem::Edge(el),
            ],
        )?;
        if !cuts::is_3_connected(wb.graph()) {
            continue;
        }
        // Ride through the heaviest of the three unused sides.
        let choices = [3 - k, 7 - lidx, 5];
        let &best = choices
            .iter()
            .max_by_key(|&&i| (xw[i - 1], std::cmp::Reverse(i)))
            .unwrap();
        let mi = edge_with_marker(&wb, pids[best - 1])?;
        let (won, mut trace) = evaluate_candidate(frame, CandidateName::Cz, &wb, bridge, mi, &[])?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                winner = Some(c);
            }
        }
        events.push(trace);
        return match winner {
            Some(cycle) => Ok((cycle, events)),
            None => Err(Error::InternalBoundMiss(format!(
                "remainder candidate missed at order {}",
                g.order()
            ))),
        };
    }
    match winner {
        Some(cycle) => Ok((cycle, events)),
        None => Err(Error::InternalBoundMiss(format!(
            "no admissible bridge pair; remainder has {} two-cuts",
            count_2_cuts(wz.graph())
        ))),
    }
}

fn count_2_cuts(g: &crate::graph::MultiGraph) -> usize {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut n = 0;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let skip: BTreeSet<EdgeId> = [edges[i], edges[j]].into_iter().collect();
            if let Some(start) = g.vertices().next() {
                if g.component_avoiding(start, &skip).len() < g.order() {
                    n += 1;
                }
            }
        }
    }
    n
}

fn edge_with_marker(w: &Window, pid: usize) -> Result<EdgeId> {
    w.graph()
        .edge_ids()
        .find(|&d| {
            w.realization_of(d)
                .is_some_and(|r| r.contains(&crate::surgery::RouteItem::Piece(pid)))
        })
        .ok_or_else(|| Error::Internal(format!("piece {pid} marker lost")))
}

/// All five contracted sides and the three terminals form an 8-vertex
/// graph whose side layer is a pentagon: assemble the Hamilton cycle of the
/// contracted graph directly.
fn pentagon_assembly(
    frame: &Frame,
    l: &Labels,
    w5: &Window,
    vs5: &[VertexId],
) -> Result<(Cycle, Trace)> {
    let h = w5.graph();
    let vset: BTreeSet<VertexId> = vs5.iter().copied().collect();
    let layer_edges: BTreeSet<EdgeId> = h
        .edges()
        .filter(|(_, u, v)| vset.contains(u) && vset.contains(v))
        .map(|(d, _, _)| d)
        .collect();
    ensure_internal!(layer_edges.len() == 5, "side layer is not a pentagon");
    // A layer edge between a u1-side and a u3-side always exists.
    let mut pick = None;
    'outer: for (k, &vk) in vs5[..2].iter().enumerate() {
        for (li, &vl) in vs5[2..4].iter().enumerate() {
            if let Some(d) = layer_edges
                .iter()
                .copied()
                .find(|&d| h.is_incident(d, vk) && h.is_incident(d, vl))
            {
                pick = Some((k, li, d));
                break 'outer;
            }
        }
    }
    let (k, li, drop_edge) =
        pick.ok_or_else(|| Error::Internal("pentagon has no cross edge".into()))?;
    let ek = l.ea[k];
    let el = l.eb[li];
    let mut set: BTreeSet<EdgeId> = layer_edges;
    set.remove(&drop_edge);
    set.extend([ek, l.e, l.f, el]);
    let cyc = Cycle::from_edge_set(h, &set)?;
    let items = w5.route_cycle(&cyc)?;
    let (cycle, crossings) = complete_lift(frame, items, &[])?;
    let weight = cycle.weight(frame.w);
    if !meets(weight, frame.target) {
        return Err(Error::InternalBoundMiss(format!(
            "pentagon assembly weight {weight} target {}",
            frame.target
        )));
    }
    Ok((
        cycle,
        Trace {
            node: TraceNode::Branch {
                id: BranchId::AdjCasePentagon,
            },
            children: crossings,
        },
    ))
}

/// The merged case: one side of u1 coincides with one side of u3.
fn merged_case(
    frame: &Frame,
    mut l: Labels,
    sides: &std::collections::BTreeMap<EdgeId, CutSide>,
    mut events: Vec<Trace>,
) -> Result<(Cycle, Vec<Trace>)> {
    let g = frame.g;
    let x = |d: EdgeId| sides[&d].side.clone();
    let weight_of = |d: EdgeId| -> u64 { frame.w.of_set(&sides[&d].side) };

    // Bring the intersecting pair to positions ea[1] / eb[1].
    {
        let mut found = None;
        'outer: for i in 0..2 {
            for j in 0..2 {
                if !x(l.ea[i]).is_disjoint(&x(l.eb[j])) {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = found.ok_or_else(|| Error::Internal("merged case without overlap".into()))?;
        let mut ops = Vec::new();
        if i == 0 {
            l.swap_a();
            ops.push("swap-a");
        }
        if j == 0 {
            l.swap_b();
            ops.push("swap-b");
        }
        if !ops.is_empty() {
            events.push(Trace::leaf(TraceNode::Relabel {
                desc: ops.join("+"),
            }));
        }
    }
    ensure_internal!(x(l.ea[1]) == x(l.eb[1]), "overlapping sides are not equal");

    // Outer pair also merged: contract everything between the terminals.
    if !x(l.ea[0]).is_disjoint(&x(l.eb[0])) {
        ensure_internal!(x(l.ea[0]) == x(l.eb[0]), "outer overlap is not an equality");
        let x1 = x(l.ea[0]);
        let x2 = x(l.ea[1]);
        let f1 = other_boundary(&sides[&l.ea[0]], &[l.ea[0], l.eb[0]])?;
        let f2 = other_boundary(&sides[&l.ea[1]], &[l.ea[1], l.eb[1]])?;
        let mut u_set: BTreeSet<VertexId> = x1.union(&x2).copied().collect();
        u_set.extend([l.u1, l.u2, l.u3]);
        let mut w = Window::new(g);
        w.contract(&[u_set.clone()])?;
        let specials = [SpecialRoute {
            piece: u_set,
            templates: vec![RouteTemplate {
                entry: f1,
                exit: f2,
                items: vec![
                    LiftItem::Visit {
                        piece: x1,
                        entry: f1,
                        exit: l.ea[0],
                    },
                    LiftItem::Edge(l.ea[0]),
                    LiftItem::Edge(l.e),
                    LiftItem::Edge(l.f),
                    LiftItem::Edge(l.eb[1]),
                    LiftItem::Visit {
                        piece: x2,
                        entry: l.eb[1],
                        exit: f2,
                    },
                ],
            }],
        }];
        let (cycle, traces) = force_candidate(
            frame,
            BranchId::AdjMergedOuterPair,
            "both side pairs merged",
            &w,
            f1,
            f2,
            &specials,
        )?;
        events.extend(traces);
        return Ok((cycle, events));
    }

    // The merged bag and its continuation toward the remainder.
    let y1 = x(l.ea[1]);
    let e6 = other_boundary(&sides[&l.ea[1]], &[l.ea[1], l.eb[1]])?;
    let mut forbidden: BTreeSet<VertexId> = y1.clone();
    forbidden.extend([l.u1, l.u2, l.u3]);
    let y2_side = cuts::maximal_3cut_side(g, e6, &forbidden)?;
    let y2 = y2_side.side.clone();
    ensure_internal!(
        y2.is_disjoint(&x(l.ea[0])) && y2.is_disjoint(&x(l.eb[0])),
        "second bag touches an outer side"
    );

    // Second bag equals the shared-vertex side: contract both bags away.
    if !y2.is_disjoint(&x(l.e5)) {
        ensure_internal!(y2 == x(l.e5), "second-bag overlap is not an equality");
        let f1 = other_boundary(&y2_side, &[l.e5, e6])?;
        let mut u_set: BTreeSet<VertexId> = y1.union(&y2).copied().collect();
        u_set.extend([l.u1, l.u2, l.u3]);
        let mut w = Window::new(g);
        w.contract(&[u_set.clone()])?;
        let specials = [SpecialRoute {
            piece: u_set,
            templates: vec![RouteTemplate {
                entry: l.ea[0],
                exit: f1,
                items: vec![
                    LiftItem::Edge(l.e),
                    LiftItem::Edge(l.f),
                    LiftItem::Edge(l.eb[1]),
                    LiftItem::Visit {
                        piece: y1.clone(),
                        entry: l.eb[1],
                        exit: e6,
                    },
                    LiftItem::Edge(e6),
                    LiftItem::Visit {
                        piece: y2.clone(),
                        entry: e6,
                        exit: f1,
                    },
                ],
            }],
        }];
        let (cycle, traces) = force_candidate(
            frame,
            BranchId::AdjMergedInnerPair,
            "second bag meets the shared-vertex side",
            &w,
            l.ea[0],
            f1,
            &specials,
        )?;
        events.extend(traces);
        return Ok((cycle, events));
    }

    // Normalize: lighter outer side at u1.
    if weight_of(l.ea[0]) > weight_of(l.eb[0]) {
        l.reflect();
        events.push(Trace::leaf(TraceNode::Relabel {
            desc: "reflect".into(),
        }));
    }
    let (e1, e2, e3, e4, e5) = (l.ea[0], l.ea[1], l.eb[0], l.eb[1], l.e5);
    let (x1, x3, x5) = (x(e1), x(e3), x(e5));

    // Shared route template: crossing the contracted terminal bag from an
    // outer anchor to the remainder anchor passes through both terminal
    // edges and the merged bag.
    let bag_route = |bag: BTreeSet<VertexId>| -> SpecialRoute {
        SpecialRoute {
            piece: bag,
            templates: vec![
                RouteTemplate {
                    entry: e1,
                    exit: e6,
                    items: vec![
                        LiftItem::Edge(l.e),
                        LiftItem::Edge(l.f),
                        LiftItem::Edge(e4),
                        LiftItem::Visit {
                            piece: y1.clone(),
                            entry: e4,
                            exit: e6,
                        },
                    ],
                },
                RouteTemplate {
                    entry: e3,
                    exit: e6,
                    items: vec![
                        LiftItem::Edge(l.f),
                        LiftItem::Edge(l.e),
                        LiftItem::Edge(e2),
                        LiftItem::Visit {
                            piece: y1.clone(),
                            entry: e2,
                            exit: e6,
                        },
                    ],
                },
            ],
        }
    };

    // Candidate: contract an outer side plus the bag block, recurse on the
    // two anchors into the remainder.
    let mut winner: Option<Cycle> = None;
    let block_candidate = |name: CandidateName,
                           drop_edge: EdgeId,
                           bag_extra: [VertexId; 2],
                           winner: &mut Option<Cycle>,
                           events: &mut Vec<Trace>|
     -> Result<()> {
        if winner.is_some() && !frame.exhaustive {
            return Ok(());
        }
        let mut w = Window::new(g);
        w.contract(&[x(drop_edge)])?;
        w.suppress(drop_edge)?;
        let mut bag: BTreeSet<VertexId> = y1.clone();
        bag.extend(bag_extra);
        w.contract(&[bag.clone(), y2.clone(), x3.clone()])?;
        ensure_internal!(
            cuts::is_3_connected(w.graph()),
            "merged-case block graph not 3-connected"
        );
        let specials = [bag_route(bag)];
        let (won, mut trace) = evaluate_candidate(frame, name, &w, e3, e6, &specials)?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                *winner = Some(c);
            }
        }
        events.push(trace);
        Ok(())
    };

    block_candidate(
        CandidateName::C1,
        e1,
        [l.u2, l.u3],
        &mut winner,
        &mut events,
    )?;
    block_candidate(
        CandidateName::C2,
        e5,
        [l.u1, l.u3],
        &mut winner,
        &mut events,
    )?;

    // Candidate: contract both bags, suppress their bridge, contract the
    // outer sides and the terminal path; recurse on the outer anchors.
    if winner.is_none() || frame.exhaustive {
        let mut w = Window::new(g);
        w.contract(&[y1.clone(), y2.clone()])?;
        w.suppress(e6)?;
        let t: BTreeSet<VertexId> = [l.u1, l.u2, l.u3].into_iter().collect();
        w.contract(&[x1.clone(), t.clone(), x3.clone()])?;
        ensure_internal!(cuts::is_3_connected(w.graph()), "Cy graph not 3-connected");
        let specials = [SpecialRoute {
            piece: t,
            templates: vec![RouteTemplate {
                entry: e1,
                exit: e3,
                items: vec![LiftItem::Edge(l.e), LiftItem::Edge(l.f)],
            }],
        }];
        let (won, mut trace) = evaluate_candidate(frame, CandidateName::Cy, &w, e1, e3, &specials)?;
        if winner.is_none() {
            if let Some(c) = won {
                super::mark_winner(&mut trace);
                winner = Some(c);
            }
        }
        events.push(trace);
    }

    // Candidate: detour around the contracted terminal block.
    if winner.is_none() || frame.exhaustive {
        let mut w = Window::new(g);
        let pid5 = w
            .contract(std::slice::from_ref(&x5))?
            .first()
            .and_then(|&v| w.piece_of_vertex(v))
            .ok_or_else(|| Error::Internal("missing piece".into()))?;
        w.suppress(e5)?;
        let mut bag: BTreeSet<VertexId> = y1.clone();
        bag.extend([l.u1, l.u3]);
        let vs = w.contract(&[bag.clone(), x1.clone(), x3.clone(), y2.clone()])?;
        ensure_internal!(
            cuts::is_3_connected(w.graph()),
            "detour block graph not 3-connected"
        );
        let (uz, v1, v2, v3) = (vs[0], vs[1], vs[2], vs[3]);
        let m5 = edge_with_marker(&w, pid5)?;
        let detour = search::detour_cycle(&w, uz, [v1, v2, v3], m5)?;
        let items = detour.window.route_cycle(&detour.cycle)?;
        let specials = [bag_route(bag)];
        let (cycle, crossings) = complete_lift(frame, items, &specials)?;
        let weight = cycle.weight(frame.w);
        let met = meets(weight, frame.target);
        let selected = met && winner.is_none();
        events.push(Trace {
            node: TraceNode::Candidate {
                name: CandidateName::Cz,
                weight,
                target: frame.target,
                met,
                winner: selected,
                script: detour.window.script().clone(),
            },
            children: crossings,
        });
        if selected {
            winner = Some(cycle);
        }
    }
    match winner {
        Some(cycle) => Ok((cycle, events)),
        None => Err(Error::InternalBoundMiss(format!(
            "merged case exhausted at order {}",
            g.order()
        ))),
    }
}

fn other_boundary(side: &CutSide, not: &[EdgeId]) -> Result<EdgeId> {
    let rest: Vec<EdgeId> = side
        .cut_edges
        .iter()
        .copied()
        .filter(|d| !not.contains(d))
        .collect();
    ensure_internal!(
        rest.len() == 1,
        "expected exactly one further boundary edge"
    );
    Ok(rest[0])
}
