//! Edge-cut machinery: connectivity tests, small-cut enumeration, maximal
//! 3-boundary sides and the submodular uncrossing step.
//!
//! Sides here are always subsets of the vertex set together with their
//! boundary edges. Maximality of 3-boundary sides is computed from residual
//! reachability after a unit-capacity max flow (the sink side of the
//! sink-side-maximal minimum cut), since qualifying sides are closed under
//! union by the uncrossing inequality.

use std::collections::BTreeSet;

use crate::error::{ensure_internal, Error, Result};
use crate::flow::{self, max_flow};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// One side of an edge cut together with the cut itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSide {
    pub side: BTreeSet<VertexId>,
    pub cut_edges: BTreeSet<EdgeId>,
}

impl CutSide {
    pub fn new(g: &MultiGraph, side: BTreeSet<VertexId>) -> CutSide {
        let cut_edges = g.boundary(&side);
        CutSide { side, cut_edges }
    }

    /// Both sides have at least two vertices.
    pub fn is_nontrivial(&self, g: &MultiGraph) -> bool {
        self.side.len() >= 2 && g.order() - self.side.len() >= 2
    }

    /// True when `e` and `f` avoid the cut and end up in different sides.
    pub fn separates(&self, g: &MultiGraph, e: EdgeId, f: EdgeId) -> bool {
        if self.cut_edges.contains(&e) || self.cut_edges.contains(&f) {
            return false;
        }
        let (a, _) = g.endpoints(e).unwrap();
        let (c, _) = g.endpoints(f).unwrap();
        self.side.contains(&a) != self.side.contains(&c)
    }

    pub fn contains_edge_inside(&self, g: &MultiGraph, e: EdgeId) -> bool {
        let (a, b) = g.endpoints(e).unwrap();
        self.side.contains(&a) && self.side.contains(&b)
    }
}

/// Edge connectivity at least k; bridge scans up to k = 3, exact flows
/// beyond.
pub fn edge_connectivity_at_least(g: &MultiGraph, k: usize) -> bool {
    match k {
        0 => true,
        1 => g.order() >= 1 && g.is_connected(),
        2 => g.order() >= 2 && g.is_connected() && bridges_avoiding(g, &BTreeSet::new()).is_empty(),
        3 => {
            if !edge_connectivity_at_least(g, 2) {
                return false;
            }
            g.edge_ids().all(|e| {
                let skip: BTreeSet<EdgeId> = [e].into_iter().collect();
                bridges_avoiding(g, &skip).is_empty()
            })
        }
        _ => flow::edge_connectivity(g) >= k,
    }
}

/// 2-connectivity for cubic multigraphs coincides with 2-edge-connectivity.
pub fn is_2_connected(g: &MultiGraph) -> bool {
    edge_connectivity_at_least(g, 2)
}

/// 3-connectivity for cubic multigraphs: 3-edge-connectivity plus
/// simplicity at order >= 4. Orders 2 and 3 are admitted whenever they are
/// 3-edge-connected, which for cubic graphs means exactly the triple edge
/// on two vertices, the recursion's base object.
pub fn is_3_connected(g: &MultiGraph) -> bool {
    if g.order() < 2 {
        return false;
    }
    if g.order() <= 3 {
        return edge_connectivity_at_least(g, 3);
    }
    !g.has_parallel_edges() && edge_connectivity_at_least(g, 3)
}

/// A nontrivial 3-edge cut containing `anchor`, if one exists: found by
/// unit flows between the anchor's endpoints augmented with one further
/// neighbor on each side (a nontrivial cut keeps a non-anchor neighbor
/// with each endpoint). Returns the side containing the second endpoint.
pub fn nontrivial_3cut_containing(g: &MultiGraph, anchor: EdgeId) -> Result<Option<CutSide>> {
    let (u1, u2) = g.endpoints(anchor)?;
    let minus = MultiGraph::from_parts(g.vertices(), g.edges().filter(|(d, _, _)| *d != anchor))?;
    let nbs = |u: VertexId| -> Vec<VertexId> {
        g.incident(u)
            .iter()
            .filter(|&&(d, _)| d != anchor)
            .map(|&(_, w)| w)
            .collect()
    };
    for x in nbs(u1) {
        if x == u2 {
            continue;
        }
        for &y in &nbs(u2) {
            if y == u1 || y == x || x == u2 {
                continue;
            }
            let sources: BTreeSet<VertexId> = [u1, x].into_iter().collect();
            let sinks: BTreeSet<VertexId> = [u2, y].into_iter().collect();
            if !sources.is_disjoint(&sinks) {
                continue;
            }
            let r = crate::flow::max_flow(&minus, &sources, &sinks);
            if r.value == 2 {
                let side: BTreeSet<VertexId> = minus
                    .vertices()
                    .filter(|v| !r.source_reach.contains(v))
                    .collect();
                let cut = CutSide::new(g, side);
                ensure_internal!(
                    cut.cut_edges.len() == 3,
                    "augmented flow cut is not a 3-cut"
                );
                ensure_internal!(
                    cut.cut_edges.contains(&anchor),
                    "anchor missing from its cut"
                );
                ensure_internal!(cut.is_nontrivial(g), "augmented flow cut is trivial");
                return Ok(Some(cut));
            }
        }
    }
    Ok(None)
}

/// A 3-edge cut separating `e` from `f`, when one exists: the min cut
/// between their endpoint sets (both edges stay inside their sides).
pub fn separating_3cut(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<Option<CutSide>> {
    let se = g.vertices_of_edges(&[e])?;
    let sf = g.vertices_of_edges(&[f])?;
    if !se.is_disjoint(&sf) {
        return Ok(None);
    }
    let (value, cut) = min_edge_cut(g, &se, &sf)?;
    if value != 3 {
        return Ok(None);
    }
    ensure_internal!(cut.separates(g, e, f), "endpoint min cut fails to separate");
    Ok(Some(cut))
}

/// Max-flow value between vertex sets plus the sink-side-maximal minimum
/// cut (complement of the residual-reachable set).
pub fn min_edge_cut(
    g: &MultiGraph,
    sources: &BTreeSet<VertexId>,
    sinks: &BTreeSet<VertexId>,
) -> Result<(usize, CutSide)> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::PreconditionViolated(
            "empty source or sink set".into(),
        ));
    }
    if !sources.is_disjoint(sinks) {
        return Err(Error::PreconditionViolated(
            "sources and sinks overlap".into(),
        ));
    }
    let r = max_flow(g, sources, sinks);
    let side: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| !r.source_reach.contains(v))
        .collect();
    let cut = CutSide::new(g, side);
    ensure_internal!(
        cut.cut_edges.len() == r.value,
        "min cut {} does not match flow value {}",
        cut.cut_edges.len(),
        r.value
    );
    Ok((r.value, cut))
}

/// The unique maximal side X with `e` in its boundary, |boundary(X)| = 3 and
/// X disjoint from `forbidden`. Requires a 3-edge-connected graph and exactly
/// one endpoint of `e` inside `forbidden`'s reach (the other endpoint seeds X).
pub fn maximal_3cut_side(
    g: &MultiGraph,
    e: EdgeId,
    forbidden: &BTreeSet<VertexId>,
) -> Result<CutSide> {
    let (a, b) = g.endpoints(e)?;
    let seed = match (forbidden.contains(&a), forbidden.contains(&b)) {
        (true, false) => b,
        (false, true) => a,
        _ => {
            return Err(Error::PreconditionViolated(
                "exactly one endpoint of the anchor edge must be forbidden".into(),
            ))
        }
    };
    let sinks: BTreeSet<VertexId> = [seed].into_iter().collect();
    let (value, cut) = min_edge_cut(g, forbidden, &sinks)?;
    if value != 3 {
        return Err(Error::NoQualifyingSide);
    }
    ensure_internal!(
        cut.side.contains(&seed),
        "maximal side lost its seed vertex"
    );
    ensure_internal!(
        cut.side.is_disjoint(forbidden),
        "maximal side touches forbidden vertices"
    );
    ensure_internal!(
        cut.cut_edges.contains(&e),
        "anchor edge not on the maximal side's boundary"
    );
    ensure_internal!(
        g.is_set_connected(&cut.side),
        "maximal side is not connected"
    );
    Ok(cut)
}

/// Uncrossing: the union of two overlapping 3-boundary sides again has a
/// 3-edge boundary when it is proper. Checked, not assumed.
pub fn submodular_union(g: &MultiGraph, a: &CutSide, b: &CutSide) -> Result<CutSide> {
    if a.cut_edges.len() != 3 || b.cut_edges.len() != 3 {
        return Err(Error::PreconditionViolated(
            "both sides need 3-edge boundaries".into(),
        ));
    }
    if a.side.is_disjoint(&b.side) {
        return Err(Error::PreconditionViolated("sides must overlap".into()));
    }
    let union: BTreeSet<VertexId> = a.side.union(&b.side).copied().collect();
    if union.len() == g.order() {
        return Err(Error::PreconditionViolated(
            "union covers the whole graph".into(),
        ));
    }
    if !is_3_connected(g) {
        return Err(Error::PreconditionViolated(
            "graph must be 3-connected".into(),
        ));
    }
    let out = CutSide::new(g, union);
    ensure_internal!(
        out.cut_edges.len() == 3,
        "uncrossing produced a {}-edge boundary",
        out.cut_edges.len()
    );
    Ok(out)
}

/// A 2-edge cut with `e` and `f` on opposite sides, when one exists. Adjacent
/// edges are never separated.
pub fn find_2_edge_cut_separating(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<Option<CutSide>> {
    if e == f {
        return Err(Error::PreconditionViolated("edges must be distinct".into()));
    }
    if g.edges_adjacent(e, f)? {
        return Ok(None);
    }
    let (a, b) = g.endpoints(e)?;
    let (c, d) = g.endpoints(f)?;
    let sources: BTreeSet<VertexId> = [a, b].into_iter().collect();
    let sinks: BTreeSet<VertexId> = [c, d].into_iter().collect();
    let (value, cut) = min_edge_cut(g, &sources, &sinks)?;
    Ok(if value <= 2 { Some(cut) } else { None })
}

/// Bridges of `g` after deleting `skip`, by lowlink DFS keyed on edge ids
/// (parallel edges are handled: only the entering edge id is skipped).
pub(crate) fn bridges_avoiding(g: &MultiGraph, skip: &BTreeSet<EdgeId>) -> Vec<EdgeId> {
    const UNSEEN: u32 = u32::MAX;
    struct Dfs<'a> {
        g: &'a MultiGraph,
        skip: &'a BTreeSet<EdgeId>,
        vs: &'a [VertexId],
        index: Vec<u32>,
        low: Vec<u32>,
        counter: u32,
        out: Vec<EdgeId>,
    }
    impl Dfs<'_> {
        fn idx(&self, v: VertexId) -> usize {
            self.vs.binary_search(&v).expect("vertex in graph")
        }
        fn run(&mut self, v: VertexId, via: Option<EdgeId>) {
            let vi = self.idx(v);
            self.index[vi] = self.counter;
            self.low[vi] = self.counter;
            self.counter += 1;
            for &(e, w) in self.g.incident(v) {
                if Some(e) == via || self.skip.contains(&e) {
                    continue;
                }
                let wi = self.idx(w);
                if self.index[wi] != UNSEEN {
                    self.low[vi] = self.low[vi].min(self.index[wi]);
                } else {
                    self.run(w, Some(e));
                    let lw = self.low[self.idx(w)];
                    self.low[vi] = self.low[vi].min(lw);
                    if lw > self.index[vi] {
                        self.out.push(e);
                    }
                }
            }
        }
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut dfs = Dfs {
        g,
        skip,
        vs: &vs,
        index: vec![UNSEEN; vs.len()],
        low: vec![UNSEEN; vs.len()],
        counter: 0,
        out: Vec::new(),
    };
    for &v in &vs {
        if dfs.index[dfs.idx(v)] == UNSEEN {
            dfs.run(v, None);
        }
    }
    dfs.out.sort_unstable();
    dfs.out
}

/// All 3-edge cuts of a 3-edge-connected graph, optionally filtered to cuts
/// containing a given edge. For each edge pair the bridges of the remaining
/// graph complete the triples; O(m^2) bridge passes, fine at desk scale.
pub fn enumerate_3_edge_cuts(g: &MultiGraph, containing: Option<EdgeId>) -> Result<Vec<CutSide>> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut triples: BTreeSet<[EdgeId; 3]> = BTreeSet::new();
    let mut scan = |x: EdgeId, y: EdgeId| {
        let skip: BTreeSet<EdgeId> = [x, y].into_iter().collect();
        for b in bridges_avoiding(g, &skip) {
            let mut t = [x, y, b];
            t.sort_unstable();
            triples.insert(t);
        }
    };
    match containing {
        Some(e) => {
            if !g.has_edge(e) {
                return Err(Error::UnknownEdge(e.0));
            }
            for &h in &edges {
                if h != e {
                    scan(e, h);
                }
            }
        }
        None => {
            for i in 0..edges.len() {
                for j in (i + 1)..edges.len() {
                    scan(edges[i], edges[j]);
                }
            }
        }
    }
    let mut out = Vec::new();
    for t in triples {
        if let Some(e) = containing {
            if !t.contains(&e) {
                continue;
            }
        }
        let skip: BTreeSet<EdgeId> = t.iter().copied().collect();
        let (a, _) = g.endpoints(t[0])?;
        let comp = g.component_avoiding(a, &skip);
        ensure_internal!(comp.len() < g.order(), "triple {t:?} does not disconnect");
        let co: BTreeSet<VertexId> = g.vertices().filter(|v| !comp.contains(v)).collect();
        ensure_internal!(
            g.is_set_connected(&co) && g.is_set_connected(&comp),
            "3-edge cut must leave exactly two components"
        );
        // Deterministic chosen side: fewer vertices, then smaller min id.
        let side = if (comp.len(), comp.iter().next()) <= (co.len(), co.iter().next()) {
            comp
        } else {
            co
        };
        let cut = CutSide {
            side,
            cut_edges: skip,
        };
        ensure_internal!(
            g.boundary(&cut.side) == cut.cut_edges,
            "side/boundary mismatch"
        );
        out.push(cut);
    }
    out.sort_by(|x, y| {
        (x.side.len(), x.cut_edges.iter().collect::<Vec<_>>())
            .cmp(&(y.side.len(), y.cut_edges.iter().collect::<Vec<_>>()))
    });
    Ok(out)
}

/// First 2-edge cut in lexicographic pair order, if any.
pub fn any_2_edge_cut(g: &MultiGraph) -> Option<(EdgeId, EdgeId, CutSide)> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let skip: BTreeSet<EdgeId> = [edges[i], edges[j]].into_iter().collect();
            let start = g.vertices().next()?;
            let comp = g.component_avoiding(start, &skip);
            if comp.len() < g.order() {
                let side = CutSide::new(g, comp);
                if side.cut_edges.len() <= 2 {
                    return Some((edges[i], edges[j], side));
                }
            }
        }
    }
    None
}

/// Does every 2-edge cut of `g` avoid `e`,`f` and separate them? Vacuously
/// true for 3-edge-connected graphs.
pub fn every_2_cut_separates(g: &MultiGraph, e: EdgeId, f: EdgeId) -> bool {
    if edge_connectivity_at_least(g, 3) {
        return true;
    }
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (x, y) = (edges[i], edges[j]);
            let skip: BTreeSet<EdgeId> = [x, y].into_iter().collect();
            let start = g.vertices().next().unwrap();
            let comp = g.component_avoiding(start, &skip);
            if comp.len() == g.order() {
                continue;
            }
            let side = CutSide::new(g, comp);
            if side.cut_edges.len() > 2 {
                continue; // not an actual 2-cut, a superset was removed
            }
            if x == e || x == f || y == e || y == f {
                return false;
            }
            if !side.separates(g, e, f) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn k4_min_cut_three() {
        let (g, _) = corpus::k4();
        let mut vs = g.vertices();
        let a = vs.next().unwrap();
        let b = vs.next().unwrap();
        let (value, _) = min_edge_cut(&g, &[a].into(), &[b].into()).unwrap();
        assert_eq!(value, 3);
    }

    #[test]
    fn prism_triangle_to_triangle_cut() {
        let p = corpus::prism();
        let s: BTreeSet<_> = p.triangle_a.iter().copied().collect();
        let t: BTreeSet<_> = p.triangle_b.iter().copied().collect();
        let (value, side) = min_edge_cut(&p.graph, &s, &t).unwrap();
        assert_eq!(value, 3);
        assert_eq!(side.side, t);
    }

    #[test]
    fn disconnected_pieces_flow_zero() {
        use crate::graph::{EdgeId, MultiGraph, VertexId};
        let vs = [VertexId(0), VertexId(1), VertexId(2), VertexId(3)];
        let g = MultiGraph::from_parts(vs, [(EdgeId(0), vs[0], vs[1]), (EdgeId(1), vs[2], vs[3])])
            .unwrap();
        let (value, _) = min_edge_cut(&g, &[vs[0]].into(), &[vs[2]].into()).unwrap();
        assert_eq!(value, 0);
    }

    #[test]
    fn maximal_side_k4_singleton() {
        let (g, _) = corpus::k4();
        let vs: Vec<_> = g.vertices().collect();
        let (u1, d) = (vs[0], vs[3]);
        let e = g
            .edge_ids()
            .find(|&e| g.is_incident(e, u1) && g.is_incident(e, d))
            .unwrap();
        let forbidden: BTreeSet<_> = vs[..3].iter().copied().collect();
        let side = maximal_3cut_side(&g, e, &forbidden).unwrap();
        assert_eq!(side.side, [d].into());
    }

    #[test]
    fn maximal_side_prism_other_triangle() {
        let p = corpus::prism();
        let e = p.matching[0];
        let forbidden: BTreeSet<_> = p.triangle_a.iter().copied().collect();
        let side = maximal_3cut_side(&p.graph, e, &forbidden).unwrap();
        assert_eq!(side.side, p.triangle_b.iter().copied().collect());
    }

    #[test]
    fn maximal_side_prism_complement() {
        let p = corpus::prism();
        let e = p.matching[0];
        let a = p.triangle_a[0];
        let forbidden: BTreeSet<_> = [a].into_iter().collect();
        let side = maximal_3cut_side(&p.graph, e, &forbidden).unwrap();
        let expect: BTreeSet<_> = p.graph.vertices().filter(|&v| v != a).collect();
        assert_eq!(side.side, expect);
    }

    #[test]
    fn submodular_union_idempotent_and_nested() {
        let p = corpus::petersen();
        let vs: Vec<_> = p.vertices().collect();
        let a = CutSide::new(&p, [vs[0]].into());
        assert_eq!(submodular_union(&p, &a, &a).unwrap().side, a.side);
    }

    #[test]
    fn two_cut_separation() {
        let b = corpus::two_blocks_bridged();
        let got = find_2_edge_cut_separating(&b.graph, b.e_in_a, b.f_in_b).unwrap();
        let side = got.expect("expected a separating 2-cut");
        assert_eq!(side.cut_edges, b.bridge_pair.iter().copied().collect());
    }

    #[test]
    fn three_connected_has_no_separating_two_cut() {
        let p = corpus::petersen();
        let es: Vec<_> = p.edge_ids().collect();
        let pair = es
            .iter()
            .find(|&&f| !p.edges_adjacent(es[0], f).unwrap())
            .copied()
            .unwrap();
        assert!(find_2_edge_cut_separating(&p, es[0], pair)
            .unwrap()
            .is_none());
    }

    #[test]
    fn adjacent_edges_never_separated() {
        let (g, _) = corpus::k4();
        let es: Vec<_> = g.edge_ids().collect();
        let f = es
            .iter()
            .find(|&&f| f != es[0] && g.edges_adjacent(es[0], f).unwrap())
            .unwrap();
        assert!(find_2_edge_cut_separating(&g, es[0], *f).unwrap().is_none());
    }

    #[test]
    fn k4_three_cuts_are_the_four_stars() {
        let (g, _) = corpus::k4();
        let cuts = enumerate_3_edge_cuts(&g, None).unwrap();
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(|c| c.side.len() == 1));
    }

    #[test]
    fn prism_three_cuts_matching_plus_stars() {
        let p = corpus::prism();
        let cuts = enumerate_3_edge_cuts(&p.graph, None).unwrap();
        assert_eq!(cuts.len(), 7);
        let nontrivial: Vec<_> = cuts.iter().filter(|c| c.is_nontrivial(&p.graph)).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(
            nontrivial[0].cut_edges,
            p.matching.iter().copied().collect()
        );
    }

    #[test]
    fn petersen_only_trivial_cuts() {
        let p = corpus::petersen();
        let cuts = enumerate_3_edge_cuts(&p, None).unwrap();
        assert_eq!(cuts.len(), 10);
        assert!(cuts.iter().all(|c| !c.is_nontrivial(&p)));
    }

    #[test]
    fn connectivity_checks() {
        let p = corpus::prism();
        assert!(is_3_connected(&p.graph));
        let (theta, _) = corpus::theta();
        assert!(is_3_connected(&theta));
        assert!(is_3_connected(&corpus::petersen()));
    }
}
