//! Graph surgeries with provenance: contraction, suppression (⊖) and
//! insertion (⊕), plus the derivation window that tracks, for every derived
//! edge, the base-graph path it stands for.
//!
//! A [`Window`] starts as an identity view of a base graph and mutates
//! through surgery steps. Each derived edge carries a *realization*: an
//! alternating sequence of base edges and contracted pieces that a traversal
//! of the edge corresponds to in the base graph. Each derived vertex knows
//! whether it is a base vertex, a contracted piece, or a subdivision point.
//! Routing a cycle of the derived graph through the window produces an
//! ordered list of base edges and piece visits; completing the visits (the
//! recursive part) is the cycle engine's job, not the window's.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};

/// One base-path element of a derived edge's realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RouteItem {
    Edge(EdgeId),
    /// Passage through a contracted piece, identified by window piece index.
    Piece(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexOrigin {
    Real(VertexId),
    Piece(usize),
    /// Subdivision point created by a plain insertion; sits on a base edge.
    OnEdge(EdgeId),
}

/// Element of a routed (lifted) cycle in the base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftItem {
    Edge(EdgeId),
    /// The cycle enters the piece via `entry`, must leave via `exit`; the
    /// path across the piece is not yet chosen.
    Visit {
        piece: BTreeSet<VertexId>,
        entry: EdgeId,
        exit: EdgeId,
    },
}

/// Replayable surgery step, in base-or-derived edge/vertex ids as applicable
/// at the time of application.
#[derive(Clone, Debug, Serialize)]
pub enum ScriptStep {
    Contract(Vec<BTreeSet<VertexId>>),
    Suppress(EdgeId),
    Insert(EdgeId, EdgeId),
    DeleteVertices(BTreeSet<VertexId>),
    SmoothAll,
    SubdivideAtPiece {
        edge: EdgeId,
        piece: usize,
    },
    AddEdge {
        u: VertexId,
        v: VertexId,
        realization: Vec<RouteItem>,
    },
}

/// An ordered list of surgery steps; replaying it from the base graph
/// reproduces the derived graph bit-exactly (ids are allocated
/// deterministically above the base graph's high-water marks).
#[derive(Clone, Debug, Default, Serialize)]
pub struct DerivationScript {
    pub steps: Vec<ScriptStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurgeryKind {
    Contract,
    Suppress,
    Insert,
}

/// Per-step provenance: how new edges and vertices relate to their parents.
/// Edges and vertices not mentioned map to themselves.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub kind: SurgeryKind,
    /// New edge -> ordered parent edge path (suppression), single parent
    /// (insertion halves), or empty (the inserted edge itself).
    pub edge_map: BTreeMap<EdgeId, Vec<EdgeId>>,
    /// New vertex -> parent vertex set (contraction) or empty (subdivision).
    pub vertex_map: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

#[derive(Clone)]
pub struct Window {
    base: MultiGraph,
    graph: MultiGraph,
    origin: BTreeMap<VertexId, VertexOrigin>,
    realization: BTreeMap<EdgeId, Vec<RouteItem>>,
    pieces: Vec<BTreeSet<VertexId>>,
    script: DerivationScript,
}

impl Window {
    pub fn new(base: &MultiGraph) -> Window {
        let graph = base.clone();
        let origin = base
            .vertices()
            .map(|v| (v, VertexOrigin::Real(v)))
            .collect();
        let realization = base
            .edge_ids()
            .map(|e| (e, vec![RouteItem::Edge(e)]))
            .collect();
        Window {
            base: base.clone(),
            graph,
            origin,
            realization,
            pieces: Vec::new(),
            script: DerivationScript::default(),
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    pub fn script(&self) -> &DerivationScript {
        &self.script
    }

    pub fn piece_set(&self, idx: usize) -> &BTreeSet<VertexId> {
        &self.pieces[idx]
    }

    pub fn origin(&self, v: VertexId) -> Option<&VertexOrigin> {
        self.origin.get(&v)
    }

    pub fn realization_of(&self, e: EdgeId) -> Option<&[RouteItem]> {
        self.realization.get(&e).map(|r| r.as_slice())
    }

    /// The derived edge whose realization contains the base edge `b`.
    pub fn edge_containing(&self, b: EdgeId) -> Option<EdgeId> {
        self.realization
            .iter()
            .find(|(_, r)| r.contains(&RouteItem::Edge(b)))
            .map(|(&e, _)| e)
    }

    /// Piece index of a derived vertex, if it is a piece.
    pub fn piece_of_vertex(&self, v: VertexId) -> Option<usize> {
        match self.origin.get(&v) {
            Some(VertexOrigin::Piece(p)) => Some(*p),
            _ => None,
        }
    }

    /// Weights for the derived graph: base vertices inherit, pieces and
    /// subdivision points weigh 0.
    pub fn derived_weights(&self, w: &WeightMap) -> WeightMap {
        let mut out = WeightMap::new();
        for v in self.graph.vertices() {
            if let Some(VertexOrigin::Real(b)) = self.origin.get(&v) {
                out.set(v, w.get(*b));
            }
        }
        out
    }

    /// Base vertex set a derived vertex stands for.
    fn base_set_of(&self, v: VertexId) -> BTreeSet<VertexId> {
        match &self.origin[&v] {
            VertexOrigin::Real(b) => [*b].into_iter().collect(),
            VertexOrigin::Piece(p) => self.pieces[*p].clone(),
            VertexOrigin::OnEdge(_) => BTreeSet::new(),
        }
    }

    /// Contract each set (of current vertex ids) to one fresh vertex.
    /// Internal edges are dropped, parallel edges preserved.
    pub fn contract(&mut self, sets: &[BTreeSet<VertexId>]) -> Result<Vec<VertexId>> {
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::PreconditionViolated(
                    "empty contraction piece".into(),
                ));
            }
            for v in s {
                if !self.graph.has_vertex(*v) {
                    return Err(Error::UnknownVertex(v.0));
                }
            }
            if !self.graph.is_set_connected(s) {
                return Err(Error::DisconnectedPiece);
            }
            for t in &sets[..i] {
                if !s.is_disjoint(t) {
                    return Err(Error::OverlappingPieces);
                }
            }
        }
        self.script.steps.push(ScriptStep::Contract(sets.to_vec()));
        let mut new_vertices = Vec::new();
        for s in sets {
            let mut base_set = BTreeSet::new();
            for v in s {
                base_set.extend(self.base_set_of(*v));
            }
            let piece_idx = self.pieces.len();
            self.pieces.push(base_set);
            let nv = self.graph.alloc_vertex();
            self.origin.insert(nv, VertexOrigin::Piece(piece_idx));
            // Drop internal edges, reattach crossing edges.
            let incident: Vec<EdgeId> = s
                .iter()
                .flat_map(|v| self.graph.incident_edges(*v))
                .collect();
            for e in incident {
                if !self.graph.has_edge(e) {
                    continue; // already removed as internal
                }
                let (a, b) = self.graph.endpoints(e)?;
                match (s.contains(&a), s.contains(&b)) {
                    (true, true) => {
                        self.graph.remove_edge(e)?;
                        self.realization.remove(&e);
                    }
                    (true, false) => self.graph.reattach_endpoint(e, a, nv)?,
                    (false, true) => self.graph.reattach_endpoint(e, b, nv)?,
                    (false, false) => unreachable!(),
                }
            }
            for v in s {
                self.graph.remove_isolated_vertex(*v)?;
                self.origin.remove(v);
            }
            new_vertices.push(nv);
        }
        Ok(new_vertices)
    }

    /// Realization of `e` oriented to run from `from` to the other endpoint.
    fn oriented_realization(&self, e: EdgeId, from: VertexId) -> Result<Vec<RouteItem>> {
        let (a, b) = self.graph.endpoints(e)?;
        let r = self.realization.get(&e).ok_or(Error::ForeignEdge(e.0))?;
        if from == a {
            Ok(r.clone())
        } else if from == b {
            Ok(r.iter().rev().copied().collect())
        } else {
            Err(Error::Internal(format!(
                "{from:?} not an endpoint of {e:?}"
            )))
        }
    }

    /// Smooth out a degree-2 vertex, merging its two incident edges. The
    /// merged realization threads through the vertex (a piece marker when
    /// the vertex is a contracted piece).
    pub fn smooth_vertex(&mut self, x: VertexId) -> Result<EdgeId> {
        let inc: Vec<EdgeId> = self.graph.incident_edges(x).collect();
        if inc.len() != 2 {
            return Err(Error::PreconditionViolated(format!(
                "{x:?} has degree {}, cannot smooth",
                inc.len()
            )));
        }
        let (p, q) = (inc[0], inc[1]);
        if p == q {
            return Err(Error::ParallelRemainder); // a loop at x, cannot occur
        }
        let pa = self.graph.other_endpoint(p, x)?;
        let qa = self.graph.other_endpoint(q, x)?;
        if pa == qa {
            return Err(Error::ParallelRemainder);
        }
        let mut real = self.oriented_realization(p, pa)?;
        match &self.origin[&x] {
            VertexOrigin::Real(_) => {}
            VertexOrigin::Piece(idx) => real.push(RouteItem::Piece(*idx)),
            VertexOrigin::OnEdge(_) => {}
        }
        real.extend(self.oriented_realization(q, x)?);
        self.graph.remove_edge(p)?;
        self.graph.remove_edge(q)?;
        self.realization.remove(&p);
        self.realization.remove(&q);
        self.graph.remove_isolated_vertex(x)?;
        self.origin.remove(&x);
        let m = self.graph.alloc_edge(pa, qa)?;
        self.realization.insert(m, real);
        Ok(m)
    }

    /// The ⊖ operation: delete `e` and smooth out both endpoints. Requires
    /// both endpoints to have degree 3 beforehand.
    pub fn suppress(&mut self, e: EdgeId) -> Result<Vec<EdgeId>> {
        let (a, b) = self.graph.endpoints(e)?;
        if self.graph.degree(a) != 3 || self.graph.degree(b) != 3 {
            return Err(Error::PreconditionViolated(
                "suppression endpoints must have degree 3".into(),
            ));
        }
        self.script.steps.push(ScriptStep::Suppress(e));
        self.graph.remove_edge(e)?;
        self.realization.remove(&e);
        let mut merged = Vec::new();
        for x in [a, b] {
            if self.graph.has_vertex(x) && self.graph.degree(x) == 2 {
                merged.push(self.smooth_vertex(x)?);
            }
        }
        Ok(merged)
    }

    /// Delete vertices together with all incident edges.
    pub fn delete_vertices(&mut self, vs: &BTreeSet<VertexId>) -> Result<()> {
        self.script
            .steps
            .push(ScriptStep::DeleteVertices(vs.clone()));
        for &v in vs {
            if !self.graph.has_vertex(v) {
                return Err(Error::UnknownVertex(v.0));
            }
            for e in self.graph.incident_edges(v).collect::<Vec<_>>() {
                self.graph.remove_edge(e)?;
                self.realization.remove(&e);
            }
            self.graph.remove_isolated_vertex(v)?;
            self.origin.remove(&v);
        }
        Ok(())
    }

    /// Smooth every degree-2 vertex (ascending id, rescanning after each
    /// merge). Returns the merged edges created.
    pub fn smooth_all_degree_two(&mut self) -> Result<Vec<EdgeId>> {
        self.script.steps.push(ScriptStep::SmoothAll);
        let mut out = Vec::new();
        loop {
            let next = self.graph.vertices().find(|&v| self.graph.degree(v) == 2);
            match next {
                Some(v) => out.push(self.smooth_vertex(v)?),
                None => return Ok(out),
            }
        }
    }

    /// Split edge `d` at its unique passage through piece `piece`; the new
    /// vertex stands for the piece, the halves carry the split realization.
    pub fn subdivide_at_piece(
        &mut self,
        d: EdgeId,
        piece: usize,
    ) -> Result<(VertexId, EdgeId, EdgeId)> {
        let r = self
            .realization
            .get(&d)
            .ok_or(Error::ForeignEdge(d.0))?
            .clone();
        let hits: Vec<usize> = r
            .iter()
            .enumerate()
            .filter(|(_, it)| **it == RouteItem::Piece(piece))
            .map(|(i, _)| i)
            .collect();
        ensure_internal!(
            hits.len() == 1,
            "edge {d:?} passes piece {piece} {} times",
            hits.len()
        );
        let idx = hits[0];
        self.script
            .steps
            .push(ScriptStep::SubdivideAtPiece { edge: d, piece });
        let (a, b) = self.graph.endpoints(d)?;
        self.graph.remove_edge(d)?;
        self.realization.remove(&d);
        let s = self.graph.alloc_vertex();
        self.origin.insert(s, VertexOrigin::Piece(piece));
        let h1 = self.graph.alloc_edge(a, s)?;
        self.realization.insert(h1, r[..idx].to_vec());
        let h2 = self.graph.alloc_edge(s, b)?;
        self.realization.insert(h2, r[idx + 1..].to_vec());
        Ok((s, h1, h2))
    }

    /// Add a fresh edge whose base realization the caller supplies
    /// (oriented from `u` to `v`).
    pub fn add_edge_real(
        &mut self,
        u: VertexId,
        v: VertexId,
        realization: Vec<RouteItem>,
    ) -> Result<EdgeId> {
        self.script.steps.push(ScriptStep::AddEdge {
            u,
            v,
            realization: realization.clone(),
        });
        let e = self.graph.alloc_edge(u, v)?;
        self.realization.insert(e, realization);
        Ok(e)
    }

    /// The ⊕ operation without positional information: subdivide `ei` and
    /// `ej` and join the two new vertices.
    pub fn insert(&mut self, ei: EdgeId, ej: EdgeId) -> Result<InsertOutcome> {
        if ei == ej {
            return Err(Error::SameEdge);
        }
        for e in [ei, ej] {
            if !self.graph.has_edge(e) {
                return Err(Error::UnknownEdge(e.0));
            }
        }
        self.script.steps.push(ScriptStep::Insert(ei, ej));
        let s1 = self.split_plain(ei)?;
        let s2 = self.split_plain(ej)?;
        let bridge = self.graph.alloc_edge(s1.0, s2.0)?;
        self.realization.insert(bridge, Vec::new());
        Ok(InsertOutcome {
            bridge,
            sub1: s1.0,
            sub2: s2.0,
            halves1: (s1.1, s1.2),
            halves2: (s2.1, s2.2),
        })
    }

    fn split_plain(&mut self, d: EdgeId) -> Result<(VertexId, EdgeId, EdgeId)> {
        let r = self
            .realization
            .get(&d)
            .ok_or(Error::ForeignEdge(d.0))?
            .clone();
        let (a, b) = self.graph.endpoints(d)?;
        // Position the split after the whole realization: the first half
        // carries the base path, the second is empty. Identity edges thus
        // split into [edge] / [].
        let marker = match r.last() {
            Some(RouteItem::Edge(e)) => *e,
            _ => return Err(Error::Internal(format!("cannot plain-split {d:?}"))),
        };
        self.graph.remove_edge(d)?;
        self.realization.remove(&d);
        let s = self.graph.alloc_vertex();
        self.origin.insert(s, VertexOrigin::OnEdge(marker));
        let h1 = self.graph.alloc_edge(a, s)?;
        self.realization.insert(h1, r);
        let h2 = self.graph.alloc_edge(s, b)?;
        self.realization.insert(h2, Vec::new());
        Ok((s, h1, h2))
    }

    /// Route a cycle of the derived graph down to the base graph: derived
    /// edges expand to their realizations, passages through piece vertices
    /// and piece markers become [`LiftItem::Visit`]s with their entry and
    /// exit boundary edges.
    pub fn route_cycle(&self, cycle: &Cycle) -> Result<Vec<LiftItem>> {
        cycle.validate(&self.graph)?;
        #[derive(Clone, Copy, PartialEq)]
        enum Flat {
            E(EdgeId),
            P(usize),
        }
        let k = cycle.len();
        let mut flat: Vec<Flat> = Vec::new();
        for i in 0..k {
            match &self.origin[&cycle.vertices()[i]] {
                VertexOrigin::Piece(p) => flat.push(Flat::P(*p)),
                VertexOrigin::Real(_) | VertexOrigin::OnEdge(_) => {}
            }
            let d = cycle.edges()[i];
            let from = cycle.vertices()[i];
            let r = self.oriented_realization(d, from)?;
            if r.is_empty() && !matches!(self.origin[&from], VertexOrigin::OnEdge(_)) {
                return Err(Error::PreconditionViolated(format!(
                    "cycle uses inserted edge {d:?} with no base realization"
                )));
            }
            for item in r {
                match item {
                    RouteItem::Edge(e) => flat.push(Flat::E(e)),
                    RouteItem::Piece(p) => flat.push(Flat::P(p)),
                }
            }
        }
        ensure_internal!(!flat.is_empty(), "empty routed cycle");
        // Inserted bridges (empty realizations between subdivision points)
        // leave no trace in `flat`; the continuity of the result is checked
        // by the final cycle assembly, which will fail loudly if a bridge
        // was traversed without a caller-supplied realization.
        let n = flat.len();
        let mut seen_pieces = BTreeSet::new();
        let mut seen_edges = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match flat[i] {
                Flat::E(e) => {
                    ensure_internal!(seen_edges.insert(e), "base edge {e:?} routed twice");
                    out.push(LiftItem::Edge(e));
                }
                Flat::P(p) => {
                    ensure_internal!(seen_pieces.insert(p), "piece {p} visited twice");
                    let prev = flat[(i + n - 1) % n];
                    let next = flat[(i + 1) % n];
                    let (Flat::E(entry), Flat::E(exit)) = (prev, next) else {
                        return Err(Error::Internal("adjacent piece passages in route".into()));
                    };
                    out.push(LiftItem::Visit {
                        piece: self.pieces[p].clone(),
                        entry,
                        exit,
                    });
                }
            }
        }
        Ok(out)
    }
}

pub struct InsertOutcome {
    pub bridge: EdgeId,
    pub sub1: VertexId,
    pub sub2: VertexId,
    pub halves1: (EdgeId, EdgeId),
    pub halves2: (EdgeId, EdgeId),
}

/// Contract each connected vertex set of `sets` to a single fresh vertex.
pub fn contract(g: &MultiGraph, sets: &[BTreeSet<VertexId>]) -> Result<(MultiGraph, Provenance)> {
    let mut w = Window::new(g);
    let new = w.contract(sets)?;
    let vertex_map = new
        .iter()
        .map(|&v| {
            let p = w.piece_of_vertex(v).unwrap();
            (v, w.piece_set(p).clone())
        })
        .collect();
    Ok((
        w.graph.clone(),
        Provenance {
            kind: SurgeryKind::Contract,
            edge_map: BTreeMap::new(),
            vertex_map,
        },
    ))
}

/// The ⊖ operation on a standalone graph.
pub fn suppress_edge(g: &MultiGraph, e: EdgeId) -> Result<(MultiGraph, Provenance)> {
    let mut w = Window::new(g);
    let merged = w.suppress(e)?;
    let edge_map = merged
        .iter()
        .map(|&m| {
            let path: Vec<EdgeId> = w
                .realization_of(m)
                .unwrap()
                .iter()
                .map(|it| match it {
                    RouteItem::Edge(e) => *e,
                    RouteItem::Piece(_) => unreachable!("no pieces in a fresh window"),
                })
                .collect();
            (m, path)
        })
        .collect();
    Ok((
        w.graph.clone(),
        Provenance {
            kind: SurgeryKind::Suppress,
            edge_map,
            vertex_map: BTreeMap::new(),
        },
    ))
}

/// The ⊕ operation on a standalone graph: subdivide `ei` and `ej`, join the
/// new vertices by a fresh edge. Returns the fresh edge id alongside.
pub fn insert_edge(
    g: &MultiGraph,
    ei: EdgeId,
    ej: EdgeId,
) -> Result<(MultiGraph, Provenance, EdgeId)> {
    let mut w = Window::new(g);
    let out = w.insert(ei, ej)?;
    let mut edge_map = BTreeMap::new();
    edge_map.insert(out.halves1.0, vec![ei]);
    edge_map.insert(out.halves1.1, vec![ei]);
    edge_map.insert(out.halves2.0, vec![ej]);
    edge_map.insert(out.halves2.1, vec![ej]);
    edge_map.insert(out.bridge, Vec::new());
    let mut vertex_map = BTreeMap::new();
    vertex_map.insert(out.sub1, BTreeSet::new());
    vertex_map.insert(out.sub2, BTreeSet::new());
    Ok((
        w.graph.clone(),
        Provenance {
            kind: SurgeryKind::Insert,
            edge_map,
            vertex_map,
        },
        out.bridge,
    ))
}

/// Replay a script from a base graph.
pub fn replay(base: &MultiGraph, script: &DerivationScript) -> Result<Window> {
    let mut w = Window::new(base);
    for step in &script.steps {
        match step {
            ScriptStep::Contract(sets) => {
                w.contract(sets)?;
            }
            ScriptStep::Suppress(e) => {
                w.suppress(*e)?;
            }
            ScriptStep::Insert(a, b) => {
                w.insert(*a, *b)?;
            }
            ScriptStep::DeleteVertices(vs) => w.delete_vertices(vs)?,
            ScriptStep::SmoothAll => {
                w.smooth_all_degree_two()?;
            }
            ScriptStep::SubdivideAtPiece { edge, piece } => {
                w.subdivide_at_piece(*edge, *piece)?;
            }
            ScriptStep::AddEdge { u, v, realization } => {
                w.add_edge_real(*u, *v, realization.clone())?;
            }
        }
    }
    Ok(w)
}

/// Lift a cycle of a script's derived graph back to the base graph, as base
/// edges plus piece visits awaiting completion.
pub fn lift_cycle(
    base: &MultiGraph,
    script: &DerivationScript,
    cycle: &Cycle,
) -> Result<Vec<LiftItem>> {
    let w = replay(base, script)?;
    w.route_cycle(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn edge_between(g: &MultiGraph, u: VertexId, v: VertexId) -> EdgeId {
        g.edge_ids()
            .find(|&e| g.is_incident(e, u) && g.is_incident(e, v))
            .unwrap()
    }

    #[test]
    fn contract_prism_triangle_gives_k4() {
        let p = corpus::prism();
        let set: BTreeSet<_> = p.triangle_a.iter().copied().collect();
        let (g, prov) = contract(&p.graph, std::slice::from_ref(&set)).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_cubic());
        assert!(!g.has_parallel_edges());
        let (&nv, parents) = prov.vertex_map.iter().next().unwrap();
        assert_eq!(parents, &set);
        assert_eq!(g.degree(nv), 3);
    }

    #[test]
    fn contract_k4_triangle_gives_theta() {
        let (g, _) = corpus::k4();
        let vs: Vec<_> = g.vertices().collect();
        let set: BTreeSet<_> = vs[..3].iter().copied().collect();
        let (h, _) = contract(&g, &[set]).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.size(), 3);
        assert!(h.is_cubic());
    }

    #[test]
    fn contract_rejects_overlap() {
        let (g, _) = corpus::k4();
        let vs: Vec<_> = g.vertices().collect();
        let a: BTreeSet<_> = [vs[0], vs[1]].into_iter().collect();
        let b: BTreeSet<_> = [vs[1], vs[2]].into_iter().collect();
        assert!(matches!(
            contract(&g, &[a, b]),
            Err(Error::OverlappingPieces)
        ));
    }

    #[test]
    fn suppress_k4_edge_gives_theta() {
        let (g, _) = corpus::k4();
        let e = g.edge_ids().next().unwrap();
        let (h, prov) = suppress_edge(&g, e).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.size(), 3);
        assert_eq!(prov.edge_map.len(), 2);
        for path in prov.edge_map.values() {
            assert_eq!(path.len(), 2);
        }
    }

    #[test]
    fn suppress_theta_rejected() {
        let (g, _) = corpus::theta();
        let e = g.edge_ids().next().unwrap();
        assert!(matches!(
            suppress_edge(&g, e),
            Err(Error::ParallelRemainder)
        ));
    }

    #[test]
    fn suppress_prism_matching_edge() {
        let p = corpus::prism();
        let [a, b, c] = p.triangle_a;
        let [a2, b2, c2] = p.triangle_b;
        let e = edge_between(&p.graph, a, a2);
        let (h, prov) = suppress_edge(&p.graph, e).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_cubic());
        let paths: Vec<Vec<EdgeId>> = prov.edge_map.values().cloned().collect();
        let ba = edge_between(&p.graph, b, a);
        let ac = edge_between(&p.graph, a, c);
        let ba2 = edge_between(&p.graph, b2, a2);
        let a2c2 = edge_between(&p.graph, a2, c2);
        let mut want = vec![
            vec![ba, ac].into_iter().collect::<BTreeSet<_>>(),
            vec![ba2, a2c2].into_iter().collect(),
        ];
        let mut got: Vec<BTreeSet<EdgeId>> =
            paths.iter().map(|p| p.iter().copied().collect()).collect();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn insert_into_theta_gives_k4() {
        let (g, _) = corpus::theta();
        let es: Vec<_> = g.edge_ids().collect();
        let (h, _, bridge) = insert_edge(&g, es[0], es[1]).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.size(), 6);
        assert!(h.is_cubic());
        assert!(!h.has_parallel_edges());
        assert!(h.has_edge(bridge));
    }

    #[test]
    fn insert_same_edge_rejected() {
        let (g, _) = corpus::theta();
        let e = g.edge_ids().next().unwrap();
        assert!(matches!(insert_edge(&g, e, e), Err(Error::SameEdge)));
    }

    #[test]
    fn insert_then_suppress_restores_structurally() {
        let p = corpus::petersen();
        let es: Vec<_> = p.edge_ids().collect();
        let (h, iprov, bridge) = insert_edge(&p, es[0], es[7]).unwrap();
        let (back, sprov) = suppress_edge(&h, bridge).unwrap();
        assert_eq!(back.order(), p.order());
        assert_eq!(back.size(), p.size());
        // Composing the suppression paths with the insertion provenance
        // recovers exactly the two subdivided base edges.
        let mut restored: Vec<EdgeId> = sprov
            .edge_map
            .values()
            .flat_map(|path| path.iter())
            .flat_map(|e| iprov.edge_map.get(e).cloned().unwrap_or_else(|| vec![*e]))
            .filter(|e| p.has_edge(*e))
            .collect();
        restored.sort_unstable();
        restored.dedup();
        assert_eq!(restored, vec![es[0], es[7]]);
        // Every surviving edge of the base is present untouched.
        for e in p.edge_ids() {
            if e != es[0] && e != es[7] {
                assert!(back.has_edge(e));
            }
        }
    }

    #[test]
    fn lift_through_empty_script_is_identity() {
        let (g, _) = corpus::k4();
        let vs: Vec<_> = g.vertices().collect();
        let cyc = Cycle::from_edge_set(
            &g,
            &[
                edge_between(&g, vs[0], vs[1]),
                edge_between(&g, vs[1], vs[2]),
                edge_between(&g, vs[2], vs[0]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let lifted = lift_cycle(&g, &DerivationScript::default(), &cyc).unwrap();
        assert_eq!(lifted.len(), 3);
        assert!(lifted.iter().all(|it| matches!(it, LiftItem::Edge(_))));
    }

    #[test]
    fn lift_through_suppression_expands_merged_edges() {
        let (g, _) = corpus::k4();
        let e = g.edge_ids().next().unwrap();
        let mut w = Window::new(&g);
        let merged = w.suppress(e).unwrap();
        let cyc = Cycle::from_edge_list(&w.graph, vec![merged[0], merged[1]]).unwrap();
        let lifted = w.route_cycle(&cyc).unwrap();
        let edges: Vec<EdgeId> = lifted
            .iter()
            .map(|it| match it {
                LiftItem::Edge(e) => *e,
                _ => panic!("unexpected visit"),
            })
            .collect();
        assert_eq!(edges.len(), 4);
        let final_cycle = Cycle::from_edge_list(&g, edges).unwrap();
        assert_eq!(final_cycle.len(), 4);
    }

    #[test]
    fn lift_through_contraction_reports_visit() -> Result<()> {
        let p = corpus::prism();
        let set: BTreeSet<_> = p.triangle_a.iter().copied().collect();
        let mut w = Window::new(&p.graph);
        let nv = w.contract(std::slice::from_ref(&set))?[0];
        // Hamilton cycle of the contracted K4 through the piece vertex.
        let g = w.graph().clone();
        let others: Vec<_> = g.vertices().filter(|&v| v != nv).collect();
        let cyc = Cycle::from_edge_set(
            &g,
            &[
                edge_between(&g, nv, others[0]),
                edge_between(&g, others[0], others[1]),
                edge_between(&g, others[1], others[2]),
                edge_between(&g, others[2], nv),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let lifted = w.route_cycle(&cyc).unwrap();
        let visits: Vec<_> = lifted
            .iter()
            .filter_map(|it| match it {
                LiftItem::Visit { piece, entry, exit } => Some((piece.clone(), *entry, *exit)),
                _ => None,
            })
            .collect();
        assert_eq!(visits.len(), 1);
        assert_eq!(visits[0].0, set);
        assert!(p.matching.contains(&visits[0].1));
        assert!(p.matching.contains(&visits[0].2));
        Ok(())
    }
}
