//! Identity-preserving cubic multigraphs.
//!
//! Vertices and edges carry opaque integer ids that are never reused within
//! one derivation chain: surgeries allocate fresh ids above the high-water
//! marks stored in the graph. Multiple edges between the same pair of
//! vertices are allowed, loops are rejected at construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}
impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Vertex-weighted multigraph. Immutable after construction: all surgeries
/// return new values. Stored as sorted vectors: id order is iteration
/// order, and clones are cheap for the surgery engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
    next_vertex: u32,
    next_edge: u32,
}

impl MultiGraph {
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        let mut es: Vec<(EdgeId, VertexId, VertexId)> = edges.into_iter().collect();
        es.sort_unstable_by_key(|(id, _, _)| *id);
        for win in es.windows(2) {
            if win[0].0 == win[1].0 {
                return Err(Error::Input(format!("duplicate edge id {}", win[0].0)));
            }
        }
        for &(id, u, v) in &es {
            if u == v {
                return Err(Error::LoopRejected(id.0));
            }
            if vs.binary_search(&u).is_err() {
                return Err(Error::UnknownVertex(u.0));
            }
            if vs.binary_search(&v).is_err() {
                return Err(Error::UnknownVertex(v.0));
            }
        }
        let next_vertex = vs.last().map(|v| v.0 + 1).unwrap_or(0);
        let next_edge = es.last().map(|e| e.0 .0 + 1).unwrap_or(0);
        let mut g = MultiGraph {
            vertices: vs,
            edges: es,
            adj: Vec::new(),
            next_vertex,
            next_edge,
        };
        g.rebuild_adjacency();
        Ok(g)
    }

    fn vertex_pos(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    fn edge_pos(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&e, |(id, _, _)| *id).ok()
    }

    pub(crate) fn rebuild_adjacency(&mut self) {
        self.adj = vec![Vec::new(); self.vertices.len()];
        for &(e, u, v) in &self.edges {
            let ui = self.vertices.binary_search(&u).unwrap();
            let vi = self.vertices.binary_search(&v).unwrap();
            self.adj[ui].push((e, v));
            self.adj[vi].push((e, u));
        }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|(e, _, _)| *e)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertex_pos(v).is_some()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edge_pos(e).is_some()
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        match self.edge_pos(e) {
            Some(i) => Ok((self.edges[i].1, self.edges[i].2)),
            None => Err(Error::UnknownEdge(e.0)),
        }
    }

    /// The endpoint of `e` different from `v` (for a non-loop edge).
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> Result<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Ok(b)
        } else if b == v {
            Ok(a)
        } else {
            Err(Error::Internal(format!(
                "{v:?} is not an endpoint of {e:?}"
            )))
        }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        matches!(self.endpoints(e), Ok((a, b)) if a == v || b == v)
    }

    /// Incident edges of `v` paired with their far endpoints, ascending by
    /// edge id. A vertex missing from the graph yields the empty slice.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        match self.vertex_pos(v) {
            Some(i) => &self.adj[i],
            None => &[],
        }
    }

    /// Edges incident to `v`, ascending by id.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident(v).iter().map(|&(e, _)| e)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|a| a.len() == 3)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(_, u, v) in &self.edges {
            let key = if u <= v { (u, v) } else { (v, u) };
            if !seen.insert(key) {
                return true;
            }
        }
        false
    }

    /// Edges with one endpoint in `side` and one outside, counted with
    /// multiplicity (each parallel edge appears individually).
    pub fn boundary(&self, side: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, u, v)| side.contains(u) != side.contains(v))
            .map(|(e, _, _)| *e)
            .collect()
    }

    /// Do `e` and `f` share at least one endpoint?
    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> Result<bool> {
        let (a, b) = self.endpoints(e)?;
        let (c, d) = self.endpoints(f)?;
        Ok(a == c || a == d || b == c || b == d)
    }

    /// Endpoints of an edge set, as a vertex set.
    pub fn vertices_of_edges(&self, edges: &[EdgeId]) -> Result<BTreeSet<VertexId>> {
        let mut out = BTreeSet::new();
        for &e in edges {
            let (u, v) = self.endpoints(e)?;
            out.insert(u);
            out.insert(v);
        }
        Ok(out)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub(crate) fn next_vertex_mark(&self) -> u32 {
        self.next_vertex
    }

    pub(crate) fn next_edge_mark(&self) -> u32 {
        self.next_edge
    }

    /// Fresh-id aware mutation helpers for the surgery engine. These keep
    /// the never-reuse-ids invariant; they are not public API. Fresh ids
    /// exceed all existing ones, so sorted order is maintained by pushing.
    pub(crate) fn alloc_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.push(v);
        self.adj.push(Vec::new());
        v
    }

    pub(crate) fn alloc_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u == v {
            return Err(Error::LoopWouldForm);
        }
        let ui = self.vertex_pos(u).ok_or(Error::UnknownVertex(u.0))?;
        let vi = self.vertex_pos(v).ok_or(Error::UnknownVertex(v.0))?;
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.push((e, u, v));
        self.adj[ui].push((e, v));
        self.adj[vi].push((e, u));
        Ok(e)
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let i = self.edge_pos(e).ok_or(Error::UnknownEdge(e.0))?;
        let (_, u, v) = self.edges.remove(i);
        for w in [u, v] {
            if let Some(wi) = self.vertex_pos(w) {
                self.adj[wi].retain(|&(x, _)| x != e);
            }
        }
        Ok((u, v))
    }

    pub(crate) fn remove_isolated_vertex(&mut self, v: VertexId) -> Result<()> {
        let i = self.vertex_pos(v).ok_or(Error::UnknownVertex(v.0))?;
        if !self.adj[i].is_empty() {
            return Err(Error::Internal(format!("{v:?} still has incident edges")));
        }
        self.vertices.remove(i);
        self.adj.remove(i);
        Ok(())
    }

    pub(crate) fn reattach_endpoint(
        &mut self,
        e: EdgeId,
        from: VertexId,
        to: VertexId,
    ) -> Result<()> {
        let i = self.edge_pos(e).ok_or(Error::UnknownEdge(e.0))?;
        let (_, u, v) = self.edges[i];
        let new = if u == from {
            (to, v)
        } else if v == from {
            (u, to)
        } else {
            return Err(Error::Internal(format!(
                "{from:?} not an endpoint of {e:?}"
            )));
        };
        if new.0 == new.1 {
            return Err(Error::LoopWouldForm);
        }
        self.edges[i].1 = new.0;
        self.edges[i].2 = new.1;
        if let Some(fi) = self.vertex_pos(from) {
            self.adj[fi].retain(|&(x, _)| x != e);
        }
        // The surviving endpoint's entry must now point at `to`.
        let keep = if u == from { v } else { u };
        if let Some(ki) = self.vertex_pos(keep) {
            for entry in self.adj[ki].iter_mut() {
                if entry.0 == e {
                    entry.1 = to;
                }
            }
        }
        let ti = self.vertex_pos(to).ok_or(Error::UnknownVertex(to.0))?;
        self.adj[ti].push((e, keep));
        self.adj[ti].sort_unstable();
        Ok(())
    }

    /// Connected in the usual sense; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        self.component_of(start).len() == self.vertices.len()
    }

    /// BFS component of `start`, respecting `skip_edges`.
    pub fn component_avoiding(
        &self,
        start: VertexId,
        skip_edges: &BTreeSet<EdgeId>,
    ) -> BTreeSet<VertexId> {
        let Some(si) = self.vertex_pos(start) else {
            return BTreeSet::new();
        };
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[si] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in self.incident(v) {
                if skip_edges.contains(&e) {
                    continue;
                }
                let wi = self.vertex_pos(w).unwrap();
                if !seen[wi] {
                    seen[wi] = true;
                    queue.push_back(w);
                }
            }
        }
        self.vertices
            .iter()
            .zip(seen)
            .filter(|(_, s)| *s)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        self.component_avoiding(start, &BTreeSet::new())
    }

    /// Is the induced subgraph on `set` connected (and nonempty)?
    pub fn is_set_connected(&self, set: &BTreeSet<VertexId>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::new();
        let mut queue = std::collections::VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(_, w) in self.incident(v) {
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// Non-negative integer vertex weights. Vertices absent from the map weigh 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMap(pub BTreeMap<VertexId, u64>);

impl WeightMap {
    pub fn new() -> Self {
        WeightMap(BTreeMap::new())
    }

    pub fn uniform(g: &MultiGraph, w: u64) -> Self {
        WeightMap(g.vertices().map(|v| (v, w)).collect())
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VertexId, w: u64) {
        self.0.insert(v, w);
    }

    /// Total weight of a vertex collection (a set, so shared vertices count once).
    pub fn of_set<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> u64 {
        vs.into_iter().map(|&v| self.get(v)).sum()
    }

    /// Total weight of all vertices of `g`.
    pub fn total(&self, g: &MultiGraph) -> u64 {
        g.vertices().map(|v| self.get(v)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn boundary_of_k4_vertex_is_its_star() {
        let (g, _) = corpus::k4();
        let v = g.vertices().next().unwrap();
        let side: BTreeSet<_> = [v].into_iter().collect();
        assert_eq!(g.boundary(&side).len(), 3);
    }

    #[test]
    fn boundary_of_prism_triangle_is_the_matching() {
        let p = corpus::prism();
        let side: BTreeSet<_> = p.triangle_a.iter().copied().collect();
        let cut = p.graph.boundary(&side);
        assert_eq!(cut, p.matching.iter().copied().collect());
    }

    #[test]
    fn boundary_of_everything_is_empty() {
        let (g, _) = corpus::k4();
        assert!(g.boundary(&g.vertex_set()).is_empty());
    }

    #[test]
    fn boundary_is_symmetric_under_complement() {
        let p = corpus::petersen();
        let mut side = BTreeSet::new();
        for v in p.vertices().take(4) {
            side.insert(v);
        }
        let co: BTreeSet<_> = p.vertices().filter(|v| !side.contains(v)).collect();
        assert_eq!(p.boundary(&side), p.boundary(&co));
    }

    #[test]
    fn loops_rejected() {
        let v = VertexId(0);
        let err = MultiGraph::from_parts([v], [(EdgeId(0), v, v)]);
        assert!(matches!(err, Err(Error::LoopRejected(0))));
    }

    #[test]
    fn double_edge_counts_twice_toward_degree() {
        let (g, _) = corpus::theta();
        for v in g.vertices() {
            assert_eq!(g.degree(v), 3);
        }
        assert!(g.has_parallel_edges());
    }
}
