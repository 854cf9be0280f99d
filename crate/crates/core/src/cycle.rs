//! Cycles as ordered edge lists with derived vertex sequences.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};

/// A cycle: `edges[i]` joins `vertices[i]` to `vertices[(i+1) % len]`.
/// At least two edges, no repeated vertex or edge. A pair of parallel edges
/// forms the unique length-2 case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Cycle {
    /// Build from edges already in cyclic order.
    pub fn from_edge_list(g: &MultiGraph, edges: Vec<EdgeId>) -> Result<Cycle> {
        let k = edges.len();
        if k < 2 {
            return Err(Error::PreconditionViolated(
                "a cycle has at least 2 edges".into(),
            ));
        }
        if k == 2 {
            let (a, b) = g.endpoints(edges[0])?;
            let (c, d) = g.endpoints(edges[1])?;
            if edges[0] == edges[1] || (a, b) != (c, d) && (a, b) != (d, c) {
                return Err(Error::PreconditionViolated(
                    "a 2-cycle needs two distinct parallel edges".into(),
                ));
            }
            let c = Cycle {
                edges,
                vertices: vec![a, b],
            };
            c.validate(g)?;
            return Ok(c);
        }
        let mut vertices = Vec::with_capacity(k);
        for i in 0..k {
            let prev = edges[(i + k - 1) % k];
            let cur = edges[i];
            let (a, b) = g.endpoints(prev)?;
            let (c, d) = g.endpoints(cur)?;
            let shared: Vec<VertexId> = [a, b].into_iter().filter(|v| *v == c || *v == d).collect();
            if shared.len() != 1 {
                return Err(Error::PreconditionViolated(format!(
                    "edges {prev:?} and {cur:?} do not meet in exactly one vertex"
                )));
            }
            vertices.push(shared[0]);
        }
        let c = Cycle { edges, vertices };
        c.validate(g)?;
        Ok(c)
    }

    /// Build from an unordered edge set forming a single cycle.
    pub fn from_edge_set(g: &MultiGraph, set: &BTreeSet<EdgeId>) -> Result<Cycle> {
        if set.len() < 2 {
            return Err(Error::PreconditionViolated(
                "a cycle has at least 2 edges".into(),
            ));
        }
        let mut at: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &e in set {
            let (u, v) = g.endpoints(e)?;
            at.entry(u).or_default().push(e);
            at.entry(v).or_default().push(e);
        }
        for (v, es) in &at {
            if es.len() != 2 {
                return Err(Error::PreconditionViolated(format!(
                    "vertex {v:?} has degree {} in the edge set",
                    es.len()
                )));
            }
        }
        let &start = at.keys().next().unwrap();
        let mut edges = Vec::with_capacity(set.len());
        let mut v = start;
        let mut via = at[&start][0];
        loop {
            edges.push(via);
            v = g.other_endpoint(via, v)?;
            if v == start {
                break;
            }
            let pair = &at[&v];
            via = if pair[0] == via { pair[1] } else { pair[0] };
        }
        if edges.len() != set.len() {
            return Err(Error::PreconditionViolated(
                "edge set is not a single cycle".into(),
            ));
        }
        Cycle::from_edge_list(g, edges)
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let k = self.edges.len();
        if k < 2 || self.vertices.len() != k {
            return Err(Error::PreconditionViolated("malformed cycle".into()));
        }
        let distinct_e: BTreeSet<_> = self.edges.iter().collect();
        let distinct_v: BTreeSet<_> = self.vertices.iter().collect();
        if distinct_e.len() != k || distinct_v.len() != k {
            return Err(Error::PreconditionViolated(
                "cycle repeats an edge or vertex".into(),
            ));
        }
        for i in 0..k {
            let (a, b) = g.endpoints(self.edges[i])?;
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if (a, b) != (u, v) && (a, b) != (v, u) {
                return Err(Error::PreconditionViolated(format!(
                    "edge {:?} does not join {u:?} and {v:?}",
                    self.edges[i]
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn weight(&self, w: &WeightMap) -> u64 {
        self.vertices.iter().map(|&v| w.get(v)).sum()
    }
}
