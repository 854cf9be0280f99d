//! Unbounded-weight cycle existence through prescribed edges.
//!
//! Exhaustive DFS over simple paths with reachability pruning. Calls happen
//! on already-reduced graphs at desk scale, so completeness beats asymptotic
//! cleverness here; a polynomial disjoint-paths routine would be a drop-in
//! replacement behind the same signatures.

use std::collections::BTreeSet;

use crate::cuts;
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::surgery::{RouteItem, Window};

/// DFS for a simple path `from -> to` in `g − banned` that uses every edge
/// of `required`. Returns the edge list of the path.
fn constrained_path(
    g: &MultiGraph,
    from: VertexId,
    to: VertexId,
    banned: EdgeId,
    required: &BTreeSet<EdgeId>,
) -> Option<Vec<EdgeId>> {
    struct Dfs<'a> {
        g: &'a MultiGraph,
        vs: Vec<VertexId>,
        to: VertexId,
        banned: EdgeId,
        visited: Vec<bool>,
        reach_scratch: Vec<bool>,
        path: Vec<EdgeId>,
        missing: BTreeSet<EdgeId>,
    }
    impl Dfs<'_> {
        fn idx(&self, v: VertexId) -> usize {
            self.vs.binary_search(&v).expect("vertex in graph")
        }
        fn feasible(&mut self, head: VertexId) -> bool {
            // Any required edge with an interior-visited endpoint is dead.
            for &r in &self.missing {
                let (a, b) = self.g.endpoints(r).unwrap();
                for v in [a, b] {
                    if v != head && self.visited[self.idx(v)] {
                        return false;
                    }
                }
            }
            // The target and all required endpoints must remain reachable.
            self.reach_scratch.iter_mut().for_each(|x| *x = false);
            let mut queue = std::collections::VecDeque::new();
            let hi = self.idx(head);
            self.reach_scratch[hi] = true;
            queue.push_back(head);
            while let Some(v) = queue.pop_front() {
                for &(e, w) in self.g.incident(v) {
                    if e == self.banned {
                        continue;
                    }
                    let wi = self.idx(w);
                    if w != head && self.visited[wi] {
                        continue;
                    }
                    if !self.reach_scratch[wi] {
                        self.reach_scratch[wi] = true;
                        queue.push_back(w);
                    }
                }
            }
            if !self.reach_scratch[self.idx(self.to)] {
                return false;
            }
            self.missing.iter().all(|&r| {
                let (a, b) = self.g.endpoints(r).unwrap();
                self.reach_scratch[self.idx(a)] && self.reach_scratch[self.idx(b)]
            })
        }

        fn search(&mut self, head: VertexId) -> bool {
            if head == self.to {
                return self.missing.is_empty();
            }
            if !self.feasible(head) {
                return false;
            }
            for &(e, w) in self.g.incident(head) {
                if e == self.banned || self.path.contains(&e) {
                    continue;
                }
                let wi = self.idx(w);
                if self.visited[wi] {
                    continue;
                }
                // Entering the target closes the path; no further edges may
                // be required beyond those already used plus this one.
                self.visited[wi] = true;
                self.path.push(e);
                let had = self.missing.remove(&e);
                if self.search(w) {
                    return true;
                }
                if had {
                    self.missing.insert(e);
                }
                self.path.pop();
                self.visited[wi] = false;
            }
            false
        }
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    let mut dfs = Dfs {
        g,
        vs,
        to,
        banned,
        visited: vec![false; n],
        reach_scratch: vec![false; n],
        path: Vec::new(),
        missing: required.clone(),
    };
    let start = dfs.idx(from);
    dfs.visited[start] = true;
    if dfs.search(from) {
        Some(dfs.path)
    } else {
        None
    }
}

/// Cycle through `base` and all edges of `required`: a constrained path
/// between the endpoints of `base`, closed by `base` itself.
fn cycle_with_required(
    g: &MultiGraph,
    base: EdgeId,
    required: &BTreeSet<EdgeId>,
) -> Result<Option<Cycle>> {
    let (a, b) = g.endpoints(base)?;
    match constrained_path(g, b, a, base, required) {
        Some(mut path) => {
            let mut edges = vec![base];
            edges.append(&mut path);
            Ok(Some(Cycle::from_edge_list(g, edges)?))
        }
        None => Ok(None),
    }
}

/// Any two edges of a 2-connected graph lie on a common cycle.
pub fn cycle_through_two_edges(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<Cycle> {
    if e == f {
        return Err(Error::PreconditionViolated("edges must be distinct".into()));
    }
    if !cuts::is_2_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let required: BTreeSet<EdgeId> = [f].into_iter().collect();
    cycle_with_required(g, e, &required)?.ok_or_else(|| {
        Error::Internal("2-connected graph must admit a cycle through two edges".into())
    })
}

/// Cycle through three distinct edges of a 3-connected graph; absent exactly
/// when the three edges form an edge cut.
pub fn cycle_through_three_edges(
    g: &MultiGraph,
    e1: EdgeId,
    e2: EdgeId,
    e3: EdgeId,
) -> Result<Option<Cycle>> {
    if e1 == e2 || e1 == e3 || e2 == e3 {
        return Err(Error::PreconditionViolated("edges must be distinct".into()));
    }
    if !cuts::is_3_connected(g) {
        return Err(Error::NotThreeConnected);
    }
    let skip: BTreeSet<EdgeId> = [e1, e2, e3].into_iter().collect();
    let start = g.vertices().next().unwrap();
    if g.component_avoiding(start, &skip).len() < g.order() {
        return Ok(None);
    }
    let required: BTreeSet<EdgeId> = [e2, e3].into_iter().collect();
    let found = cycle_with_required(g, e1, &required)?;
    if found.is_none() {
        return Err(Error::Internal(
            "three non-cut edges of a 3-connected graph must lie on a cycle".into(),
        ));
    }
    Ok(found)
}

/// Outcome of the detour search: which branch was suppressed and the cycle
/// found in the suppressed window.
pub struct Detour {
    /// 1 or 2: the suppressed branch index into `vs`.
    pub k: usize,
    pub window: Window,
    pub cycle: Cycle,
    /// The (possibly merged) edges the cycle was required to contain.
    pub targets: Vec<EdgeId>,
}

fn first_base_edge(w: &Window, e: EdgeId) -> Result<EdgeId> {
    match w.realization_of(e).and_then(|r| {
        r.iter().find_map(|it| match it {
            RouteItem::Edge(b) => Some(*b),
            RouteItem::Piece(_) => None,
        })
    }) {
        Some(b) => Ok(b),
        None => Err(Error::Internal(format!(
            "edge {e:?} has no base realization"
        ))),
    }
}

/// Given a vertex `u` with neighbor labeling `[v1, v2, v3]` and a prescribed
/// edge `e` not incident to `u`, suppress the edge u–v1 or u–v2 and find a
/// cycle through the (possibly merged) images of: `e`, the merged edge
/// standing for u's two surviving branches, and the merged edge at the
/// suppressed neighbor. The caller guarantees the side-maximality hypothesis
/// making this succeed; a double failure signals a caller bug.
pub fn detour_cycle(window: &Window, u: VertexId, vs: [VertexId; 3], e: EdgeId) -> Result<Detour> {
    let g = window.graph();
    if g.is_incident(e, u) {
        return Err(Error::PreconditionViolated(
            "prescribed edge touches the branch vertex".into(),
        ));
    }
    let branch_edge = |to: VertexId| -> Result<EdgeId> {
        let found: Vec<EdgeId> = g
            .incident(u)
            .iter()
            .filter(|&&(_, w)| w == to)
            .map(|&(d, _)| d)
            .collect();
        if found.len() != 1 {
            return Err(Error::PreconditionViolated(format!(
                "expected one u-{to:?} edge, found {}",
                found.len()
            )));
        }
        Ok(found[0])
    };
    for k in [1usize, 2] {
        let vk = vs[k - 1];
        let vother = vs[2 - k]; // v_{3-k}
        let uvk = branch_edge(vk)?;
        // Base-edge handles for the three target edges, resolved after the
        // suppression merges things.
        let tag_e = first_base_edge(window, e)?;
        let tag_mid = first_base_edge(window, branch_edge(vother)?)?;
        let vk_other_edges: Vec<EdgeId> = g.incident_edges(vk).filter(|&d| d != uvk).collect();
        if vk_other_edges.len() != 2 {
            return Err(Error::PreconditionViolated(
                "branch neighbor is not cubic".into(),
            ));
        }
        let tag_far = first_base_edge(window, vk_other_edges[0])?;

        let mut wk = window.clone();
        if wk.suppress(uvk).is_err() {
            continue;
        }
        if !cuts::is_3_connected(wk.graph()) {
            continue;
        }
        let resolve = |tag: EdgeId| -> Result<EdgeId> {
            wk.edge_containing(tag)
                .ok_or_else(|| Error::Internal(format!("lost track of base edge {tag:?}")))
        };
        let mut targets = vec![resolve(tag_e)?, resolve(tag_mid)?, resolve(tag_far)?];
        targets.dedup();
        targets.sort_unstable();
        targets.dedup();
        let found = match targets.len() {
            3 => cycle_through_three_edges(wk.graph(), targets[0], targets[1], targets[2])?,
            2 => Some(cycle_through_two_edges(wk.graph(), targets[0], targets[1])?),
            _ => {
                return Err(Error::Internal(
                    "detour targets collapsed to one edge".into(),
                ));
            }
        };
        if let Some(cycle) = found {
            return Ok(Detour {
                k,
                window: wk,
                cycle,
                targets,
            });
        }
    }
    Err(Error::HypothesisViolated)
}
