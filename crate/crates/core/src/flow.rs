//! Unit-capacity max flow on undirected multigraphs, via BFS augmentation.
//!
//! Each edge carries one unit of capacity usable in either direction. At
//! cubic degrees the flow value is at most 3, so a handful of BFS passes
//! suffice; the residual graph afterwards yields the sink-side-maximal
//! minimum cut as the complement of the source-reachable set.

use std::collections::BTreeSet;

use crate::graph::{EdgeId, MultiGraph, VertexId};

pub struct FlowResult {
    pub value: usize,
    /// Vertices residual-reachable from the source set after the max flow.
    pub source_reach: BTreeSet<VertexId>,
}

/// Max flow from `sources` to `sinks` (disjoint, nonempty). Flow on edge e is
/// -1, 0 or 1; direction is relative to the stored endpoint order.
pub fn max_flow(
    g: &MultiGraph,
    sources: &BTreeSet<VertexId>,
    sinks: &BTreeSet<VertexId>,
) -> FlowResult {
    debug_assert!(sources.is_disjoint(sinks));
    let vs: Vec<VertexId> = g.vertices().collect();
    let es: Vec<EdgeId> = g.edge_ids().collect();
    let vidx = |v: VertexId| vs.binary_search(&v).expect("vertex in graph");
    let eidx = |e: EdgeId| es.binary_search(&e).expect("edge in graph");
    let mut flow: Vec<i8> = vec![0; es.len()];
    let mut value = 0usize;
    let mut is_sink = vec![false; vs.len()];
    for &t in sinks {
        is_sink[vidx(t)] = true;
    }

    let mut seen = vec![false; vs.len()];
    let mut pred: Vec<Option<(VertexId, usize, i8)>> = vec![None; vs.len()];
    let mut queue: std::collections::VecDeque<VertexId> = Default::default();
    loop {
        seen.iter_mut().for_each(|x| *x = false);
        pred.iter_mut().for_each(|x| *x = None);
        queue.clear();
        for &s in sources {
            seen[vidx(s)] = true;
            queue.push_back(s);
        }
        let mut hit = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &(e, w) in g.incident(v) {
                let (a, _b) = g.endpoints(e).unwrap();
                // Moving v -> w uses direction +1 if v is the stored head `a`.
                let dir: i8 = if v == a { 1 } else { -1 };
                let ei = eidx(e);
                if 1 - dir * flow[ei] <= 0 {
                    continue;
                }
                let wi = vidx(w);
                if !seen[wi] {
                    seen[wi] = true;
                    pred[wi] = Some((v, ei, dir));
                    if is_sink[wi] {
                        hit = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        let Some(mut at) = hit else {
            let source_reach = vs
                .iter()
                .zip(seen.iter())
                .filter(|(_, &s)| s)
                .map(|(&v, _)| v)
                .collect();
            return FlowResult {
                value,
                source_reach,
            };
        };
        while let Some((prev, ei, dir)) = pred[vidx(at)] {
            flow[ei] += dir;
            at = prev;
            if sources.contains(&at) {
                break;
            }
        }
        value += 1;
    }
}

/// Edge connectivity of a connected multigraph: min over max-flows from a
/// fixed vertex to every other vertex. Returns 0 for disconnected or
/// single-vertex graphs.
pub fn edge_connectivity(g: &MultiGraph) -> usize {
    if g.order() < 2 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let v0 = g.vertices().next().unwrap();
    let src: BTreeSet<_> = [v0].into_iter().collect();
    let mut best = usize::MAX;
    for t in g.vertices().skip(1) {
        let snk: BTreeSet<_> = [t].into_iter().collect();
        let r = max_flow(g, &src, &snk);
        best = best.min(r.value);
        if best == 0 {
            break;
        }
    }
    best
}
