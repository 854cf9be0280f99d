//! Eulerian subgraphs of 3-edge-connected graphs via cubification.
//!
//! Every vertex of degree at least 4 is expanded into an attachment cycle
//! (one attachment vertex per incident edge end, the vertex weight riding on
//! one of them); when the vertex cuts the graph, the attachment order
//! interleaves the components so the expansion stays 3-edge-connected. On
//! the resulting 3-connected cubic graph the long-cycle engine runs, and
//! contracting the attachment cycles back turns the cycle into a connected,
//! even-degree subgraph of the original graph through the prescribed edges.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{ensure_internal, Error, Result};
use crate::flow;
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};
use crate::longcycle::{self, CycleResult};

/// Record of one vertex expansion.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub original: VertexId,
    /// Attachment vertices in cycle order.
    pub ring: Vec<VertexId>,
    /// The attachment vertex carrying the original weight.
    pub carrier: VertexId,
    pub ring_edges: Vec<EdgeId>,
}

/// Expand one vertex of degree >= 4 into an attachment cycle. Original
/// edges keep their identity, reattached to fresh attachment vertices.
pub fn expand_vertex(
    g: &MultiGraph,
    w: &WeightMap,
    u: VertexId,
) -> Result<(MultiGraph, WeightMap, Expansion)> {
    let incident: Vec<EdgeId> = {
        let mut v: Vec<EdgeId> = g.incident_edges(u).collect();
        v.sort_unstable();
        v
    };
    if incident.len() < 4 {
        return Err(Error::DegreeTooSmall);
    }
    // Natural order: components of G - u ascending by minimum vertex, u's
    // edges ascending within each; a connected remainder is one block.
    let mut remaining: BTreeSet<EdgeId> = incident.iter().copied().collect();
    let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
    let u_star: BTreeSet<EdgeId> = incident.iter().copied().collect();
    let mut seen_components: Vec<BTreeSet<VertexId>> = Vec::new();
    while let Some(&d) = remaining.iter().next() {
        let far = g.other_endpoint(d, u)?;
        let comp = g.component_avoiding(far, &u_star);
        let block: Vec<EdgeId> = incident
            .iter()
            .copied()
            .filter(|&x| comp.contains(&g.other_endpoint(x, u).unwrap()))
            .collect();
        for x in &block {
            remaining.remove(x);
        }
        seen_components.push(comp);
        blocks.push(block);
    }
    blocks.sort_by_key(|b| b.first().copied());

    let mut order: Vec<EdgeId> = blocks.iter().flatten().copied().collect();
    if blocks.len() > 1 {
        for b in &blocks {
            ensure_internal!(b.len() >= 3, "cut component attached by fewer than 3 edges");
        }
        // Interleave: swap each block's last entry with the next block's
        // first entry, cyclically.
        let mut boundaries = Vec::new();
        let mut at = 0;
        for b in &blocks {
            boundaries.push((at + b.len() - 1, (at + b.len()) % order.len()));
            at += b.len();
        }
        for (last, next_first) in boundaries {
            order.swap(last, next_first);
        }
    }

    // Fresh attachment vertices per edge end, in natural (pre-swap) order
    // so the carrier is the natural first attachment.
    let natural: Vec<EdgeId> = blocks.iter().flatten().copied().collect();
    let mut ring_of: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    for (i, &d) in natural.iter().enumerate() {
        ring_of.insert(d, VertexId(g.next_vertex_mark() + i as u32));
    }
    let carrier = ring_of[&natural[0]];

    let mut next_e = g.next_edge_mark();
    let mut edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    for (d, a, b) in g.edges() {
        if a == u || b == u {
            let far = if a == u { b } else { a };
            edges.push((d, ring_of[&d], far));
        } else {
            edges.push((d, a, b));
        }
    }
    let mut ring_edges = Vec::new();
    let ring: Vec<VertexId> = order.iter().map(|d| ring_of[d]).collect();
    for i in 0..ring.len() {
        let id = EdgeId(next_e);
        next_e += 1;
        edges.push((id, ring[i], ring[(i + 1) % ring.len()]));
        ring_edges.push(id);
    }
    let vertices = g.vertices().filter(|&v| v != u).chain(ring.iter().copied());
    let out = MultiGraph::from_parts(vertices, edges)?;

    let mut wl = w.clone();
    wl.0.remove(&u);
    for &v in &ring {
        wl.set(v, 0);
    }
    wl.set(carrier, w.get(u));

    ensure_internal!(
        flow::edge_connectivity(&out) >= 3,
        "expansion broke 3-edge-connectivity"
    );
    Ok((
        out,
        wl,
        Expansion {
            original: u,
            ring,
            carrier,
            ring_edges,
        },
    ))
}

/// Expand until cubic: highest degree first, vertex id breaking ties.
pub fn cubify(g: &MultiGraph, w: &WeightMap) -> Result<(MultiGraph, WeightMap, Vec<Expansion>)> {
    if flow::edge_connectivity(g) < 3 {
        return Err(Error::PreconditionViolated(
            "graph must be 3-edge-connected".into(),
        ));
    }
    let mut cur = g.clone();
    let mut wl = w.clone();
    let mut expansions = Vec::new();
    loop {
        let next = cur
            .vertices()
            .filter(|&v| cur.degree(v) >= 4)
            .max_by_key(|&v| (cur.degree(v), std::cmp::Reverse(v)));
        match next {
            None => break,
            Some(u) => {
                let (g2, w2, exp) = expand_vertex(&cur, &wl, u)?;
                cur = g2;
                wl = w2;
                expansions.push(exp);
            }
        }
    }
    ensure_internal!(cur.is_cubic(), "cubification did not reach a cubic graph");
    ensure_internal!(
        crate::cuts::is_3_connected(&cur),
        "cubification did not reach a 3-connected graph"
    );
    ensure_internal!(
        wl.total(&cur) == w.total(g),
        "cubification changed the total weight"
    );
    Ok((cur, wl, expansions))
}

pub struct EulerianSubgraph {
    pub edges: BTreeSet<EdgeId>,
    pub vertices: BTreeSet<VertexId>,
    pub weight: u64,
    pub bound: f64,
    /// The cubified graph and the cycle found in it.
    pub cubic: MultiGraph,
    pub cycle: CycleResult,
}

/// The headline consequence: a connected even-degree subgraph through `e`
/// (and `f`)
/// with weight at least `w(G)^r` (single-edge form) or `c·w(G)^r`.
pub fn eulerian_subgraph(
    g: &MultiGraph,
    w: &WeightMap,
    e: EdgeId,
    f: Option<EdgeId>,
) -> Result<EulerianSubgraph> {
    if !g.has_edge(e) {
        return Err(Error::UnknownEdge(e.0));
    }
    if let Some(f) = f {
        if !g.has_edge(f) {
            return Err(Error::UnknownEdge(f.0));
        }
        if f == e {
            return Err(Error::PreconditionViolated(
                "prescribed edges must be distinct".into(),
            ));
        }
    }
    let (l, wl, _expansions) = cubify(g, w)?;
    // Partner edge for the single-edge form: adjacent at the smaller
    // endpoint of e, smallest id. Any choice works in a 3-connected graph.
    let partner = match f {
        Some(f) => f,
        None => {
            let (a, b) = l.endpoints(e)?;
            let v = a.min(b);
            l.incident_edges(v)
                .find(|&d| d != e)
                .ok_or_else(|| Error::Internal("cubic vertex lost its edges".into()))?
        }
    };
    let r = longcycle::long_cycle(&l, &wl, e, partner)?;
    let edges: BTreeSet<EdgeId> = r
        .cycle
        .edges()
        .iter()
        .copied()
        .filter(|&d| g.has_edge(d))
        .collect();
    let mut vertices = BTreeSet::new();
    let mut degrees: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &d in &edges {
        let (a, b) = g.endpoints(d)?;
        vertices.extend([a, b]);
        *degrees.entry(a).or_default() += 1;
        *degrees.entry(b).or_default() += 1;
    }
    ensure_internal!(!edges.is_empty(), "empty Eulerian subgraph");
    ensure_internal!(
        edges.contains(&e),
        "Eulerian subgraph lost the prescribed edge"
    );
    if let Some(f) = f {
        ensure_internal!(edges.contains(&f), "Eulerian subgraph lost the second edge");
    }
    for (&v, &d) in &degrees {
        ensure_internal!(
            d % 2 == 0,
            "odd degree {d} at {v:?} in the Eulerian subgraph"
        );
    }
    // Connectivity of the subgraph.
    {
        let sub = MultiGraph::from_parts(
            vertices.iter().copied(),
            edges.iter().map(|&d| {
                let (a, b) = g.endpoints(d).unwrap();
                (d, a, b)
            }),
        )?;
        ensure_internal!(sub.is_connected(), "Eulerian subgraph is not connected");
    }
    let weight = w.of_set(&vertices);
    ensure_internal!(
        longcycle::meets(weight, r.bound),
        "Eulerian subgraph weight {weight} misses bound {}",
        r.bound
    );
    Ok(EulerianSubgraph {
        edges,
        vertices,
        weight,
        bound: r.bound,
        cubic: l,
        cycle: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn k5() -> (MultiGraph, WeightMap) {
        let mut b = corpus::Builder::new();
        let v = b.vertices(5);
        for i in 0..5 {
            for j in (i + 1)..5 {
                b.edge(v[i], v[j]);
            }
        }
        let g = b.build();
        let w = WeightMap::uniform(&g, 1);
        (g, w)
    }

    /// Two triangle fans sharing a degree-6 cut vertex.
    fn doubled_bowtie() -> (MultiGraph, WeightMap) {
        let mut b = corpus::Builder::new();
        let u = b.vertex();
        let t1 = b.vertices(3);
        let t2 = b.vertices(3);
        for t in [&t1, &t2] {
            for i in 0..3 {
                b.edge(t[i], t[(i + 1) % 3]);
                b.edge(u, t[i]);
            }
        }
        let g = b.build();
        let w = WeightMap::uniform(&g, 1);
        (g, w)
    }

    #[test]
    fn k5_expansion_shape() {
        let (g, w) = k5();
        let u = g.vertices().next().unwrap();
        let (h, wl, exp) = expand_vertex(&g, &w, u).unwrap();
        assert_eq!(h.order(), 8);
        assert_eq!(exp.ring.len(), 4);
        assert!(h.vertices().all(|v| if exp.ring.contains(&v) {
            h.degree(v) == 3
        } else {
            true
        }));
        assert_eq!(wl.total(&h), w.total(&g));
    }

    #[test]
    fn k5_cubifies_to_20_vertices() {
        let (g, w) = k5();
        let (l, wl, exps) = cubify(&g, &w).unwrap();
        assert_eq!(l.order(), 20);
        assert!(l.is_cubic());
        assert!(crate::cuts::is_3_connected(&l));
        assert_eq!(exps.len(), 5);
        assert_eq!(wl.total(&l), 5);
        // Every original edge survives with identity.
        for e in g.edge_ids() {
            assert!(l.has_edge(e));
        }
    }

    #[test]
    fn cut_vertex_expansion_interleaves() {
        let (g, w) = doubled_bowtie();
        let u = g.vertices().next().unwrap();
        assert_eq!(g.degree(u), 6);
        let (h, _, _) = expand_vertex(&g, &w, u).unwrap();
        assert!(h.is_cubic());
        assert!(crate::flow::edge_connectivity(&h) >= 3);
    }

    #[test]
    fn cubic_input_unchanged() {
        let g = corpus::petersen();
        let w = WeightMap::uniform(&g, 1);
        let (l, _, exps) = cubify(&g, &w).unwrap();
        assert!(exps.is_empty());
        assert_eq!(l, g);
    }

    #[test]
    fn k5_eulerian_single_edge_form() {
        let (g, w) = k5();
        let e = g.edge_ids().next().unwrap();
        let r = eulerian_subgraph(&g, &w, e, None).unwrap();
        assert!(r.edges.contains(&e));
        assert!(r.weight as f64 + 1e-9 >= 5f64.powf(0.8));
    }

    #[test]
    fn k5_eulerian_two_edge_form() {
        let (g, w) = k5();
        let es: Vec<_> = g.edge_ids().collect();
        let f = es
            .iter()
            .copied()
            .find(|&d| !g.edges_adjacent(es[0], d).unwrap());
        let r = eulerian_subgraph(&g, &w, es[0], f).unwrap();
        assert!(r.edges.contains(&es[0]));
        if let Some(f) = f {
            assert!(r.edges.contains(&f));
        }
        assert!(r.weight as f64 + 1e-9 >= crate::bounds::c() * 5f64.powf(0.8));
    }
}
