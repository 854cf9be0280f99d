//! Fixed test graphs and parameterized instance builders.
//!
//! Besides the classic named cubic graphs, this module builds the two
//! wheel-and-pieces families the case analysis needs for branch coverage:
//! a three-terminal-path instance with five boundary pieces hanging off a
//! shared ring (`fig2_instance`), its variant where the pieces form a
//! pentagon with no remainder (`pentagon_instance`), a three-piece/two-bag
//! instance realizing the merged-side case (`fig3_instance`), and crafted
//! four-terminal instances that trigger each reduction of the nonadjacent
//! analysis.

use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};

pub(crate) struct Builder {
    verts: Vec<VertexId>,
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    next_v: u32,
    next_e: u32,
}

impl Builder {
    pub(crate) fn new() -> Self {
        Builder {
            verts: Vec::new(),
            edges: Vec::new(),
            next_v: 0,
            next_e: 0,
        }
    }

    pub(crate) fn vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_v);
        self.next_v += 1;
        self.verts.push(v);
        v
    }

    pub(crate) fn vertices(&mut self, n: usize) -> Vec<VertexId> {
        (0..n).map(|_| self.vertex()).collect()
    }

    pub(crate) fn edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let e = EdgeId(self.next_e);
        self.next_e += 1;
        self.edges.push((e, u, v));
        e
    }

    pub(crate) fn build(self) -> MultiGraph {
        MultiGraph::from_parts(self.verts, self.edges).expect("builder produced an invalid graph")
    }
}

pub fn k4() -> (MultiGraph, WeightMap) {
    let mut b = Builder::new();
    let v = b.vertices(4);
    for i in 0..4 {
        for j in (i + 1)..4 {
            b.edge(v[i], v[j]);
        }
    }
    let g = b.build();
    let w = WeightMap::uniform(&g, 1);
    (g, w)
}

/// Two vertices joined by three parallel edges: the recursion's base object.
pub fn theta() -> (MultiGraph, WeightMap) {
    let mut b = Builder::new();
    let u = b.vertex();
    let v = b.vertex();
    b.edge(u, v);
    b.edge(u, v);
    b.edge(u, v);
    let g = b.build();
    let w = WeightMap::uniform(&g, 1);
    (g, w)
}

pub struct Prism {
    pub graph: MultiGraph,
    pub triangle_a: [VertexId; 3],
    pub triangle_b: [VertexId; 3],
    pub matching: [EdgeId; 3],
    pub triangle_a_edges: [EdgeId; 3],
}

pub fn prism() -> Prism {
    let mut b = Builder::new();
    let v = b.vertices(6);
    let ea = [b.edge(v[0], v[1]), b.edge(v[1], v[2]), b.edge(v[2], v[0])];
    b.edge(v[3], v[4]);
    b.edge(v[4], v[5]);
    b.edge(v[5], v[3]);
    let m = [b.edge(v[0], v[3]), b.edge(v[1], v[4]), b.edge(v[2], v[5])];
    Prism {
        graph: b.build(),
        triangle_a: [v[0], v[1], v[2]],
        triangle_b: [v[3], v[4], v[5]],
        matching: m,
        triangle_a_edges: ea,
    }
}

pub fn k33() -> MultiGraph {
    let mut b = Builder::new();
    let v = b.vertices(6);
    for i in 0..3 {
        for j in 3..6 {
            b.edge(v[i], v[j]);
        }
    }
    b.build()
}

pub fn cube() -> MultiGraph {
    let mut b = Builder::new();
    let v = b.vertices(8);
    for i in 0..8u32 {
        for bit in [1u32, 2, 4] {
            let j = i ^ bit;
            if i < j {
                b.edge(v[i as usize], v[j as usize]);
            }
        }
    }
    b.build()
}

pub fn petersen() -> MultiGraph {
    generalized_petersen(5, 2)
}

pub fn moebius_kantor() -> MultiGraph {
    generalized_petersen(8, 3)
}

fn generalized_petersen(n: usize, k: usize) -> MultiGraph {
    let mut b = Builder::new();
    let outer = b.vertices(n);
    let inner = b.vertices(n);
    for i in 0..n {
        b.edge(outer[i], outer[(i + 1) % n]);
        b.edge(inner[i], inner[(i + k) % n]);
        b.edge(outer[i], inner[i]);
    }
    b.build()
}

pub fn all_named() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("k4", k4().0),
        ("theta", theta().0),
        ("prism", prism().graph),
        ("k33", k33()),
        ("cube", cube()),
        ("petersen", petersen()),
        ("moebius_kantor", moebius_kantor()),
    ]
}

/// Two K4-minus-an-edge blocks joined by two edges: the smallest graph with
/// a 2-edge cut separating an edge of one block from an edge of the other.
pub struct TwoBlocks {
    pub graph: MultiGraph,
    pub e_in_a: EdgeId,
    pub f_in_b: EdgeId,
    pub bridge_pair: [EdgeId; 2],
}

pub fn two_blocks_bridged() -> TwoBlocks {
    let mut b = Builder::new();
    let a = b.vertices(4); // K4 minus edge (a2,a3)
    let c = b.vertices(4);
    let e_in_a = b.edge(a[0], a[1]);
    b.edge(a[0], a[2]);
    b.edge(a[0], a[3]);
    b.edge(a[1], a[2]);
    b.edge(a[1], a[3]);
    let f_in_b = b.edge(c[0], c[1]);
    b.edge(c[0], c[2]);
    b.edge(c[0], c[3]);
    b.edge(c[1], c[2]);
    b.edge(c[1], c[3]);
    let j1 = b.edge(a[2], c[2]);
    let j2 = b.edge(a[3], c[3]);
    TwoBlocks {
        graph: b.build(),
        e_in_a,
        f_in_b,
        bridge_pair: [j1, j2],
    }
}

/// A connected piece with exactly three attachment points, built as a
/// Moebius ladder minus one vertex (or a single vertex for size 1). Sizes
/// must be odd so the piece closes to degree 3 with 3 boundary edges.
pub(crate) struct Gadget {
    pub vertices: Vec<VertexId>,
    /// Attachment vertices; for size 1 all three coincide.
    pub ports: [VertexId; 3],
}

pub(crate) fn gadget(b: &mut Builder, size: usize) -> Gadget {
    assert!(size % 2 == 1, "piece sizes must be odd, got {size}");
    if size == 1 {
        let v = b.vertex();
        return Gadget {
            vertices: vec![v],
            ports: [v, v, v],
        };
    }
    // Moebius ladder on size+1 vertices, with vertex 0 deleted: its three
    // neighbours (cycle-previous, cycle-next, antipode) become the ports.
    let n = size + 1;
    let v = b.vertices(size); // roles 1..=size of the ladder
    let at = |ladder_index: usize| v[ladder_index - 1];
    for i in 1..size {
        b.edge(at(i), at(i + 1));
    }
    for i in 1..=(n / 2) {
        let j = i + n / 2;
        if i != 0 && j != n {
            b.edge(at(i), at(j));
        }
    }
    Gadget {
        vertices: v.clone(),
        ports: [at(1), at(size), at(n / 2)],
    }
}

/// Adjacent-terminal instance: path u1-u2-u3, five pieces hung on the
/// terminals, piece remainders attached to a shared ring.
pub struct Fig2 {
    pub graph: MultiGraph,
    pub e: EdgeId,
    pub f: EdgeId,
    pub u: [VertexId; 3],
    pub pieces: [Vec<VertexId>; 5],
    pub ring: Vec<VertexId>,
}

pub fn fig2_instance(sizes: [usize; 5]) -> Fig2 {
    let mut b = Builder::new();
    let u1 = b.vertex();
    let u2 = b.vertex();
    let u3 = b.vertex();
    let e = b.edge(u1, u2);
    let f = b.edge(u2, u3);
    let gs: Vec<Gadget> = sizes.iter().map(|&s| gadget(&mut b, s)).collect();
    let anchors = [u1, u1, u3, u3, u2];
    for (g, &a) in gs.iter().zip(anchors.iter()) {
        b.edge(a, g.ports[0]);
    }
    let ring = b.vertices(10);
    for i in 0..10 {
        b.edge(ring[i], ring[(i + 1) % 10]);
    }
    for (i, g) in gs.iter().enumerate() {
        b.edge(g.ports[1], ring[i]);
        b.edge(g.ports[2], ring[i + 5]);
    }
    let pieces: [Vec<VertexId>; 5] = std::array::from_fn(|i| gs[i].vertices.clone());
    Fig2 {
        graph: b.build(),
        e,
        f,
        u: [u1, u2, u3],
        pieces,
        ring,
    }
}

/// Region weights for a `Fig2`: the whole piece weight sits on the piece's
/// first vertex, the remainder weight on the first ring vertex.
pub fn fig2_weights(fig: &Fig2, x: [u64; 5], z: u64) -> WeightMap {
    let mut w = WeightMap::new();
    for (i, p) in fig.pieces.iter().enumerate() {
        w.set(p[0], x[i]);
    }
    w.set(fig.ring[0], z);
    w
}

/// Region weights spread unit-by-unit across each region's vertices.
pub fn fig2_weights_spread(fig: &Fig2, x: [u64; 5], z: u64) -> WeightMap {
    let mut w = WeightMap::new();
    let spread = |w: &mut WeightMap, vs: &[VertexId], total: u64| {
        for (i, &v) in vs.iter().cycle().take(total as usize).enumerate() {
            let _ = i;
            w.set(v, w.get(v) + 1);
        }
    };
    for (i, p) in fig.pieces.iter().enumerate() {
        spread(&mut w, p, x[i]);
    }
    spread(&mut w, &fig.ring, z);
    w
}

/// The no-remainder variant: five singleton pieces forming a pentagon, so
/// the contracted middle layer is exactly a 5-cycle.
pub fn pentagon_instance() -> Fig2 {
    let mut b = Builder::new();
    let u1 = b.vertex();
    let u2 = b.vertex();
    let u3 = b.vertex();
    let e = b.edge(u1, u2);
    let f = b.edge(u2, u3);
    let x = b.vertices(5); // x[i] is piece i+1
    for (i, &a) in [u1, u1, u3, u3, u2].iter().enumerate() {
        b.edge(a, x[i]);
    }
    // Pentagon avoiding the two forbidden adjacencies (1,2) and (3,4):
    // 1-3-5-2-4-1.
    b.edge(x[0], x[2]);
    b.edge(x[2], x[4]);
    b.edge(x[4], x[1]);
    b.edge(x[1], x[3]);
    b.edge(x[3], x[0]);
    let pieces: [Vec<VertexId>; 5] = std::array::from_fn(|i| vec![x[i]]);
    Fig2 {
        graph: b.build(),
        e,
        f,
        u: [u1, u2, u3],
        pieces,
        ring: Vec::new(),
    }
}

/// Merged-side adjacent instance: the two inner terminal pieces coincide in
/// one bag Y1, which hangs a second bag Y2 toward the ring.
pub struct Fig3 {
    pub graph: MultiGraph,
    pub e: EdgeId,
    pub f: EdgeId,
    pub u: [VertexId; 3],
    pub x1: Vec<VertexId>,
    pub x3: Vec<VertexId>,
    pub x5: Vec<VertexId>,
    pub y1: Vec<VertexId>,
    pub y2: Vec<VertexId>,
    pub ring: Vec<VertexId>,
}

pub fn fig3_instance(sizes: Fig3Sizes) -> Fig3 {
    let mut b = Builder::new();
    let u1 = b.vertex();
    let u2 = b.vertex();
    let u3 = b.vertex();
    let e = b.edge(u1, u2);
    let f = b.edge(u2, u3);
    let x1 = gadget(&mut b, sizes.x1);
    let x3 = gadget(&mut b, sizes.x3);
    let x5 = gadget(&mut b, sizes.x5);
    let y1 = gadget(&mut b, sizes.y1);
    let y2 = gadget(&mut b, sizes.y2);
    b.edge(u1, x1.ports[0]); // e1
    b.edge(u1, y1.ports[0]); // e2
    b.edge(u3, x3.ports[0]); // e3
    b.edge(u3, y1.ports[1]); // e4
    b.edge(u2, x5.ports[0]); // e5
    b.edge(y1.ports[2], y2.ports[0]); // e6
    let ring = b.vertices(8);
    for i in 0..8 {
        b.edge(ring[i], ring[(i + 1) % 8]);
    }
    for (i, g) in [&x1, &x3, &x5, &y2].into_iter().enumerate() {
        b.edge(g.ports[1], ring[i]);
        b.edge(g.ports[2], ring[i + 4]);
    }
    Fig3 {
        graph: b.build(),
        e,
        f,
        u: [u1, u2, u3],
        x1: x1.vertices,
        x3: x3.vertices,
        x5: x5.vertices,
        y1: y1.vertices,
        y2: y2.vertices,
        ring,
    }
}

#[derive(Clone, Copy)]
pub struct Fig3Sizes {
    pub x1: usize,
    pub x3: usize,
    pub x5: usize,
    pub y1: usize,
    pub y2: usize,
}

impl Default for Fig3Sizes {
    fn default() -> Self {
        Fig3Sizes {
            x1: 1,
            x3: 1,
            x5: 1,
            y1: 3,
            y2: 1,
        }
    }
}

pub fn fig3_weights(fig: &Fig3, x1: u64, x3: u64, x5: u64, y1: u64, y2: u64, z: u64) -> WeightMap {
    let mut w = WeightMap::new();
    w.set(fig.x1[0], x1);
    w.set(fig.x3[0], x3);
    w.set(fig.x5[0], x5);
    w.set(fig.y1[0], y1);
    w.set(fig.y2[0], y2);
    w.set(fig.ring[0], z);
    w
}

/// Four-terminal instance data for the nonadjacent analysis.
pub struct FourTerminal {
    pub graph: MultiGraph,
    pub e: EdgeId,
    pub f: EdgeId,
    pub u: [VertexId; 4],
}

/// Both side pairs of the two far terminals coincide: triggers the
/// paired-sides reduction of the nonadjacent case.
pub fn paired_sides_instance() -> FourTerminal {
    let mut b = Builder::new();
    let u = [b.vertex(), b.vertex(), b.vertex(), b.vertex()];
    let e = b.edge(u[0], u[1]);
    let f = b.edge(u[2], u[3]);
    let shared_a = b.vertex();
    let shared_b = b.vertex();
    let free: Vec<VertexId> = (0..4).map(|_| b.vertex()).collect(); // u2, u4 pieces
    b.edge(u[0], shared_a);
    b.edge(u[0], shared_b);
    b.edge(u[2], shared_a);
    b.edge(u[2], shared_b);
    b.edge(u[1], free[0]);
    b.edge(u[1], free[1]);
    b.edge(u[3], free[2]);
    b.edge(u[3], free[3]);
    let ring = b.vertices(10);
    for i in 0..10 {
        b.edge(ring[i], ring[(i + 1) % 10]);
    }
    b.edge(shared_a, ring[0]);
    b.edge(shared_b, ring[5]);
    b.edge(free[0], ring[1]);
    b.edge(free[0], ring[6]);
    b.edge(free[1], ring[2]);
    b.edge(free[1], ring[7]);
    b.edge(free[2], ring[3]);
    b.edge(free[2], ring[8]);
    b.edge(free[3], ring[4]);
    b.edge(free[3], ring[9]);
    FourTerminal {
        graph: b.build(),
        e,
        f,
        u,
    }
}

/// One terminal's two sides equal one side each of the two opposite
/// terminals: triggers the twin-sides reduction.
pub fn twin_sides_instance() -> FourTerminal {
    let mut b = Builder::new();
    let u = [b.vertex(), b.vertex(), b.vertex(), b.vertex()];
    let e = b.edge(u[0], u[1]);
    let f = b.edge(u[2], u[3]);
    let y1 = b.vertex();
    let y2 = b.vertex();
    let free: Vec<VertexId> = (0..4).map(|_| b.vertex()).collect(); // x11 x12 x32 x42
    b.edge(u[1], y1);
    b.edge(u[1], y2);
    b.edge(u[2], y1);
    b.edge(u[3], y2);
    b.edge(u[0], free[0]);
    b.edge(u[0], free[1]);
    b.edge(u[2], free[2]);
    b.edge(u[3], free[3]);
    let ring = b.vertices(10);
    for i in 0..10 {
        b.edge(ring[i], ring[(i + 1) % 10]);
    }
    b.edge(y1, ring[0]);
    b.edge(y2, ring[5]);
    b.edge(free[0], ring[1]);
    b.edge(free[0], ring[6]);
    b.edge(free[1], ring[2]);
    b.edge(free[1], ring[7]);
    b.edge(free[2], ring[3]);
    b.edge(free[2], ring[8]);
    b.edge(free[3], ring[4]);
    b.edge(free[3], ring[9]);
    FourTerminal {
        graph: b.build(),
        e,
        f,
        u,
    }
}

/// Exactly one cross pair of terminal sides coincides (overlap count 1).
pub fn one_overlap_instance() -> FourTerminal {
    let mut b = Builder::new();
    let u = [b.vertex(), b.vertex(), b.vertex(), b.vertex()];
    let e = b.edge(u[0], u[1]);
    let f = b.edge(u[2], u[3]);
    let y = b.vertex();
    let free: Vec<VertexId> = (0..6).map(|_| b.vertex()).collect();
    b.edge(u[1], y);
    b.edge(u[2], y);
    b.edge(u[0], free[0]);
    b.edge(u[0], free[1]);
    b.edge(u[1], free[2]);
    b.edge(u[2], free[3]);
    b.edge(u[3], free[4]);
    b.edge(u[3], free[5]);
    let ring = b.vertices(13);
    for i in 0..13 {
        b.edge(ring[i], ring[(i + 1) % 13]);
    }
    b.edge(y, ring[0]);
    for (i, &v) in free.iter().enumerate() {
        b.edge(v, ring[1 + i]);
        b.edge(v, ring[7 + i]);
    }
    FourTerminal {
        graph: b.build(),
        e,
        f,
        u,
    }
}

/// Two disjoint cross pairs coincide (overlap count 2).
pub fn two_overlap_instance() -> FourTerminal {
    let mut b = Builder::new();
    let u = [b.vertex(), b.vertex(), b.vertex(), b.vertex()];
    let e = b.edge(u[0], u[1]);
    let f = b.edge(u[2], u[3]);
    let y1 = b.vertex();
    let y2 = b.vertex();
    let free: Vec<VertexId> = (0..4).map(|_| b.vertex()).collect();
    b.edge(u[0], y1);
    b.edge(u[2], y1);
    b.edge(u[1], y2);
    b.edge(u[3], y2);
    b.edge(u[0], free[0]);
    b.edge(u[1], free[1]);
    b.edge(u[2], free[2]);
    b.edge(u[3], free[3]);
    let ring = b.vertices(10);
    for i in 0..10 {
        b.edge(ring[i], ring[(i + 1) % 10]);
    }
    b.edge(y1, ring[0]);
    b.edge(y2, ring[5]);
    for (i, &v) in free.iter().enumerate() {
        b.edge(v, ring[1 + i]);
        b.edge(v, ring[6 + i]);
    }
    FourTerminal {
        graph: b.build(),
        e,
        f,
        u,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::is_3_connected;

    #[test]
    fn named_graphs_are_cubic_and_3_connected() {
        for (name, g) in all_named() {
            assert!(g.is_cubic(), "{name} not cubic");
            assert!(is_3_connected(&g), "{name} not 3-connected");
        }
    }

    #[test]
    fn fig_instances_are_cubic_and_3_connected() {
        for sizes in [[1; 5], [3, 1, 1, 1, 1], [1, 3, 5, 1, 3]] {
            let fig = fig2_instance(sizes);
            assert!(fig.graph.is_cubic());
            assert!(is_3_connected(&fig.graph), "fig2 {sizes:?}");
        }
        let fig = fig3_instance(Fig3Sizes::default());
        assert!(fig.graph.is_cubic());
        assert!(is_3_connected(&fig.graph));
        let p = pentagon_instance();
        assert!(p.graph.is_cubic());
        assert!(is_3_connected(&p.graph));
    }

    #[test]
    fn crafted_four_terminal_instances_are_valid() {
        for (name, inst) in [
            ("paired", paired_sides_instance()),
            ("twin", twin_sides_instance()),
            ("one", one_overlap_instance()),
            ("two", two_overlap_instance()),
        ] {
            assert!(inst.graph.is_cubic(), "{name} not cubic");
            assert!(is_3_connected(&inst.graph), "{name} not 3-connected");
            assert!(!inst.graph.edges_adjacent(inst.e, inst.f).unwrap());
        }
    }

    #[test]
    fn two_blocks_is_cubic_2_connected() {
        let t = two_blocks_bridged();
        assert!(t.graph.is_cubic());
        assert!(crate::cuts::is_2_connected(&t.graph));
        assert!(!is_3_connected(&t.graph));
    }
}
