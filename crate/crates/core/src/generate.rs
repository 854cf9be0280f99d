//! Seeded random 3-connected cubic graphs, grown from K4 by edge insertion.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::cuts::is_3_connected;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::surgery::Window;

/// Grow a 3-connected cubic graph on `n` vertices: starting from K4, apply
/// (n−4)/2 insertions on random distinct edge pairs, rejecting any step
/// whose result is not 3-connected. Deterministic per seed.
pub fn random_cubic_3connected(n: usize, seed: u64) -> Result<MultiGraph> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder(n));
    }
    if n < 4 {
        return Err(Error::PreconditionViolated(
            "need at least 4 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut g, _) = corpus::k4();
    while g.order() < n {
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let next = loop {
            let i = rng.random_range(0..edges.len());
            let j = rng.random_range(0..edges.len());
            if i == j {
                continue;
            }
            let mut w = Window::new(&g);
            w.insert(edges[i], edges[j])?;
            if is_3_connected(w.graph()) {
                break w.graph().clone();
            }
        };
        g = next;
    }
    Ok(g)
}
