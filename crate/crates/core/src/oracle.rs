//! Brute-force ground truth: exact maximum-weight cycles by DFS over simple
//! paths with remaining-weight pruning.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};

pub struct OracleResult {
    pub weight: u64,
    pub cycle: Cycle,
}

struct Search<'a> {
    g: &'a MultiGraph,
    w: &'a WeightMap,
    required: Vec<EdgeId>,
    deadline: Option<(Instant, u64)>,
    ticks: u64,
    best: Option<(u64, Vec<EdgeId>)>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if let Some((start, ms)) = self.deadline {
            if self.ticks.is_multiple_of(4096) && start.elapsed().as_millis() as u64 > ms {
                return Err(Error::BudgetExceeded);
            }
        }
        Ok(())
    }

    /// Extend a simple path toward `target`, tracking the weight still
    /// available (current path weight plus all unvisited weight).
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        head: VertexId,
        target: VertexId,
        banned: EdgeId,
        min_edge: EdgeId,
        visited: &mut BTreeSet<VertexId>,
        path: &mut Vec<EdgeId>,
        path_weight: u64,
        free_weight: u64,
    ) -> Result<()> {
        self.tick()?;
        if head == target {
            if self.required.iter().all(|r| path.contains(r))
                && self.best.as_ref().is_none_or(|(bw, _)| path_weight > *bw)
            {
                self.best = Some((path_weight, path.clone()));
            }
            return Ok(());
        }
        // Remaining-weight bound.
        if let Some((bw, _)) = &self.best {
            if path_weight + free_weight <= *bw {
                return Ok(());
            }
        }
        for &(e, v) in self.g.incident(head) {
            if e == banned || e < min_edge || path.contains(&e) {
                continue;
            }
            // The target is pre-marked visited; stepping onto it closes the
            // cycle, anything else visited is off limits.
            if v != target && visited.contains(&v) {
                continue;
            }
            let newly = visited.insert(v);
            path.push(e);
            let gain = if v == target { 0 } else { self.w.get(v) };
            self.dfs(
                v,
                target,
                banned,
                min_edge,
                visited,
                path,
                path_weight + gain,
                free_weight - gain,
            )?;
            path.pop();
            if newly {
                visited.remove(&v);
            }
        }
        Ok(())
    }
}

/// Exact maximum-weight cycle through `through_e` (and `through_f` when
/// given); with neither constraint, the global maximum-weight cycle. `None`
/// when no qualifying cycle exists. A time budget may abort the search with
/// `BudgetExceeded`; results, when returned, are exact and deterministic.
pub fn max_cycle(
    g: &MultiGraph,
    w: &WeightMap,
    through_e: Option<EdgeId>,
    through_f: Option<EdgeId>,
    budget_ms: Option<u64>,
) -> Result<Option<OracleResult>> {
    if through_e.is_none() && through_f.is_some() {
        return Err(Error::PreconditionViolated(
            "second edge requires the first".into(),
        ));
    }
    let deadline = budget_ms.map(|ms| (Instant::now(), ms));
    let total: u64 = g.vertices().map(|v| w.get(v)).sum();
    let mut best: Option<(u64, Vec<EdgeId>)> = None;
    let bases: Vec<EdgeId> = match through_e {
        Some(e) => vec![e],
        None => g.edge_ids().collect(),
    };
    for base in bases {
        // Without a prescribed edge, enumerate each cycle once at its
        // minimum edge id by forbidding smaller ids.
        let min_edge = if through_e.is_some() { EdgeId(0) } else { base };
        let (a, b) = g.endpoints(base)?;
        let mut s = Search {
            g,
            w,
            required: through_f.into_iter().collect(),
            deadline,
            ticks: 0,
            best: best.clone(),
        };
        let mut visited: BTreeSet<VertexId> = [a, b].into_iter().collect();
        let mut path = vec![base];
        let start_weight = w.get(a) + w.get(b);
        s.dfs(
            b,
            a,
            base,
            min_edge,
            &mut visited,
            &mut path,
            start_weight,
            total - start_weight,
        )?;
        if let Some((bw, edges)) = s.best {
            if best.as_ref().is_none_or(|(cur, _)| bw > *cur) {
                best = Some((bw, edges));
            }
        }
    }
    match best {
        None => Ok(None),
        Some((weight, edges)) => {
            let cycle = Cycle::from_edge_list(g, edges)?;
            debug_assert_eq!(cycle.weight(w), weight);
            Ok(Some(OracleResult { weight, cycle }))
        }
    }
}
