//! Wing decomposition: peels edges in nondecreasing order of their
//! remaining butterfly counts.
//!
//! A butterfly is discounted only while all three companions of the peeled
//! edge are unassigned, so each butterfly is discounted exactly once, at
//! its first peeled edge. Companion counts are clamped at the current level.

use crate::butterfly::{for_each_butterfly_of_edge, ButterflyCounts, CountKind};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId};
use crate::queue::PeelQueue;
use crate::tip::{check_counts, PeelStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WingResult {
    /// Wing number of every edge.
    pub psi: Vec<u64>,
    pub peel_order: Vec<EdgeId>,
    pub initial_beta: Vec<u64>,
    pub stats: PeelStats,
}

impl WingResult {
    pub fn max_psi(&self) -> u64 {
        self.psi.iter().copied().max().unwrap_or(0)
    }
}

/// Computes wing numbers from per-edge counts (see
/// [`count_per_edge`](crate::butterfly::count_per_edge)).
pub fn wing_decompose(g: &BipartiteGraph, beta: &ButterflyCounts) -> Result<WingResult> {
    check_counts(beta, CountKind::PerEdge, g.edge_count())?;

    let m = g.edge_count();
    let mut queue = PeelQueue::new(beta.values.clone());
    let mut psi = vec![0u64; m];
    let mut assigned = vec![false; m];
    let mut peel_order = Vec::with_capacity(m);
    let mut stats = PeelStats::default();
    let mut level = 0u64;
    let mut found: Vec<[EdgeId; 3]> = Vec::new();

    while let Some((e, b)) = queue.pop_min() {
        debug_assert!(b >= level, "peel levels must be nondecreasing");
        level = b;
        psi[e as usize] = b;
        assigned[e as usize] = true;
        peel_order.push(e);

        found.clear();
        for_each_butterfly_of_edge(g, e, |f| !assigned[f as usize], |companions| {
            found.push(companions)
        });
        for companions in &found {
            stats.butterflies_touched += 1;
            for &f in companions {
                if queue.key(f) > b {
                    queue.decrease_clamped(f, 1, b);
                    stats.decrements += 1;
                }
            }
        }
    }

    Ok(WingResult {
        psi,
        peel_order,
        initial_beta: beta.values.clone(),
        stats,
    })
}

/// Edges ordered by decreasing wing number, so that `{e : ψ(e) ≥ k}` is a
/// prefix for every `k` and the levels are nested by construction.
#[derive(Clone, Debug)]
pub struct WingLevels {
    order: Vec<EdgeId>,
    psi_desc: Vec<u64>,
}

impl WingLevels {
    /// Edges with `ψ(e) ≥ k`, highest ψ first.
    pub fn at_least(&self, k: u64) -> &[EdgeId] {
        let end = self.psi_desc.partition_point(|&p| p >= k);
        &self.order[..end]
    }

    pub fn max_level(&self) -> u64 {
        self.psi_desc.first().copied().unwrap_or(0)
    }
}

pub fn k_wing_edge_sets(result: &WingResult, g: &BipartiteGraph) -> Result<WingLevels> {
    if result.psi.len() != g.edge_count() {
        return Err(Error::Precondition("wing result does not match graph".into()));
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count() as EdgeId).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(result.psi[e as usize]), e));
    let psi_desc = order.iter().map(|&e| result.psi[e as usize]).collect();
    Ok(WingLevels { order, psi_desc })
}
