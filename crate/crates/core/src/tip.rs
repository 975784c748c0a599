//! Tip decomposition: peels primary vertices in nondecreasing order of
//! their remaining butterfly counts.
//!
//! When `u` is peeled at level `β(u)`, each unpeeled partner `x` loses the
//! `C(|N(u) ∩ N(x)|, 2)` butterflies it shares with `u`, clamped so that
//! `β(x)` never drops below `β(u)`. Secondary vertices are never removed,
//! so shared counts are taken over the full secondary side.

use crate::butterfly::{choose2, ButterflyCounts, CountKind, PartnerCounter};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, VertexId};
use crate::queue::PeelQueue;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PeelStats {
    /// Butterflies visited while updating neighbors. Each butterfly is
    /// visited once, at its first peeled member.
    pub butterflies_touched: u64,
    /// Key updates applied to the queue.
    pub decrements: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TipResult {
    /// Tip number of every primary vertex.
    pub theta: Vec<u64>,
    pub peel_order: Vec<VertexId>,
    pub initial_beta: Vec<u64>,
    pub stats: PeelStats,
}

impl TipResult {
    pub fn max_theta(&self) -> u64 {
        self.theta.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn check_counts(beta: &ButterflyCounts, kind: CountKind, len: usize) -> Result<()> {
    if beta.kind != kind {
        return Err(Error::Precondition(format!(
            "expected {kind:?} butterfly counts, got {:?}",
            beta.kind
        )));
    }
    if beta.values.len() != len {
        return Err(Error::Precondition(format!(
            "expected {len} butterfly counts, got {}",
            beta.values.len()
        )));
    }
    if !beta.is_consistent() {
        return Err(Error::Precondition(format!(
            "butterfly counts do not sum to {} x total ({})",
            beta.multiplicity(),
            beta.total
        )));
    }
    Ok(())
}

/// Computes tip numbers from per-vertex counts (see
/// [`count_per_vertex`](crate::butterfly::count_per_vertex)).
pub fn tip_decompose(g: &BipartiteGraph, beta: &ButterflyCounts) -> Result<TipResult> {
    check_counts(beta, CountKind::PerVertex, g.u_count())?;

    let n = g.u_count();
    let mut queue = PeelQueue::new(beta.values.clone());
    let mut theta = vec![0u64; n];
    let mut peeled = vec![false; n];
    let mut peel_order = Vec::with_capacity(n);
    let mut stats = PeelStats::default();
    let mut partners = PartnerCounter::new(n);
    let mut level = 0u64;

    while let Some((u, b)) = queue.pop_min() {
        debug_assert!(b >= level, "peel levels must be nondecreasing");
        level = b;
        theta[u as usize] = b;
        peeled[u as usize] = true;
        peel_order.push(u);

        partners.for_each_partner(g, u, |x| !peeled[x as usize], |x, common| {
            let shared = choose2(common);
            if shared == 0 {
                return;
            }
            stats.butterflies_touched += shared;
            if queue.key(x) > b {
                queue.decrease_clamped(x, shared, b);
                stats.decrements += 1;
            }
        });
    }

    Ok(TipResult {
        theta,
        peel_order,
        initial_beta: beta.values.clone(),
        stats,
    })
}
