//! Full-access ground truth: exact arboricity, exact deletion distance to
//! bounded arboricity, and exhaustive censuses used to certify fixtures.

mod census;
mod matroid;

pub use census::{degeneracy, high_edge_count, low_edges_remaining, pair_census};
pub use matroid::{covers_all, max_forest_union, DisjointSets, ForestUnion};

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::assign_edges_rounds;
use crate::graph::{QueryGraph, Vertex};
use crate::Epsilon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force is limited to 16 vertices, got {0}")]
    TooLarge(usize),
}

/// Exact distance, by deletions, to arboricity at most `alpha_target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub alpha_target: usize,
    pub m: usize,
    pub max_forest_union_size: usize,
    pub deletions_needed: usize,
}

impl DistanceReport {
    /// `deletions / m`, or 0 for the empty graph.
    pub fn eps_exact(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.deletions_needed as f64 / self.m as f64
        }
    }

    /// At most `ε·m` deletions suffice.
    pub fn is_close(&self, eps: Epsilon) -> bool {
        self.deletions_needed as u128 * eps.denom() as u128 <= self.m as u128 * eps.numer() as u128
    }

    /// More than `(num/den)·m` deletions are needed.
    pub fn is_far(&self, num: u64, den: u64) -> bool {
        self.deletions_needed as u128 * den as u128 > self.m as u128 * num as u128
    }
}

pub fn distance_to_arboricity(graph: &QueryGraph, alpha: usize) -> DistanceReport {
    let covered = max_forest_union(graph, alpha);
    DistanceReport {
        alpha_target: alpha,
        m: graph.m(),
        max_forest_union_size: covered,
        deletions_needed: graph.m() - covered,
    }
}

/// Minimum number of forests partitioning the edges; 0 for the empty graph.
///
/// Binary search between the density bound `⌈m/(n′−1)⌉` over the `n′`
/// non-isolated vertices and the degeneracy.
pub fn exact_arboricity(graph: &QueryGraph) -> usize {
    let m = graph.m();
    if m == 0 {
        return 0;
    }
    let touched = (0..graph.n()).filter(|&v| graph.degree(v) > 0).count();
    let mut lo = m.div_ceil(touched - 1).max(1);
    let mut hi = degeneracy(graph).max(lo);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if covers_all(graph, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `max_S ⌈|E(S)| / (|S| − 1)⌉` over all subsets with `|S| ≥ 2`.
pub fn brute_force_arboricity_small(graph: &QueryGraph) -> Result<usize, OracleError> {
    let n = graph.n();
    if n > 16 {
        return Err(OracleError::TooLarge(n));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let mut best = 0usize;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let twice: u32 = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| (adj[v] & set).count_ones())
            .sum();
        let edges = twice as usize / 2;
        best = best.max(edges.div_ceil(size - 1));
    }
    Ok(best)
}

/// `v ∈ A_ℓ(γ)` according to the full peeling.
pub fn exact_activity_membership(
    graph: &QueryGraph,
    alpha: usize,
    gamma: f64,
    ell: usize,
    v: Vertex,
) -> bool {
    assign_edges_rounds(graph, alpha, ell, gamma).is_active(v)
}
