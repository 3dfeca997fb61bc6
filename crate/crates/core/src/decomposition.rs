//! Full-access edge assignment and the forest decomposition built from it.
//!
//! [`assign_edges`] peels, in each round, every still-active vertex whose
//! degree among active vertices is at most `3α + γ·d(v)`, assigning it the
//! edges it still has. After `ℓ` rounds the edges between survivors form
//! `G_ℓ(γ)`. This is the ground truth the sublinear activity procedure
//! approximates.

use serde::Serialize;

use crate::graph::{QueryGraph, Vertex};
use crate::Epsilon;

/// `⌈log_{6/5}(1/ε)⌉`, the number of peeling rounds.
pub fn rounds_for(eps: f64) -> usize {
    assert!(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
    let raw = (1.0 / eps).ln() / (6.0f64 / 5.0).ln();
    // 1e-9 absorbs float noise when 1/ε is an exact power of 6/5.
    (raw - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone, Serialize)]
pub struct ActivityTrace {
    pub gamma: f64,
    pub alpha: usize,
    pub ell: usize,
    /// Round (1-based) at which each vertex entered `B_i`; `None` if the
    /// vertex is still active after the last round.
    pub peeled_at: Vec<Option<usize>>,
    /// `a(v)`: number of edges assigned to `v`.
    pub assigned: Vec<usize>,
    /// `|E(G_i(γ))|` for `i = 0..=ℓ`.
    pub remaining_edges: Vec<usize>,
}

impl ActivityTrace {
    /// `B_i(γ)` for `1 ≤ i ≤ ℓ`, ascending ids.
    pub fn peeled_in(&self, round: usize) -> Vec<Vertex> {
        (0..self.peeled_at.len())
            .filter(|&v| self.peeled_at[v] == Some(round))
            .collect()
    }

    /// `v ∈ A_i(γ)`.
    #[inline]
    pub fn is_active_after(&self, v: Vertex, round: usize) -> bool {
        match self.peeled_at[v] {
            None => true,
            Some(r) => r > round,
        }
    }

    /// `A_i(γ)`, ascending ids.
    pub fn active_after(&self, round: usize) -> Vec<Vertex> {
        (0..self.peeled_at.len())
            .filter(|&v| self.is_active_after(v, round))
            .collect()
    }

    /// `v ∈ A_ℓ(γ)`.
    #[inline]
    pub fn is_active(&self, v: Vertex) -> bool {
        self.peeled_at[v].is_none()
    }

    /// `|E(G_ℓ(γ))|`.
    pub fn final_remaining(&self) -> usize {
        *self.remaining_edges.last().expect("at least G_0")
    }

    /// Which endpoints an edge was assigned to. Both flags are false iff the
    /// edge survives into `G_ℓ(γ)`.
    pub fn edge_owners(&self, u: Vertex, v: Vertex) -> (bool, bool) {
        let owns = |x: Vertex, y: Vertex| match (self.peeled_at[x], self.peeled_at[y]) {
            (Some(rx), Some(ry)) => rx <= ry,
            (Some(_), None) => true,
            (None, _) => false,
        };
        (owns(u, v), owns(v, u))
    }

    /// Whether `v` was assigned the edge to `w`.
    fn assigns(&self, v: Vertex, w: Vertex) -> bool {
        self.edge_owners(v, w).0
    }
}

/// Runs the peeling for `⌈log_{6/5}(1/ε)⌉` rounds.
pub fn assign_edges(graph: &QueryGraph, alpha: usize, eps: Epsilon, gamma: f64) -> ActivityTrace {
    assign_edges_rounds(graph, alpha, rounds_for(eps.to_f64()), gamma)
}

/// Runs the peeling for an explicit number of rounds.
pub fn assign_edges_rounds(graph: &QueryGraph, alpha: usize, ell: usize, gamma: f64) -> ActivityTrace {
    assert!(alpha >= 1, "alpha must be at least 1");
    assert!(gamma >= 0.0, "gamma must be non-negative");
    let n = graph.n();
    let base = 3.0 * alpha as f64;
    let mut peeled_at: Vec<Option<usize>> = vec![None; n];
    let mut current: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut assigned = vec![0usize; n];
    let mut remaining = Vec::with_capacity(ell + 1);
    let mut edges_left = graph.m();
    remaining.push(edges_left);

    let mut active: Vec<Vertex> = (0..n).collect();
    for round in 1..=ell {
        let batch: Vec<Vertex> = active
            .iter()
            .copied()
            .filter(|&v| current[v] as f64 <= base + gamma * graph.degree(v) as f64)
            .collect();
        for &v in &batch {
            peeled_at[v] = Some(round);
            assigned[v] = current[v];
        }
        let mut removed = 0usize;
        for &v in &batch {
            for &w in graph.neighbors(v) {
                match peeled_at[w] {
                    None => {
                        current[w] -= 1;
                        removed += 1;
                    }
                    // Both endpoints peeled together: count the edge once.
                    Some(r) if r == round && v < w => removed += 1,
                    _ => {}
                }
            }
        }
        edges_left -= removed;
        remaining.push(edges_left);
        active.retain(|&v| peeled_at[v].is_none());
    }

    ActivityTrace {
        gamma,
        alpha,
        ell,
        peeled_at,
        assigned,
        remaining_edges: remaining,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedEdge {
    pub tail: Vertex,
    pub head: Vertex,
    /// Forest index in `1..=3α`.
    pub forest: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForestDecomposition {
    pub alpha: usize,
    /// Edges removed, as `(min, max)` pairs.
    pub removed_edges: Vec<(Vertex, Vertex)>,
    /// Kept edges with orientation and forest label.
    pub kept: Vec<OrientedEdge>,
    /// `|E(G_ℓ(γ))| + Σ max{a(v) − 3α, 0}`.
    pub removal_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("trace has {trace} vertices but the graph has {graph}")]
    VertexCountMismatch { trace: usize, graph: usize },
    #[error("trace was built with alpha = {trace}, decomposition requested alpha = {requested}")]
    AlphaMismatch { trace: usize, requested: usize },
    #[error("assigned count at vertex {0} disagrees with the graph")]
    AssignmentMismatch(Vertex),
}

/// Turns a trace into a forest decomposition of the kept edges.
///
/// Removes `G_ℓ(γ)` and, per vertex, its last `max{a(v) − 3α, 0}` assigned
/// edges in adjacency order. Kept edges point from the endpoint peeled
/// first to the one peeled later (never-peeled counts as last; same round
/// goes from the smaller id). Each vertex then has at most `3α` out-edges,
/// and an edge's forest label is its slot among its tail's out-edges.
pub fn forest_decomposition(
    graph: &QueryGraph,
    trace: &ActivityTrace,
    alpha: usize,
) -> Result<ForestDecomposition, DecompositionError> {
    let n = graph.n();
    if trace.peeled_at.len() != n {
        return Err(DecompositionError::VertexCountMismatch {
            trace: trace.peeled_at.len(),
            graph: n,
        });
    }
    if trace.alpha != alpha {
        return Err(DecompositionError::AlphaMismatch {
            trace: trace.alpha,
            requested: alpha,
        });
    }
    let cap = 3 * alpha;

    // Edges each vertex drops, keyed by (min, max).
    let mut dropped = std::collections::HashSet::new();
    let mut excess_total = 0usize;
    for v in 0..n {
        if trace.peeled_at[v].is_none() {
            continue;
        }
        let mine: Vec<Vertex> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| trace.assigns(v, w))
            .collect();
        if mine.len() != trace.assigned[v] {
            return Err(DecompositionError::AssignmentMismatch(v));
        }
        let excess = mine.len().saturating_sub(cap);
        excess_total += excess;
        for &w in &mine[mine.len() - excess..] {
            dropped.insert((v.min(w), v.max(w)));
        }
    }

    let mut removed_edges = Vec::new();
    let mut kept = Vec::new();
    let mut out_degree = vec![0usize; n];
    for (u, v) in graph.edges() {
        let survives = trace.is_active(u) && trace.is_active(v);
        if survives || dropped.contains(&(u, v)) {
            removed_edges.push((u, v));
            continue;
        }
        let (tail, head) = orient(trace, u, v);
        out_degree[tail] += 1;
        kept.push(OrientedEdge {
            tail,
            head,
            forest: out_degree[tail],
        });
    }

    Ok(ForestDecomposition {
        alpha,
        removed_edges,
        kept,
        removal_bound: trace.final_remaining() + excess_total,
    })
}

fn orient(trace: &ActivityTrace, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    let key = |x: Vertex| trace.peeled_at[x].unwrap_or(usize::MAX);
    match key(u).cmp(&key(v)) {
        std::cmp::Ordering::Less => (u, v),
        std::cmp::Ordering::Greater => (v, u),
        std::cmp::Ordering::Equal => (u.min(v), u.max(v)),
    }
}

/// Outcome of mechanically checking a [`ForestDecomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub acyclic: bool,
    pub max_out_degree: usize,
    pub forests_used: usize,
    pub labels_in_range: bool,
    pub each_label_is_forest: bool,
    pub partitions_edges: bool,
    pub removals_within_bound: bool,
}

impl DecompositionCheck {
    pub fn is_valid(&self, alpha: usize) -> bool {
        self.acyclic
            && self.max_out_degree <= 3 * alpha
            && self.forests_used <= 3 * alpha
            && self.labels_in_range
            && self.each_label_is_forest
            && self.partitions_edges
            && self.removals_within_bound
    }
}

/// Verifies acyclicity by Kahn's algorithm, the label classes with a
/// union-find per class, and that kept + removed is exactly `E`.
pub fn check_decomposition(graph: &QueryGraph, dec: &ForestDecomposition) -> DecompositionCheck {
    let n = graph.n();
    let mut indeg = vec![0usize; n];
    let mut outs: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut out_degree = vec![0usize; n];
    for e in &dec.kept {
        indeg[e.head] += 1;
        outs[e.tail].push(e.head);
        out_degree[e.tail] += 1;
    }
    let mut queue: Vec<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &outs[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    let acyclic = seen == n;

    let cap = 3 * dec.alpha;
    let labels_in_range = dec.kept.iter().all(|e| e.forest >= 1 && e.forest <= cap);
    let forests_used = dec.kept.iter().map(|e| e.forest).max().unwrap_or(0);
    let mut classes: Vec<crate::oracles::DisjointSets> =
        (0..forests_used).map(|_| crate::oracles::DisjointSets::new(n)).collect();
    let each_label_is_forest = dec
        .kept
        .iter()
        .all(|e| classes[e.forest - 1].union(e.tail, e.head));

    let mut all: Vec<(Vertex, Vertex)> = dec
        .kept
        .iter()
        .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
        .chain(dec.removed_edges.iter().copied())
        .collect();
    all.sort_unstable();
    let mut expected: Vec<(Vertex, Vertex)> = graph.edges().collect();
    expected.sort_unstable();

    DecompositionCheck {
        acyclic,
        max_out_degree: out_degree.into_iter().max().unwrap_or(0),
        forests_used,
        labels_in_range,
        each_label_is_forest,
        partitions_edges: all == expected,
        removals_within_bound: dec.removed_edges.len() <= dec.removal_bound,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PeelingBoundReport {
    pub alpha: usize,
    pub eps: f64,
    pub gamma: f64,
    pub beta: f64,
    pub ell: usize,
    pub m: usize,
    /// `|E(G_ℓ(0))|`.
    pub remaining_at_zero: usize,
    /// `5εm`.
    pub close_bound: f64,
    pub close_bound_holds: bool,
    /// `|E(G_ℓ(γ))|`.
    pub remaining_at_gamma: usize,
    /// `(β − 2γ)m`.
    pub far_threshold: f64,
    pub far_bound_holds: bool,
}

/// Measures both sides of the close/far dichotomy for one graph. Which side
/// the graph is actually on is decided by the exact oracles, not here.
pub fn verify_peeling_bound(
    graph: &QueryGraph,
    alpha: usize,
    eps: Epsilon,
    gamma: f64,
    beta: f64,
) -> PeelingBoundReport {
    let at_zero = assign_edges(graph, alpha, eps, 0.0);
    let at_gamma = assign_edges(graph, alpha, eps, gamma);
    let m = graph.m();
    let eps_f = eps.to_f64();
    let close_bound = 5.0 * eps_f * m as f64;
    let far_threshold = (beta - 2.0 * gamma) * m as f64;
    let remaining_at_zero = at_zero.final_remaining();
    let remaining_at_gamma = at_gamma.final_remaining();
    PeelingBoundReport {
        alpha,
        eps: eps_f,
        gamma,
        beta,
        ell: at_zero.ell,
        m,
        remaining_at_zero,
        close_bound,
        close_bound_holds: remaining_at_zero as f64 <= close_bound,
        remaining_at_gamma,
        far_threshold,
        far_bound_holds: remaining_at_gamma as f64 > far_threshold,
    }
}
