use crate::decomposition::ActivityTrace;
use crate::graph::{precedes_by_degree, QueryGraph};
use crate::Epsilon;

/// Edges whose endpoints both have degree above `2α/ε`.
pub fn high_edge_count(graph: &QueryGraph, alpha: usize, eps: Epsilon) -> usize {
    let high = |v| eps.exceeds_high_threshold(graph.degree(v), alpha);
    graph.edges().filter(|&(u, v)| high(u) && high(v)).count()
}

/// Edges of `G_ℓ(γ)` with at least one low-degree endpoint.
pub fn low_edges_remaining(graph: &QueryGraph, trace: &ActivityTrace, alpha: usize, eps: Epsilon) -> usize {
    let low = |v| !eps.exceeds_high_threshold(graph.degree(v), alpha);
    graph
        .edges()
        .filter(|&(u, v)| trace.is_active(u) && trace.is_active(v) && (low(u) || low(v)))
        .count()
}

/// Pairs `(v, j)` with `v` low-degree and active, `j ≤ d(v)`, the `j`-th
/// neighbor `u` active, and `v ≺ u`, enumerated exhaustively.
pub fn pair_census(graph: &QueryGraph, trace: &ActivityTrace, alpha: usize, eps: Epsilon) -> usize {
    let mut count = 0;
    for v in 0..graph.n() {
        let dv = graph.degree(v);
        if eps.exceeds_high_threshold(dv, alpha) || !trace.is_active(v) {
            continue;
        }
        for &u in graph.neighbors(v) {
            if trace.is_active(u) && precedes_by_degree(v, dv, u, graph.degree(u)) {
                count += 1;
            }
        }
    }
    count
}

/// Largest minimum degree over all subgraphs, by repeatedly removing a
/// vertex of minimum degree.
pub fn degeneracy(graph: &QueryGraph) -> usize {
    let n = graph.n();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let max = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut floor = 0;
    for _ in 0..n {
        let v = loop {
            while buckets[floor].is_empty() {
                floor += 1;
            }
            let v = buckets[floor].pop().unwrap();
            if !removed[v] && degree[v] == floor {
                break v;
            }
        };
        removed[v] = true;
        best = best.max(floor);
        for &w in graph.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                floor = floor.min(degree[w]);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::assign_edges;

    fn complete(k: usize) -> QueryGraph {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        QueryGraph::from_edges(k, edges).unwrap()
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(&complete(6)), 5);
        assert_eq!(degeneracy(&QueryGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()), 1);
        assert_eq!(degeneracy(&QueryGraph::empty(3)), 0);
    }

    #[test]
    fn k8_census() {
        let g = complete(8);
        let e: Epsilon = "1/20".parse().unwrap();
        assert_eq!(high_edge_count(&g, 1, e), 0);
        let t = assign_edges(&g, 1, e, 0.1);
        assert_eq!(low_edges_remaining(&g, &t, 1, e), 28);
        assert_eq!(pair_census(&g, &t, 1, e), 28);
    }
}
