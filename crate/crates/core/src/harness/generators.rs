//! Instance families, generated with a seeded relabeling and labeled by the
//! exact oracles afterwards.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{QueryGraph, Vertex};
use crate::oracles::{distance_to_arboricity, exact_arboricity, DistanceReport};
use crate::Epsilon;

/// Largest instances the exact oracles label.
pub const LABEL_MAX_VERTICES: usize = 50_000;
pub const LABEL_MAX_EDGES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Two sides of `m_bar/α` vertices joined by `α` cyclic-shift perfect
    /// matchings; remaining vertices isolated.
    MatchingBipartite { n: usize, m_bar: usize, alpha: usize },
    /// The matching-bipartite graph plus a clique on fresh vertices, of
    /// size `⌈√m_bar⌉` unless overridden.
    PlantedClique {
        n: usize,
        m_bar: usize,
        alpha: usize,
        clique_size: Option<usize>,
    },
    /// `⌈3α(1+2ε)⌉` cyclic-shift matchings between two sides of
    /// `⌊m/⌈3α(1+2ε)⌉⌋` vertices.
    FarBipartite { n: usize, m: usize, alpha: usize, eps: Epsilon },
    /// Starts from a clique on `k+1` vertices; each later vertex links to
    /// `k` distinct earlier vertices chosen proportionally to degree.
    PreferentialAttachment { n: usize, k: usize },
    ErdosRenyi { n: usize, p: f64 },
    /// A random tree, optionally with bounded degree.
    Forest { n: usize, max_degree: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceDescriptor {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
}

fn inconsistent<T>(msg: String) -> Result<T, GenError> {
    Err(GenError::Inconsistent(msg))
}

/// Oracle certifications attached after generation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceLabels {
    pub arboricity: usize,
    pub distances: Vec<DistanceReport>,
}

impl InstanceLabels {
    pub fn distance(&self, alpha: usize) -> Option<&DistanceReport> {
        self.distances.iter().find(|d| d.alpha_target == alpha)
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub descriptor: InstanceDescriptor,
    pub graph: QueryGraph,
    pub labels: Option<InstanceLabels>,
}

impl InstanceDescriptor {
    pub fn new(family: Family, seed: u64) -> Self {
        Self { family, seed }
    }

    /// Expected edge count, when the family fixes it.
    pub fn declared_edges(&self) -> Option<usize> {
        match self.family {
            Family::MatchingBipartite { m_bar, alpha, .. } => Some(m_bar / alpha * alpha),
            Family::PlantedClique {
                m_bar,
                alpha,
                clique_size,
                ..
            } => {
                let c = clique_size.unwrap_or_else(|| ceil_sqrt(m_bar));
                Some(m_bar / alpha * alpha + c * (c.saturating_sub(1)) / 2)
            }
            Family::FarBipartite { m, alpha, eps, .. } => {
                let k = far_matchings(alpha, eps);
                Some(m / k * k)
            }
            Family::PreferentialAttachment { n, k } => {
                Some(k * (k + 1) / 2 + n.saturating_sub(k + 1) * k)
            }
            Family::ErdosRenyi { .. } => None,
            Family::Forest { n, .. } => Some(n.saturating_sub(1)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self.family {
            Family::MatchingBipartite { n, .. }
            | Family::PlantedClique { n, .. }
            | Family::FarBipartite { n, .. }
            | Family::PreferentialAttachment { n, .. }
            | Family::ErdosRenyi { n, .. }
            | Family::Forest { n, .. } => n,
        }
    }
}

/// `⌈√x⌉` in integers.
pub fn ceil_sqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r
}

/// `⌈3α(1+2ε)⌉`.
pub fn far_matchings(alpha: usize, eps: Epsilon) -> usize {
    let num = 3 * alpha as u128 * (eps.denom() as u128 + 2 * eps.numer() as u128);
    num.div_ceil(eps.denom() as u128) as usize
}

/// `k` cyclic-shift perfect matchings between `[base, base+s)` and
/// `[base+s, base+2s)`.
fn shift_matchings(edges: &mut Vec<(Vertex, Vertex)>, base: usize, s: usize, k: usize) {
    for shift in 0..k {
        for i in 0..s {
            edges.push((base + i, base + s + (i + shift) % s));
        }
    }
}

fn matching_part(n: usize, m_bar: usize, alpha: usize, extra: usize) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    if alpha == 0 {
        return inconsistent("alpha must be at least 1".into());
    }
    let s = m_bar / alpha;
    if s < alpha {
        return inconsistent(format!("m_bar/alpha = {s} is smaller than alpha = {alpha}"));
    }
    if n < 2 * s + extra {
        return inconsistent(format!("n = {n} is below the required {}", 2 * s + extra));
    }
    let mut edges = Vec::with_capacity(s * alpha);
    shift_matchings(&mut edges, 0, s, alpha);
    Ok(edges)
}

/// Builds the instance graph (no labels).
pub fn gen_instance(desc: &InstanceDescriptor) -> Result<QueryGraph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(desc.seed);
    let n = desc.vertex_count();
    let edges = match desc.family {
        Family::MatchingBipartite { n, m_bar, alpha } => matching_part(n, m_bar, alpha, 0)?,
        Family::PlantedClique {
            n,
            m_bar,
            alpha,
            clique_size,
        } => {
            let c = clique_size.unwrap_or_else(|| ceil_sqrt(m_bar));
            let mut edges = matching_part(n, m_bar, alpha, c)?;
            let base = 2 * (m_bar / alpha);
            for u in 0..c {
                for v in u + 1..c {
                    edges.push((base + u, base + v));
                }
            }
            edges
        }
        Family::FarBipartite { n, m, alpha, eps } => {
            if alpha == 0 {
                return inconsistent("alpha must be at least 1".into());
            }
            let k = far_matchings(alpha, eps);
            let s = m / k;
            if s < k {
                return inconsistent(format!("m = {m} allows sides of {s} < {k} matchings"));
            }
            if n < 2 * s {
                return inconsistent(format!("n = {n} is below the required {}", 2 * s));
            }
            let mut edges = Vec::with_capacity(s * k);
            shift_matchings(&mut edges, 0, s, k);
            edges
        }
        Family::PreferentialAttachment { n, k } => preferential_attachment(n, k, &mut rng)?,
        Family::ErdosRenyi { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return inconsistent(format!("p = {p} is not a probability"));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        Family::Forest { n, max_degree } => random_tree(n, max_degree, &mut rng)?,
    };
    Ok(relabel(n, edges, &mut rng))
}

fn preferential_attachment<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    if k == 0 {
        return inconsistent("k must be at least 1".into());
    }
    if n < k + 1 {
        return inconsistent(format!("n = {n} is below k + 1 = {}", k + 1));
    }
    let mut edges = Vec::new();
    // Each vertex appears once per incident edge.
    let mut ends: Vec<Vertex> = Vec::new();
    for u in 0..=k {
        for v in u + 1..=k {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut picked = Vec::with_capacity(k);
    for v in k + 1..n {
        picked.clear();
        while picked.len() < k {
            let w = ends[rng.gen_range(0..ends.len())];
            if !picked.contains(&w) {
                picked.push(w);
            }
        }
        for &w in &picked {
            edges.push((w, v));
            ends.extend([w, v]);
        }
    }
    Ok(edges)
}

fn random_tree<R: Rng>(n: usize, max_degree: Option<usize>, rng: &mut R) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    let cap = max_degree.unwrap_or(usize::MAX);
    if cap < 2 && n > 2 {
        return inconsistent(format!("a tree on {n} vertices needs max degree at least 2"));
    }
    let mut degree = vec![0usize; n];
    // Earlier vertices that can still take a child.
    let mut open: Vec<Vertex> = Vec::new();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v > 0 {
            let idx = rng.gen_range(0..open.len());
            let p = open[idx];
            edges.push((p, v));
            degree[p] += 1;
            degree[v] += 1;
            if degree[p] >= cap {
                open.swap_remove(idx);
            }
        }
        if degree[v] < cap {
            open.push(v);
        }
    }
    Ok(edges)
}

/// Applies a uniform vertex permutation and a uniform edge order.
fn relabel<R: Rng>(n: usize, mut edges: Vec<(Vertex, Vertex)>, rng: &mut R) -> QueryGraph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    edges.shuffle(rng);
    QueryGraph::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
        .expect("generated edges are valid")
}

/// Exact arboricity and distances to `alphas`, or `None` above the caps.
pub fn label_instance(graph: &QueryGraph, alphas: &[usize]) -> Option<InstanceLabels> {
    if graph.n() > LABEL_MAX_VERTICES || graph.m() > LABEL_MAX_EDGES {
        return None;
    }
    Some(InstanceLabels {
        arboricity: exact_arboricity(graph),
        distances: alphas.iter().map(|&a| distance_to_arboricity(graph, a)).collect(),
    })
}

/// Generates and labels with distances to `α` and `3α`, where `α` is the
/// family's own parameter (1 when it has none).
pub fn build_instance(desc: InstanceDescriptor) -> Result<Instance, GenError> {
    let graph = gen_instance(&desc)?;
    let alpha = match desc.family {
        Family::MatchingBipartite { alpha, .. }
        | Family::PlantedClique { alpha, .. }
        | Family::FarBipartite { alpha, .. } => alpha,
        Family::PreferentialAttachment { k, .. } => k,
        Family::ErdosRenyi { .. } | Family::Forest { .. } => 1,
    };
    let labels = label_instance(&graph, &[alpha, 3 * alpha]);
    Ok(Instance {
        descriptor: desc,
        graph,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_bipartite_example() {
        let d = InstanceDescriptor::new(Family::MatchingBipartite { n: 3000, m_bar: 4000, alpha: 4 }, 1);
        let g = gen_instance(&d).unwrap();
        assert_eq!(g.m(), 4000);
        assert_eq!(d.declared_edges(), Some(4000));
        let sides = (0..g.n()).filter(|&v| g.degree(v) == 4).count();
        assert_eq!(sides, 2000);
        assert!(exact_arboricity(&g) <= 4);
    }

    #[test]
    fn planted_clique_example() {
        let d = InstanceDescriptor::new(
            Family::PlantedClique { n: 3000, m_bar: 4000, alpha: 4, clique_size: None },
            2,
        );
        let g = gen_instance(&d).unwrap();
        assert_eq!(ceil_sqrt(4000), 64);
        assert_eq!(g.m(), 4000 + 2016);
        assert_eq!((0..g.n()).filter(|&v| g.degree(v) == 63).count(), 64);
    }

    #[test]
    fn forest_example() {
        let d = InstanceDescriptor::new(Family::Forest { n: 100, max_degree: None }, 3);
        let g = gen_instance(&d).unwrap();
        assert_eq!(g.m(), 99);
        assert_eq!(exact_arboricity(&g), 1);
        let d = InstanceDescriptor::new(Family::Forest { n: 500, max_degree: Some(3) }, 3);
        assert!(gen_instance(&d).unwrap().max_degree() <= 3);
    }

    #[test]
    fn far_bipartite_counts() {
        let eps: Epsilon = "1/20".parse().unwrap();
        assert_eq!(far_matchings(1, eps), 4);
        assert_eq!(far_matchings(2, eps), 7);
        let d = InstanceDescriptor::new(Family::FarBipartite { n: 600, m: 1000, alpha: 1, eps }, 4);
        let g = gen_instance(&d).unwrap();
        assert_eq!(g.m(), 1000);
        assert!((0..g.n()).all(|v| g.degree(v) == 0 || g.degree(v) == 4));
    }

    #[test]
    fn preferential_attachment_counts() {
        let d = InstanceDescriptor::new(Family::PreferentialAttachment { n: 300, k: 3 }, 5);
        let g = gen_instance(&d).unwrap();
        assert_eq!(Some(g.m()), d.declared_edges());
        assert!(exact_arboricity(&g) <= 3);
    }

    #[test]
    fn inconsistent_parameters() {
        let d = InstanceDescriptor::new(Family::MatchingBipartite { n: 10, m_bar: 40, alpha: 2 }, 0);
        assert!(gen_instance(&d).is_err());
        let d = InstanceDescriptor::new(Family::ErdosRenyi { n: 10, p: 1.5 }, 0);
        assert!(gen_instance(&d).is_err());
    }

    #[test]
    fn seeds_are_deterministic() {
        let d = InstanceDescriptor::new(Family::ErdosRenyi { n: 60, p: 0.1 }, 9);
        let a: Vec<_> = gen_instance(&d).unwrap().edges().collect();
        let b: Vec<_> = gen_instance(&d).unwrap().edges().collect();
        assert_eq!(a, b);
    }
}
