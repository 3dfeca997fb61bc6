#![allow(dead_code)]

use arbtest::harness::{gen_instance, Family, InstanceDescriptor};
use arbtest::{exact_arboricity, Epsilon, QueryGraph};

pub struct Fixture {
    pub name: String,
    pub graph: QueryGraph,
    pub alpha: usize,
}

pub fn eps(s: &str) -> Epsilon {
    s.parse().unwrap()
}

pub fn complete(k: usize) -> QueryGraph {
    complete_padded(k, k)
}

/// `K_k` on vertices `0..k`, plus isolated vertices up to `n`.
pub fn complete_padded(k: usize, n: usize) -> QueryGraph {
    let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
    QueryGraph::from_edges(n, edges).unwrap()
}

pub fn star(leaves: usize) -> QueryGraph {
    QueryGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

fn fixture(name: String, family: Family, seed: u64, alpha: usize) -> Fixture {
    let graph = gen_instance(&InstanceDescriptor::new(family, seed)).unwrap();
    Fixture { name, graph, alpha }
}

/// Instances expected to be close to arboricity `alpha`, with `n ≤ 5000`.
/// Closeness is certified by the caller.
pub fn close_candidates() -> Vec<Fixture> {
    let mut out = Vec::new();
    for seed in 0..2 {
        for alpha in 1..=4 {
            for m_bar in [400, 1200, 2400] {
                let n = 2 * (m_bar / alpha) + 100;
                out.push(fixture(
                    format!("matching-bipartite(n={n},m={m_bar},a={alpha},s={seed})"),
                    Family::MatchingBipartite { n, m_bar, alpha },
                    seed,
                    alpha,
                ));
            }
        }
    }
    for n in [100, 500, 2000, 5000] {
        for max_degree in [None, Some(3)] {
            out.push(fixture(
                format!("forest(n={n},d={max_degree:?})"),
                Family::Forest { n, max_degree },
                n as u64,
                1,
            ));
        }
    }
    for k in 1..=4 {
        for n in [500, 2000] {
            out.push(fixture(
                format!("preferential-attachment(n={n},k={k})"),
                Family::PreferentialAttachment { n, k },
                (n + k) as u64,
                k,
            ));
        }
    }
    for alpha in 2..=4 {
        for m_bar in [1200, 2400] {
            let n = 2 * (m_bar / alpha) + 20;
            out.push(fixture(
                format!("planted-clique(n={n},m={m_bar},a={alpha},c={})", 2 * alpha + 2),
                Family::PlantedClique {
                    n,
                    m_bar,
                    alpha,
                    clique_size: Some(2 * alpha + 2),
                },
                7,
                alpha,
            ));
        }
    }
    for n in [200, 1000, 3000] {
        for c in [2.0, 4.0, 8.0] {
            let mut f = fixture(
                format!("erdos-renyi(n={n},p={c}/n)"),
                Family::ErdosRenyi { n, p: c / n as f64 },
                11,
                1,
            );
            f.alpha = exact_arboricity(&f.graph).max(1);
            out.push(f);
        }
    }
    out
}

/// Instances expected to be far from arboricity `3·alpha`. Farness is
/// certified by the caller.
pub fn far_candidates() -> Vec<Fixture> {
    let mut out = Vec::new();
    for seed in 0..2 {
        for alpha in 1..=2 {
            for m_bar in [400, 1000, 2000] {
                let n = 2 * (m_bar / alpha) + 50;
                out.push(fixture(
                    format!("planted-clique(n={n},m={m_bar},a={alpha},s={seed})"),
                    Family::PlantedClique {
                        n,
                        m_bar,
                        alpha,
                        clique_size: None,
                    },
                    seed,
                    alpha,
                ));
            }
        }
    }
    for c in [40, 60, 100] {
        out.push(fixture(
            format!("planted-clique(n=1000,m=400,a=1,c={c})"),
            Family::PlantedClique {
                n: 1000,
                m_bar: 400,
                alpha: 1,
                clique_size: Some(c),
            },
            c as u64,
            1,
        ));
    }
    for seed in 0..3 {
        for n in [60, 100, 200] {
            for p in [0.3, 0.6] {
                out.push(fixture(
                    format!("erdos-renyi(n={n},p={p},s={seed})"),
                    Family::ErdosRenyi { n, p },
                    seed,
                    1,
                ));
            }
        }
    }
    for seed in 0..3 {
        for k in [4, 6, 8] {
            for n in [300, 1000] {
                out.push(fixture(
                    format!("preferential-attachment(n={n},k={k},s={seed})"),
                    Family::PreferentialAttachment { n, k },
                    seed,
                    1,
                ));
            }
        }
    }
    for n in [300, 500] {
        out.push(fixture(
            format!("erdos-renyi(n={n},p=0.05)"),
            Family::ErdosRenyi { n, p: 0.05 },
            3,
            1,
        ));
    }
    out
}
