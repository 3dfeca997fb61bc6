mod common;

use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use arbtest::decomposition::{assign_edges_rounds, check_decomposition};
use arbtest::graph::Query;
use arbtest::harness::{gen_instance, Family, InstanceDescriptor};
use arbtest::oracles::high_edge_count;
use arbtest::samplers::SamplerConstants;
use arbtest::{
    distance_to_arboricity, estimate_edge_count, estimate_high_edges, exact_arboricity, forest_decomposition,
    is_active, is_bounded_arboricity, Answer, QueryGraph, QuerySession, Stage, TesterConfig,
};
use common::eps;

fn graph_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = QueryGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = pairs
                .into_iter()
                .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            QueryGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn relabel(g: &QueryGraph, perm: &[usize]) -> QueryGraph {
    QueryGraph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn precedes_is_a_strict_total_order(g in graph_strategy(30, 80)) {
        let n = g.n();
        for u in 0..n {
            prop_assert!(!g.precedes(u, u));
            for v in 0..n {
                if u != v {
                    prop_assert!(g.precedes(u, v) != g.precedes(v, u));
                }
                for w in 0..n {
                    if g.precedes(u, v) && g.precedes(v, w) {
                        prop_assert!(g.precedes(u, w));
                    }
                }
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_counts_match(g in graph_strategy(40, 150)) {
        let mut total = 0;
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v), g.neighbors(v).len());
            total += g.degree(v);
            for &w in g.neighbors(v) {
                prop_assert!(g.neighbors(w).contains(&v));
            }
        }
        prop_assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn edge_list_round_trip_keeps_neighbor_order(g in graph_strategy(40, 150)) {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let back = QueryGraph::read_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        for v in 0..g.n() {
            prop_assert_eq!(back.neighbors(v), g.neighbors(v));
        }
    }

    #[test]
    fn active_sets_shrink_as_gamma_grows(
        g in graph_strategy(40, 200),
        alpha in 1usize..3,
        ell in 1usize..6,
        g1 in 0.0f64..0.5,
        dg in 0.0f64..0.5,
    ) {
        let lo = assign_edges_rounds(&g, alpha, ell, g1);
        let hi = assign_edges_rounds(&g, alpha, ell, g1 + dg);
        for i in 1..=ell {
            for v in 0..g.n() {
                if hi.is_active_after(v, i) {
                    prop_assert!(lo.is_active_after(v, i));
                }
            }
        }
        prop_assert!(hi.final_remaining() <= lo.final_remaining());
    }

    #[test]
    fn trace_edge_count_matches_active_set(g in graph_strategy(40, 200), alpha in 1usize..3, ell in 1usize..6) {
        let t = assign_edges_rounds(&g, alpha, ell, 0.0);
        let surviving = g.edges().filter(|&(u, v)| t.is_active(u) && t.is_active(v)).count();
        prop_assert_eq!(t.final_remaining(), surviving);
        let dec = forest_decomposition(&g, &t, alpha).unwrap();
        prop_assert!(check_decomposition(&g, &dec).is_valid(alpha));
    }

    #[test]
    fn distance_is_monotone_in_alpha(g in graph_strategy(14, 60)) {
        let a = exact_arboricity(&g);
        let mut last = usize::MAX;
        for alpha in 1..=a.max(1) + 1 {
            let d = distance_to_arboricity(&g, alpha).deletions_needed;
            prop_assert!(d <= last);
            prop_assert_eq!(d == 0, alpha >= a);
            last = d;
        }
    }

    #[test]
    fn arboricity_is_invariant_under_relabeling(g in graph_strategy(14, 60), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        prop_assert_eq!(exact_arboricity(&g), exact_arboricity(&h));
        prop_assert_eq!(
            distance_to_arboricity(&g, 1).deletions_needed,
            distance_to_arboricity(&h, 1).deletions_needed
        );
    }

    #[test]
    fn query_log_matches_counters(g in graph_strategy(30, 120), v in 0usize..30, seed in any::<u64>()) {
        let v = v % g.n();
        let mut s = QuerySession::new(&g).with_log();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        is_active(&mut s, &mut rng, 1, 0.5, 0.3, v, 2).unwrap();
        let log = s.log().unwrap();
        let degrees = log.iter().filter(|q| matches!(q, Query::Degree(_))).count() as u64;
        let neighbors = log.iter().filter(|q| matches!(q, Query::Neighbor(..))).count() as u64;
        prop_assert_eq!(degrees, s.degree_queries());
        prop_assert_eq!(neighbors, s.neighbor_queries());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // A MANY from the high-edge stage ends the run: replaying the first two
    // stages with the same random stream accounts for every query.
    #[test]
    fn high_stage_rejection_skips_low_stage(seed in any::<u64>(), clique in 45usize..70) {
        let g = common::complete_padded(clique, 200);
        let config = TesterConfig::new(1, eps("1/20"));
        let mut s = QuerySession::new(&g);
        let verdict = is_bounded_arboricity(&mut s, &mut ChaCha8Rng::seed_from_u64(seed), &config).unwrap();
        prop_assume!(verdict.stage == Stage::HighEdges);
        prop_assert_eq!(verdict.answer, Answer::No);

        let mut replay = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let delta = config.stage_delta();
        let est = estimate_edge_count(&mut replay, &mut rng, delta, &SamplerConstants::default()).unwrap();
        estimate_high_edges(&mut replay, &mut rng, 1, config.eps, delta, est.m_bar, &config).unwrap();
        prop_assert_eq!(replay.total_queries(), verdict.queries.total());
    }
}

#[test]
fn close_fixtures_have_few_high_edges() {
    for f in common::close_candidates() {
        let e = eps("1/20");
        if distance_to_arboricity(&f.graph, f.alpha).deletions_needed * e.denom() as usize
            > f.graph.m() * e.numer() as usize
        {
            continue;
        }
        let high = high_edge_count(&f.graph, f.alpha, e);
        assert!(high * 20 <= 2 * f.graph.m(), "{}: {high} high edges", f.name);
    }
}

#[test]
fn generators_are_seed_deterministic() {
    for family in [
        Family::MatchingBipartite { n: 500, m_bar: 200, alpha: 2 },
        Family::PlantedClique { n: 500, m_bar: 200, alpha: 1, clique_size: None },
        Family::PreferentialAttachment { n: 300, k: 3 },
        Family::ErdosRenyi { n: 200, p: 0.05 },
        Family::Forest { n: 300, max_degree: Some(4) },
    ] {
        let a = gen_instance(&InstanceDescriptor::new(family.clone(), 5)).unwrap();
        let b = gen_instance(&InstanceDescriptor::new(family, 5)).unwrap();
        for v in 0..a.n() {
            assert_eq!(a.neighbors(v), b.neighbors(v));
        }
    }
}
