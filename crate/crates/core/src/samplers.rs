//! Query-model primitives the tester builds on: almost-uniform edge
//! sampling and a factor-two lower estimate of the edge count.
//!
//! Everything here goes through a [`QuerySession`]; the stored edge count of
//! the graph is never read.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{precedes_by_degree, QueryError, QuerySession, Vertex};

/// Tunable constants of the two samplers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplerConstants {
    /// Attempt-budget multiplier of the edge sampler.
    pub c0: f64,
    /// Group-size multiplier of the edge-count estimator.
    pub c1: f64,
    /// Graphs with at most this many vertices are counted exactly.
    pub exact_below: usize,
}

impl Default for SamplerConstants {
    fn default() -> Self {
        Self {
            c0: 8.0,
            c1: 64.0,
            exact_below: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeSample {
    /// An ordered edge `(u, v)`.
    Edge(Vertex, Vertex),
    Failure,
}

impl EdgeSample {
    pub fn edge(self) -> Option<(Vertex, Vertex)> {
        match self {
            EdgeSample::Edge(u, v) => Some((u, v)),
            EdgeSample::Failure => None,
        }
    }
}

/// Light/heavy split `θ = ⌈√(2·m_hint / ε_s)⌉`.
pub fn heaviness_threshold(m_hint: u64, eps_s: f64) -> usize {
    (2.0 * m_hint.max(1) as f64 / eps_s).sqrt().ceil() as usize
}

/// Attempt budget `⌈c₀ · n · θ / m_hint · ln(1/δ)⌉`.
pub fn attempt_budget(n: usize, theta: usize, m_hint: u64, delta: f64, c0: f64) -> u64 {
    (c0 * n as f64 * theta as f64 / m_hint.max(1) as f64 * (1.0 / delta).ln())
        .ceil()
        .max(1.0) as u64
}

/// Returns an edge whose distribution is within `(1 ± ε_s)/m` of uniform, or
/// `Failure` once the attempt budget is spent.
///
/// Each attempt picks a uniform vertex `u` and an index `j ∈ [1, θ]`; it
/// fails unless `u` is light and `j ≤ d(u)`. A fair coin then either emits
/// `(u, w)` for the `j`-th neighbor `w`, or, when `w` is heavy, emits `w`
/// together with a uniform neighbor of `w`. Each ordered pair with a light
/// tail is produced with probability exactly `1/(2nθ)` per attempt; a pair
/// with a heavy tail `w` with probability `(light neighbors of w)/(d(w)·2nθ)`.
pub fn sample_edge_almost_uniform<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    eps_s: f64,
    delta: f64,
    m_hint: u64,
    constants: &SamplerConstants,
) -> Result<EdgeSample, QueryError> {
    let n = session.n();
    if n == 0 {
        return Ok(EdgeSample::Failure);
    }
    let theta = heaviness_threshold(m_hint, eps_s);
    let budget = attempt_budget(n, theta, m_hint, delta, constants.c0);
    for _ in 0..budget {
        let u = rng.gen_range(0..n);
        let heavy_branch = rng.gen_bool(0.5);
        let j = rng.gen_range(1..=theta);
        let du = session.degree(u)?;
        if du > theta || j > du {
            continue;
        }
        let w = session.neighbor(u, j)?.vertex().expect("j ≤ d(u)");
        if !heavy_branch {
            return Ok(EdgeSample::Edge(u, w));
        }
        let dw = session.degree(w)?;
        if dw <= theta {
            continue;
        }
        let k = rng.gen_range(1..=dw);
        let x = session.neighbor(w, k)?.vertex().expect("k ≤ d(w)");
        return Ok(EdgeSample::Edge(w, x));
    }
    Ok(EdgeSample::Failure)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeEstimate {
    /// With probability at least `1 − δ`, `m/2 ≤ m_bar ≤ m`.
    pub m_bar: u64,
    /// Number of vertex samples drawn (or vertices scanned when exact).
    pub trials_used: u64,
    pub exact: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EstimateError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error(transparent)]
    Query(#[from] QueryError),
}

/// Odd number of groups whose median fails with probability at most `δ`.
fn median_groups(delta: f64) -> usize {
    2 * ((4.0 / delta).ln().ceil() as usize) + 1
}

/// One draw of the oriented-degree estimator: a uniform vertex `u` and a
/// uniform neighbor `w`, scoring `d(u)` when `u ≺ w`. Its mean is `m/n`, and
/// since `u ≺ w` caps `u`'s forward degree at `√(2m)`, its relative variance
/// is at most `√2·n/√m`.
fn oriented_degree_draw<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
) -> Result<u64, QueryError> {
    let n = session.n();
    let u = rng.gen_range(0..n);
    let du = session.degree(u)?;
    if du == 0 {
        return Ok(0);
    }
    let j = rng.gen_range(1..=du);
    let w = session.neighbor(u, j)?.vertex().expect("j ≤ d(u)");
    let dw = session.degree(w)?;
    Ok(if precedes_by_degree(u, du, w, dw) {
        du as u64
    } else {
        0
    })
}

fn median_of_group_estimates<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    groups: usize,
    group_size: u64,
    draws: &mut u64,
) -> Result<f64, QueryError> {
    let n = session.n() as f64;
    let mut estimates = Vec::with_capacity(groups);
    for _ in 0..groups {
        let mut sum = 0u64;
        for _ in 0..group_size {
            sum += oriented_degree_draw(session, rng)?;
        }
        *draws += group_size;
        estimates.push(n * sum as f64 / group_size as f64);
    }
    estimates.sort_by(f64::total_cmp);
    Ok(estimates[groups / 2])
}

/// Estimates `m` from below: with probability at least `1 − δ`,
/// `m/2 ≤ m_bar ≤ m`.
///
/// Guesses `g = n(n−1)/2, g/2, …` are tried in turn, the `k`-th with budget
/// `δ/2^{k+1}`; a guess is accepted once the median of several group means
/// of the oriented-degree estimator reaches it. A final, larger batch with
/// budget `δ/2` gives `ê` within 20% of `m`, and `m_bar = ⌈5ê/6⌉`.
pub fn estimate_edge_count<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    delta: f64,
    constants: &SamplerConstants,
) -> Result<EdgeEstimate, EstimateError> {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    let n = session.n();
    if n <= constants.exact_below {
        let mut degree_sum = 0u64;
        for v in 0..n {
            degree_sum += session.degree(v)? as u64;
        }
        let m = degree_sum / 2;
        if m == 0 {
            return Err(EstimateError::EmptyGraph);
        }
        return Ok(EdgeEstimate {
            m_bar: (5 * m).div_ceil(6),
            trials_used: n as u64,
            exact: true,
        });
    }

    let group_size = |guess: f64, scale: f64| -> u64 {
        (scale * constants.c1 * n as f64 / guess.sqrt()).ceil().max(1.0) as u64
    };
    let mut draws = 0u64;
    let mut guess = (n as f64) * (n as f64 - 1.0) / 2.0;
    let mut k = 1;
    while guess >= 1.0 {
        let budget = delta / 2f64.powi(k + 1);
        let est = median_of_group_estimates(
            session,
            rng,
            median_groups(budget),
            group_size(guess, 1.0),
            &mut draws,
        )?;
        if est >= guess {
            let refined = median_of_group_estimates(
                session,
                rng,
                median_groups(delta / 2.0),
                group_size(guess, 4.0),
                &mut draws,
            )?;
            let m_bar = (5.0 * refined / 6.0).ceil().max(1.0) as u64;
            return Ok(EdgeEstimate {
                m_bar,
                trials_used: draws,
                exact: false,
            });
        }
        guess /= 2.0;
        k += 1;
    }
    Err(EstimateError::EmptyGraph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::QueryGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge_always_returned() {
        let g = QueryGraph::from_edges(2, [(0, 1)]).unwrap();
        let c = SamplerConstants::default();
        for seed in 0..50 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = sample_edge_almost_uniform(&mut s, &mut rng, 0.1, 0.05, 1, &c).unwrap();
            match e {
                EdgeSample::Edge(u, v) => assert_eq!((u.min(v), u.max(v)), (0, 1)),
                EdgeSample::Failure => panic!("sampler failed on a single edge"),
            }
        }
    }

    #[test]
    fn empty_graph_fails() {
        let g = QueryGraph::empty(5);
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = SamplerConstants::default();
        let e = sample_edge_almost_uniform(&mut s, &mut rng, 0.1, 0.05, 1, &c).unwrap();
        assert_eq!(e, EdgeSample::Failure);
        assert_eq!(s.neighbor_queries(), 0);
    }

    #[test]
    fn star_draws_are_balanced() {
        let g = QueryGraph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let c = SamplerConstants::default();
        let mut counts = [0u64; 5];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 20_000;
        for _ in 0..draws {
            let mut s = QuerySession::new(&g);
            let (u, v) = sample_edge_almost_uniform(&mut s, &mut rng, 0.1, 0.05, 4, &c)
                .unwrap()
                .edge()
                .unwrap();
            counts[u.max(v)] += 1;
        }
        for &c in &counts[1..] {
            let f = c as f64 / draws as f64;
            assert!((f - 0.25).abs() < 0.02, "{counts:?}");
        }
    }

    #[test]
    fn tiny_graphs_are_counted_exactly() {
        let g = QueryGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let e = estimate_edge_count(&mut s, &mut rng, 0.1, &SamplerConstants::default()).unwrap();
        assert_eq!(e.m_bar, 5);
        assert!(e.exact);
        assert_eq!(s.degree_queries(), 6);
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = QueryGraph::empty(10);
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            estimate_edge_count(&mut s, &mut rng, 0.1, &SamplerConstants::default()),
            Err(EstimateError::EmptyGraph)
        );
    }

    #[test]
    fn threshold_and_budget() {
        assert_eq!(heaviness_threshold(4, 0.1), 9);
        assert_eq!(heaviness_threshold(0, 0.1), 5);
        let b = attempt_budget(100, 10, 50, (-1.0f64).exp(), 8.0);
        assert_eq!(b, 160);
    }
}
