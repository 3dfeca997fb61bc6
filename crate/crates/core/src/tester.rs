//! The tolerant tester and its variants.
//!
//! The standard pipeline is:
//!
//! 1. estimate `m` from below (`m̄ ∈ [m/2, m]` with high probability);
//! 2. sample almost-uniform edges and reject if more than a `2.6ε` fraction
//!    join two high-degree vertices (`d > 2α/ε`);
//! 3. sample pairs `(v, j)` with `v` low-degree and `j ∈ [1, ⌈2α/ε⌉]`, and
//!    estimate how many low edges survive `ℓ` rounds of peeling by asking
//!    the local activity procedure about both endpoints.
//!
//! Each stage gets a third of the total failure budget.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::activity::{is_active_with, sample_schedule, SampleSchedule};
use crate::decomposition::rounds_for;
use crate::graph::{precedes_by_degree, QueryCounts, QueryError, QuerySession, Vertex};
use crate::samplers::{
    estimate_edge_count, sample_edge_almost_uniform, EdgeSample, EstimateError, SamplerConstants,
};
use crate::Epsilon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Count {
    Many,
    Few,
}

/// The sub-procedure that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// The edge-count estimate found no edges; the empty graph is accepted.
    EdgeEstimateFailurePath,
    HighEdges,
    LowEdges,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::EdgeEstimateFailurePath => "edge-estimate-failure-path",
            Stage::HighEdges => "high-edges",
            Stage::LowEdges => "low-edges",
        }
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// Extra knowledge the tester may be given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Standard,
    /// Exact edge count.
    KnownM(u64),
    /// Upper bound on the maximum degree.
    KnownMaxDegree(usize),
    /// Maximum degree bound `d`, with distance measured against `n·d`.
    BoundedDegreeModel(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct TesterConfig {
    pub alpha: usize,
    pub eps: Epsilon,
    /// Total failure probability; each of the three stages gets a third.
    pub delta_total: f64,
    /// Overrides `⌈log_{6/5}(1/ε)⌉`.
    pub ell: Option<usize>,
    pub variant: Variant,
    pub sampler: SamplerConstants,
    /// `r = ⌈high_scale · ln(4/δ)/ε⌉` edge samples in the high-edge stage.
    pub high_scale: f64,
    /// `t = ⌈low_scale · nα/(ε²m̄) · ln(2/δ)⌉` pairs in the low-edge stage.
    pub low_scale: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TesterError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Query(#[from] QueryError),
}

impl TesterConfig {
    pub fn new(alpha: usize, eps: Epsilon) -> Self {
        Self {
            alpha,
            eps,
            delta_total: 1.0 / 3.0,
            ell: None,
            variant: Variant::Standard,
            sampler: SamplerConstants::default(),
            high_scale: 100.0,
            low_scale: 400.0,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn rounds(&self) -> usize {
        self.ell.unwrap_or_else(|| rounds_for(self.eps.to_f64()))
    }

    pub fn stage_delta(&self) -> f64 {
        self.delta_total / 3.0
    }

    pub fn validate(&self) -> Result<(), TesterError> {
        let bad = |msg: String| Err(TesterError::InvalidConfig(msg));
        if self.alpha == 0 {
            return bad("alpha must be at least 1".into());
        }
        if self.eps > Epsilon::new(1, 20).expect("1/20 is valid") {
            return bad(format!("eps must be at most 1/20, got {}", self.eps));
        }
        if !(self.delta_total > 0.0 && self.delta_total < 1.0) {
            return bad(format!("delta must lie in (0, 1), got {}", self.delta_total));
        }
        if self.rounds() == 0 {
            return bad("ell must be at least 1".into());
        }
        match self.variant {
            Variant::KnownMaxDegree(0) | Variant::BoundedDegreeModel(0) => {
                bad("declared degree bound must be at least 1".into())
            }
            _ => Ok(()),
        }
    }

    fn activity_schedule(&self) -> SampleSchedule {
        let eps = self.eps.to_f64();
        sample_schedule(eps, eps / 2.0, self.rounds())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub stage: Stage,
    pub queries: QueryCounts,
    pub m_bar: Option<u64>,
}

/// `d(v) > 2α/ε`, with one degree query.
pub fn is_high_degree(
    session: &mut QuerySession<'_>,
    v: Vertex,
    alpha: usize,
    eps: Epsilon,
) -> Result<bool, QueryError> {
    Ok(eps.exceeds_high_threshold(session.degree(v)?, alpha))
}

/// Number of edge samples of the high-edge stage.
pub fn high_edge_samples(eps: Epsilon, delta: f64, scale: f64) -> u64 {
    (scale * (4.0 / delta).ln() / eps.to_f64()).ceil() as u64
}

/// Number of pair samples of the low-edge stage.
pub fn low_edge_samples(n: usize, alpha: usize, eps: Epsilon, delta: f64, m_bar: u64, scale: f64) -> u64 {
    let e = eps.to_f64();
    (scale * (n as f64 * alpha as f64) / (e * e * m_bar.max(1) as f64) * (2.0 / delta).ln()).ceil() as u64
}

/// Distinguishes more than `4εm` high edges (MANY) from at most `2εm` (FEW),
/// each with probability at least `1 − δ`. A sampler failure reads as FEW.
pub fn estimate_high_edges<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    alpha: usize,
    eps: Epsilon,
    delta: f64,
    m_bar: u64,
    config: &TesterConfig,
) -> Result<Count, QueryError> {
    let r = high_edge_samples(eps, delta, config.high_scale);
    let per_draw = delta / (2.0 * r as f64);
    let mut high = 0u64;
    for _ in 0..r {
        let (u, v) = match sample_edge_almost_uniform(session, rng, 0.1, per_draw, m_bar, &config.sampler)? {
            EdgeSample::Edge(u, v) => (u, v),
            EdgeSample::Failure => return Ok(Count::Few),
        };
        if is_high_degree(session, u, alpha, eps)? && is_high_degree(session, v, alpha, eps)? {
            high += 1;
        }
    }
    // χ > 2.6ε
    Ok(if eps.fraction_exceeds(high, r, 13, 5) {
        Count::Many
    } else {
        Count::Few
    })
}

/// Distinguishes at most `5εm` low edges in `G_ℓ(0)` (FEW) from at least
/// `18εm` low edges in `G_ℓ(2ε)` (MANY), assuming `m̄ ∈ [m/2, m]`.
#[allow(clippy::too_many_arguments)]
pub fn estimate_remaining_low_edges<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    alpha: usize,
    eps: Epsilon,
    delta: f64,
    ell: usize,
    m_bar: u64,
    config: &TesterConfig,
) -> Result<Count, QueryError> {
    let n = session.n();
    let range = eps.index_range(alpha);
    let t = low_edge_samples(n, alpha, eps, delta, m_bar, config.low_scale);
    let e = eps.to_f64();
    let schedule = sample_schedule(e, e / 2.0, ell);
    let hits = count_active_low_pairs(session, rng, alpha, eps, &schedule, t, range)?;
    // μ = (n·range/m̄)·(hits/t) ≤ 14ε
    let lhs = n as u128 * range as u128 * hits as u128 * eps.denom() as u128;
    let rhs = 14 * eps.numer() as u128 * m_bar.max(1) as u128 * t as u128;
    Ok(if lhs <= rhs { Count::Few } else { Count::Many })
}

/// Draws `samples` pairs `(v, j)` with `v` uniform and `j ∈ [1, range]`, and
/// counts those where `v` is low-degree, the `j`-th neighbor `u` exists,
/// `v ≺ u`, and both endpoints are reported active.
fn count_active_low_pairs<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    alpha: usize,
    eps: Epsilon,
    schedule: &SampleSchedule,
    samples: u64,
    range: usize,
) -> Result<u64, QueryError> {
    let n = session.n();
    let mut hits = 0u64;
    for _ in 0..samples {
        let v = rng.gen_range(0..n);
        let dv = session.degree(v)?;
        if eps.exceeds_high_threshold(dv, alpha) {
            continue;
        }
        let j = rng.gen_range(1..=range);
        let Some(u) = session.neighbor(v, j)?.vertex() else {
            continue;
        };
        let du = session.degree(u)?;
        if !precedes_by_degree(v, dv, u, du) {
            continue;
        }
        if is_active_with(session, rng, schedule, alpha, v)?.active
            && is_active_with(session, rng, schedule, alpha, u)?.active
        {
            hits += 1;
        }
    }
    Ok(hits)
}

/// The standard tester. Accepts ε-close to arboricity `α` and rejects
/// 20ε-far from arboricity `3α`, each with probability at least
/// `1 − delta_total`.
pub fn is_bounded_arboricity<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    config: &TesterConfig,
) -> Result<Verdict, TesterError> {
    config.validate()?;
    let before = session.counts();
    let delta = config.stage_delta();
    let finish = |session: &QuerySession<'_>, answer, stage, m_bar| Verdict {
        answer,
        stage,
        queries: session.counts().since(before),
        m_bar,
    };

    let m_bar = match estimate_edge_count(session, rng, delta, &config.sampler) {
        Ok(est) => est.m_bar,
        Err(EstimateError::EmptyGraph) => {
            return Ok(finish(session, Answer::Yes, Stage::EdgeEstimateFailurePath, None))
        }
        Err(EstimateError::Query(e)) => return Err(e.into()),
    };
    let high = estimate_high_edges(session, rng, config.alpha, config.eps, delta, m_bar, config)?;
    if high == Count::Many {
        return Ok(finish(session, Answer::No, Stage::HighEdges, Some(m_bar)));
    }
    let low = estimate_remaining_low_edges(
        session,
        rng,
        config.alpha,
        config.eps,
        delta,
        config.rounds(),
        m_bar,
        config,
    )?;
    let answer = if low == Count::Few { Answer::Yes } else { Answer::No };
    Ok(finish(session, answer, Stage::LowEdges, Some(m_bar)))
}

/// Runs the tester selected by `config.variant`.
pub fn test_variant<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    config: &TesterConfig,
) -> Result<Verdict, TesterError> {
    config.validate()?;
    match config.variant {
        Variant::Standard => is_bounded_arboricity(session, rng, config),
        Variant::KnownM(m) => known_m(session, rng, config, m),
        Variant::KnownMaxDegree(d) => {
            let previous = session.set_degree_cap(Some(d));
            let out = known_max_degree(session, rng, config, d);
            session.set_degree_cap(previous);
            out
        }
        Variant::BoundedDegreeModel(d) => {
            let previous = session.set_degree_cap(Some(d));
            let out = bounded_degree_model(session, rng, config, d);
            session.set_degree_cap(previous);
            out
        }
    }
}

/// Outcome of probing one pair `(v, j)` for an edge oriented out of `v`.
enum Probe {
    Miss,
    /// `v ≺ u` for the `j`-th neighbor `u`; `high` iff `v` (hence `u`) is high.
    Oriented { high: bool },
}

fn probe_pair<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    alpha: usize,
    eps: Epsilon,
    range: usize,
    skip_high: bool,
) -> Result<Probe, QueryError> {
    let n = session.n();
    let v = rng.gen_range(0..n);
    let dv = session.degree(v)?;
    let high = eps.exceeds_high_threshold(dv, alpha);
    if high && skip_high {
        return Ok(Probe::Miss);
    }
    let j = rng.gen_range(1..=range);
    let Some(u) = session.neighbor(v, j)?.vertex() else {
        return Ok(Probe::Miss);
    };
    let du = session.degree(u)?;
    Ok(if precedes_by_degree(v, dv, u, du) {
        Probe::Oriented { high }
    } else {
        Probe::Miss
    })
}

/// Exact `m`: the low-edge count is estimated by probing `(v, j)` pairs with
/// `j ∈ [1, ⌈2α/ε⌉]`; the high-edge count follows as `m − m̃_low`.
fn known_m<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    config: &TesterConfig,
    m: u64,
) -> Result<Verdict, TesterError> {
    let before = session.counts();
    let delta = config.stage_delta();
    let finish = |session: &QuerySession<'_>, answer, stage| Verdict {
        answer,
        stage,
        queries: session.counts().since(before),
        m_bar: Some(m),
    };
    if m == 0 {
        return Ok(finish(session, Answer::Yes, Stage::EdgeEstimateFailurePath));
    }
    let n = session.n();
    let eps = config.eps;
    let e = eps.to_f64();
    let range = eps.index_range(config.alpha);
    let samples = (3.0 * n as f64 * range as f64 / (e * e * m as f64) * (2.0 / delta).ln()).ceil() as u64;
    let mut low_hits = 0u64;
    for _ in 0..samples {
        if let Probe::Oriented { .. } = probe_pair(session, rng, config.alpha, eps, range, true)? {
            low_hits += 1;
        }
    }
    // m − n·range·hits/s > 3εm
    let lhs = (m as i128 * samples as i128 - n as i128 * range as i128 * low_hits as i128)
        * eps.denom() as i128;
    let rhs = 3 * eps.numer() as i128 * m as i128 * samples as i128;
    if lhs > rhs {
        return Ok(finish(session, Answer::No, Stage::HighEdges));
    }
    let low = estimate_remaining_low_edges(session, rng, config.alpha, eps, delta, config.rounds(), m, config)?;
    let answer = if low == Count::Few { Answer::Yes } else { Answer::No };
    Ok(finish(session, answer, Stage::LowEdges))
}

/// Known degree bound `d`: probing `(v, j)` with `j ∈ [1, d]` hits each
/// oriented edge with probability `1/(n·d)`, which estimates both `m` and the
/// high fraction.
fn known_max_degree<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    config: &TesterConfig,
    d: usize,
) -> Result<Verdict, TesterError> {
    let before = session.counts();
    let delta = config.stage_delta();
    let eps = config.eps;
    let n = session.n();
    let target = (10.0 * (6.0 / delta).ln() / eps.to_f64()).ceil() as u64;
    let max_draws = 4 * target * (n as u64).max(1) * d as u64;
    let (mut draws, mut hits, mut high_hits) = (0u64, 0u64, 0u64);
    while hits < target && draws < max_draws {
        draws += 1;
        if let Probe::Oriented { high } = probe_pair(session, rng, config.alpha, eps, d, false)? {
            hits += 1;
            high_hits += u64::from(high);
        }
    }
    let finish = |session: &QuerySession<'_>, answer, stage, m_bar| Verdict {
        answer,
        stage,
        queries: session.counts().since(before),
        m_bar,
    };
    if hits == 0 {
        return Ok(finish(session, Answer::Yes, Stage::EdgeEstimateFailurePath, None));
    }
    let m_hat = n as f64 * d as f64 * hits as f64 / draws as f64;
    let m_bar = (5.0 * m_hat / 6.0).ceil().max(1.0) as u64;
    if eps.fraction_exceeds(high_hits, hits, 3, 1) {
        return Ok(finish(session, Answer::No, Stage::HighEdges, Some(m_bar)));
    }
    let low = estimate_remaining_low_edges(session, rng, config.alpha, eps, delta, config.rounds(), m_bar, config)?;
    let answer = if low == Count::Few { Answer::Yes } else { Answer::No };
    Ok(finish(session, answer, Stage::LowEdges, Some(m_bar)))
}

/// Bounded-degree model: distances are relative to `n·d`, and pairs
/// `(v, j)` with `j ∈ [1, d]` are exactly uniform over that normalizer, so
/// both stages need only `O(1/ε)` probes.
fn bounded_degree_model<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    config: &TesterConfig,
    d: usize,
) -> Result<Verdict, TesterError> {
    let before = session.counts();
    let delta = config.stage_delta();
    let eps = config.eps;
    let alpha = config.alpha;
    let finish = |session: &QuerySession<'_>, answer, stage| Verdict {
        answer,
        stage,
        queries: session.counts().since(before),
        m_bar: None,
    };

    let high_samples = high_edge_samples(eps, delta, config.high_scale);
    let mut high_hits = 0u64;
    for _ in 0..high_samples {
        if let Probe::Oriented { high: true } = probe_pair(session, rng, alpha, eps, d, false)? {
            high_hits += 1;
        }
    }
    if eps.fraction_exceeds(high_hits, high_samples, 3, 1) {
        return Ok(finish(session, Answer::No, Stage::HighEdges));
    }

    let low_samples = (10.0 * (2.0 / delta).ln() / eps.to_f64()).ceil() as u64;
    let schedule = config.activity_schedule();
    let hits = count_active_low_pairs(session, rng, alpha, eps, &schedule, low_samples, d)?;
    let answer = if eps.fraction_exceeds(hits, low_samples, 10, 1) {
        Answer::No
    } else {
        Answer::Yes
    };
    Ok(finish(session, answer, Stage::LowEdges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::QueryGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eps(s: &str) -> Epsilon {
        s.parse().unwrap()
    }

    fn star(leaves: usize) -> QueryGraph {
        QueryGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn complete_plus_isolated(k: usize, n: usize) -> QueryGraph {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        QueryGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn high_degree_boundaries() {
        let g = star(101);
        let mut s = QuerySession::new(&g);
        // d(0) = 101; compare against thresholds 40 and 100.
        assert!(is_high_degree(&mut s, 0, 1, eps("1/20")).unwrap());
        assert!(is_high_degree(&mut s, 0, 5, eps("1/10")).unwrap());
        assert!(!is_high_degree(&mut s, 1, 1, eps("1/20")).unwrap());
        assert_eq!(s.degree_queries(), 3);
        let g40 = star(40);
        let g41 = star(41);
        assert!(!is_high_degree(&mut QuerySession::new(&g40), 0, 1, eps("1/20")).unwrap());
        assert!(is_high_degree(&mut QuerySession::new(&g41), 0, 1, eps("1/20")).unwrap());
        let g100 = star(100);
        assert!(!is_high_degree(&mut QuerySession::new(&g100), 0, 5, eps("1/10")).unwrap());
    }

    #[test]
    fn no_high_vertices_means_few() {
        let g = QueryGraph::from_edges(100, (0..99).map(|i| (i, i + 1))).unwrap();
        let config = TesterConfig::new(1, eps("1/20"));
        for seed in 0..5 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = estimate_high_edges(&mut s, &mut rng, 1, eps("1/20"), 0.1, 80, &config).unwrap();
            assert_eq!(c, Count::Few);
        }
    }

    #[test]
    fn clique_edges_are_many() {
        let g = complete_plus_isolated(60, 60);
        let config = TesterConfig::new(1, eps("1/20"));
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = estimate_high_edges(&mut s, &mut rng, 1, eps("1/20"), 0.1, 1770, &config).unwrap();
        assert_eq!(c, Count::Many);
    }

    #[test]
    fn triangle_has_few_remaining_low_edges() {
        let g = complete_plus_isolated(3, 3);
        let config = TesterConfig::new(1, eps("1/20"));
        let ell = config.rounds();
        for seed in 0..3 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = estimate_remaining_low_edges(&mut s, &mut rng, 1, eps("1/20"), 0.1, ell, 3, &config)
                .unwrap();
            assert_eq!(c, Count::Few);
        }
    }

    #[test]
    fn forest_is_accepted() {
        let g = QueryGraph::from_edges(200, (1..200).map(|i| (i, (i - 1) / 2))).unwrap();
        let config = TesterConfig::new(1, eps("1/20"));
        for seed in 0..3 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = is_bounded_arboricity(&mut s, &mut rng, &config).unwrap();
            assert_eq!(v.answer, Answer::Yes);
            assert_eq!(v.queries, s.counts());
        }
    }

    #[test]
    fn empty_graph_accepted_on_failure_path() {
        let g = QueryGraph::empty(100);
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let v = is_bounded_arboricity(&mut s, &mut rng, &TesterConfig::new(2, eps("1/20"))).unwrap();
        assert_eq!((v.answer, v.stage), (Answer::Yes, Stage::EdgeEstimateFailurePath));
    }

    #[test]
    fn config_validation() {
        let g = star(3);
        let mut s = QuerySession::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let too_big = TesterConfig::new(1, eps("1/10"));
        assert!(matches!(
            is_bounded_arboricity(&mut s, &mut rng, &too_big),
            Err(TesterError::InvalidConfig(_))
        ));
        let zero_alpha = TesterConfig::new(0, eps("1/20"));
        assert!(zero_alpha.validate().is_err());
        assert_eq!(TesterConfig::new(1, eps("1/20")).rounds(), 17);
        assert_eq!(TesterConfig::new(1, eps("1/20")).with_ell(2).rounds(), 2);
    }

    #[test]
    fn declared_degree_violation_is_reported() {
        let g = QueryGraph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let config = TesterConfig::new(1, eps("1/20")).with_variant(Variant::KnownMaxDegree(3));
        let mut saw_error = false;
        for seed in 0..20 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match test_variant(&mut s, &mut rng, &config) {
                Err(TesterError::Query(QueryError::DegreeCapExceeded { degree: 5, .. })) => saw_error = true,
                other => panic!("expected a contract violation, got {other:?}"),
            }
        }
        assert!(saw_error);
    }

    #[test]
    fn bounded_degree_model_accepts_forest() {
        let g = QueryGraph::from_edges(300, (1..300).map(|i| (i, (i - 1) / 2))).unwrap();
        let d = g.max_degree();
        let config = TesterConfig::new(1, eps("1/20")).with_variant(Variant::BoundedDegreeModel(d));
        let mut yes = 0;
        for seed in 0..30 {
            let mut s = QuerySession::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if test_variant(&mut s, &mut rng, &config).unwrap().answer == Answer::Yes {
                yes += 1;
            }
        }
        assert!(yes >= 20, "yes = {yes}");
    }
}
