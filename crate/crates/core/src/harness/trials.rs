//! Repeated runs of one operation with consecutive seeds, and CSV output.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::activity::{is_active, ActivityVerdict};
use crate::graph::{QueryError, QueryGraph, QuerySession, Vertex};
use crate::samplers::{
    estimate_edge_count, sample_edge_almost_uniform, EdgeSample, EstimateError, SamplerConstants,
};
use crate::tester::{test_variant, TesterConfig, TesterError};

#[derive(Debug, Clone)]
pub enum Operation {
    Test(TesterConfig),
    IsActive {
        vertex: Vertex,
        alpha: usize,
        gamma: f64,
        delta: f64,
        level: usize,
    },
    EstimateM {
        delta: f64,
        constants: SamplerConstants,
    },
    SampleEdge {
        eps_s: f64,
        delta: f64,
        m_hint: u64,
        constants: SamplerConstants,
    },
}

#[derive(Debug, Clone)]
pub struct TrialSpec {
    pub operation: Operation,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub verdict: String,
    pub stage: String,
    pub m_bar: Option<u64>,
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub wall_ms: f64,
    /// Whether `m_bar ∈ [m/2, m]`; the tester's guarantee is void otherwise.
    #[serde(skip)]
    pub m_bar_in_contract: Option<bool>,
}

impl TrialReport {
    pub fn total_queries(&self) -> u64 {
        self.degree_queries + self.neighbor_queries
    }
}

#[derive(Debug, Error)]
pub enum TrialError {
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("trial {trial} (seed {seed}): {source}")]
    Tester {
        trial: usize,
        seed: u64,
        source: TesterError,
    },
    #[error("trial {trial} (seed {seed}): {source}")]
    Query {
        trial: usize,
        seed: u64,
        source: QueryError,
    },
    #[error("could not build thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl TrialError {
    /// True when the graph broke a declared contract, as opposed to bad input.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            TrialError::Query { .. } | TrialError::Tester { source: TesterError::Query(_), .. }
        )
    }
}

fn run_one(graph: &QueryGraph, op: &Operation, trial: usize, seed: u64) -> Result<TrialReport, TrialError> {
    let mut session = QuerySession::new(graph);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let query_err = |source| TrialError::Query { trial, seed, source };
    let (verdict, stage, m_bar) = match op {
        Operation::Test(config) => {
            let v = test_variant(&mut session, &mut rng, config)
                .map_err(|source| TrialError::Tester { trial, seed, source })?;
            (v.answer.to_string(), v.stage.as_str().to_string(), v.m_bar)
        }
        Operation::IsActive {
            vertex,
            alpha,
            gamma,
            delta,
            level,
        } => {
            let ActivityVerdict { active, .. } =
                is_active(&mut session, &mut rng, *alpha, *gamma, *delta, *vertex, *level).map_err(query_err)?;
            let verdict = if active { "YES" } else { "NO" };
            (verdict.to_string(), String::new(), None)
        }
        Operation::EstimateM { delta, constants } => {
            match estimate_edge_count(&mut session, &mut rng, *delta, constants) {
                Ok(e) => ("OK".to_string(), String::new(), Some(e.m_bar)),
                Err(EstimateError::EmptyGraph) => ("EMPTY".to_string(), String::new(), None),
                Err(EstimateError::Query(e)) => return Err(query_err(e)),
            }
        }
        Operation::SampleEdge {
            eps_s,
            delta,
            m_hint,
            constants,
        } => {
            let s = sample_edge_almost_uniform(&mut session, &mut rng, *eps_s, *delta, *m_hint, constants)
                .map_err(query_err)?;
            let verdict = match s {
                EdgeSample::Edge(u, v) => format!("{u}-{v}"),
                EdgeSample::Failure => "FAILURE".to_string(),
            };
            (verdict, String::new(), None)
        }
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let m = graph.m() as u64;
    Ok(TrialReport {
        trial,
        seed,
        verdict,
        stage,
        m_bar,
        degree_queries: session.degree_queries(),
        neighbor_queries: session.neighbor_queries(),
        wall_ms,
        m_bar_in_contract: m_bar.map(|b| 2 * b >= m && b <= m),
    })
}

/// Runs trial `i` with seed `seed + i`, concurrently, returning rows in
/// trial order. The first failing trial aborts the batch.
pub fn run_trials(graph: &QueryGraph, spec: &TrialSpec) -> Result<Vec<TrialReport>, TrialError> {
    if spec.trials == 0 {
        return Err(TrialError::NoTrials);
    }
    let work = || {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| run_one(graph, &spec.operation, i, spec.seed.wrapping_add(i as u64)))
            .collect::<Result<Vec<_>, _>>()
    };
    match spec.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| TrialError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Writes the reports as CSV. With `deterministic`, wall times are written
/// as zero so that equal seeds give byte-identical output.
pub fn write_csv<W: Write>(reports: &[TrialReport], out: W, deterministic: bool) -> Result<(), TrialError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in reports {
        if deterministic {
            writer.serialize(TrialReport { wall_ms: 0.0, ..r.clone() })?;
        } else {
            writer.serialize(r)?;
        }
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Mean of total queries over the reports.
pub fn mean_total_queries(reports: &[TrialReport]) -> f64 {
    reports.iter().map(|r| r.total_queries() as f64).sum::<f64>() / reports.len().max(1) as f64
}
