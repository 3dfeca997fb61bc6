//! Query-count scaling sweeps and their regression report.

use serde::Serialize;
use thiserror::Error;

use super::generators::{gen_instance, Family, GenError, InstanceDescriptor};
use super::trials::{mean_total_queries, run_trials, Operation, TrialError, TrialSpec};
use crate::tester::TesterConfig;

#[derive(Debug, Error)]
pub enum ScalingError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Trials(#[from] TrialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub m: usize,
    pub alpha: usize,
    pub mean_queries: f64,
}

impl ScalingPoint {
    /// `n/√m · log³n`.
    pub fn envelope(&self) -> f64 {
        let ln = (self.n as f64).ln();
        self.n as f64 / (self.m as f64).sqrt() * ln * ln * ln
    }

    /// `n·α/m`.
    pub fn density_term(&self) -> f64 {
        self.n as f64 * self.alpha as f64 / self.m as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
    /// Least-squares `c` in `queries ≈ c · n/√m · log³n`.
    pub fitted_c: f64,
    /// Least-squares slope of `ln queries` against `ln n`.
    pub loglog_slope: f64,
    /// `queries / envelope` per point.
    pub envelope_ratios: Vec<f64>,
    /// `queries / (nα/m)` per point.
    pub density_ratios: Vec<f64>,
}

impl ScalingReport {
    pub fn from_points(points: Vec<ScalingPoint>) -> Self {
        let num: f64 = points.iter().map(|p| p.mean_queries * p.envelope()).sum();
        let den: f64 = points.iter().map(|p| p.envelope() * p.envelope()).sum();
        let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.mean_queries.max(1.0).ln()).collect();
        ScalingReport {
            fitted_c: if den > 0.0 { num / den } else { 0.0 },
            loglog_slope: slope(&xs, &ys),
            envelope_ratios: points.iter().map(|p| p.mean_queries / p.envelope()).collect(),
            density_ratios: points.iter().map(|p| p.mean_queries / p.density_term()).collect(),
            points,
        }
    }

    /// Growth no faster than the envelope: the log-log slope is below 2 and
    /// the ratio to the envelope at the largest `n` does not exceed the one
    /// at the smallest by more than `slack`.
    pub fn within_envelope(&self, slack: f64) -> bool {
        match (self.envelope_ratios.first(), self.envelope_ratios.last()) {
            (Some(&first), Some(&last)) => self.loglog_slope < 2.0 && last <= first * slack,
            _ => false,
        }
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Runs `config` on matching-bipartite instances with `n = 2^e` for each
/// exponent and `m̄ = n·density` (rounded down to a multiple of `α`).
pub fn scaling_sweep(
    exponents: &[u32],
    density: f64,
    config: &TesterConfig,
    trials: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<ScalingReport, ScalingError> {
    let alpha = config.alpha;
    let mut points = Vec::with_capacity(exponents.len());
    for &e in exponents {
        let n = 1usize << e;
        let m_bar = ((n as f64 * density) as usize / alpha) * alpha;
        let desc = InstanceDescriptor::new(Family::MatchingBipartite { n, m_bar, alpha }, seed ^ e as u64);
        let graph = gen_instance(&desc)?;
        let mut config = config.clone();
        if let crate::tester::Variant::KnownM(_) = config.variant {
            config.variant = crate::tester::Variant::KnownM(graph.m() as u64);
        }
        let reports = run_trials(
            &graph,
            &TrialSpec {
                operation: Operation::Test(config),
                trials,
                seed,
                threads,
            },
        )?;
        points.push(ScalingPoint {
            n,
            m: graph.m(),
            alpha,
            mean_queries: mean_total_queries(&reports),
        });
    }
    Ok(ScalingReport::from_points(points))
}
