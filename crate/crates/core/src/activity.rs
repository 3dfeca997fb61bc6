//! Local, randomized emulation of the peeling for a single vertex.
//!
//! `is_active(v, i)` answers whether `v` survives `i` rounds of peeling by
//! sampling neighbors with replacement and recursing one level down on each
//! sample. At level `ℓ` with slack `γ` and budget `δ` it says NO with
//! probability at least `1 − δ` when `v ∉ A_ℓ(0)`, and YES with probability
//! at least `1 − δ` when `v ∈ A_ℓ(2γ)`.

use rand::Rng;
use serde::Serialize;

use crate::graph::{QueryCounts, QueryError, QuerySession, Vertex};

/// Per-level sample sizes and failure budgets.
///
/// Level `ℓ` runs with the caller's `δ`; level `i − 1` runs with
/// `δ_{i−1} = δ_i / (2 t_i)` where `t_i = ⌈ln(1/δ_i) / γ²⌉`. Level 1 does
/// not sample. Budgets are kept as `ln(1/δ_i)` so deep schedules do not
/// underflow.
#[derive(Debug, Clone, Serialize)]
pub struct SampleSchedule {
    pub gamma: f64,
    pub delta: f64,
    pub ell: usize,
    /// `t_i` at index `i`; indices 0 and 1 are zero.
    sizes: Vec<u64>,
    /// `ln(1/δ_i)` at index `i`; index 0 is unused.
    log_inv_budget: Vec<f64>,
}

impl SampleSchedule {
    /// `t_i` for `2 ≤ i ≤ ℓ`, and 0 at level 1.
    pub fn sample_size(&self, level: usize) -> u64 {
        self.sizes[level]
    }

    /// `δ_i` for `1 ≤ i ≤ ℓ`.
    pub fn budget(&self, level: usize) -> f64 {
        (-self.log_inv_budget[level]).exp()
    }

    pub fn log_inv_budget(&self, level: usize) -> f64 {
        self.log_inv_budget[level]
    }

    /// Levels that sample, top-down: `(i, t_i, δ_i)` for `i = ℓ, …, 2`.
    pub fn levels(&self) -> impl Iterator<Item = (usize, u64, f64)> + '_ {
        (2..=self.ell)
            .rev()
            .map(move |i| (i, self.sizes[i], self.budget(i)))
    }

    /// Worst-case number of queries of one top-level call:
    /// `Π_{i=2..ℓ} (2 t_i + 1)`, saturating.
    pub fn query_ceiling(&self) -> u128 {
        (2..=self.ell).fold(1u128, |acc, i| {
            acc.saturating_mul(2 * self.sizes[i] as u128 + 1)
        })
    }

    /// Checks `δ̃_j ≥ (δγ⁴ / (4j²))^j` for every depth `j = 1..=ℓ`, where
    /// `δ̃_j = δ_{ℓ−j+1}`, comparing in log space with a relative tolerance.
    pub fn satisfies_recursion_bound(&self) -> bool {
        let ln_floor_base = self.delta.ln() + 4.0 * self.gamma.ln() - 4f64.ln();
        (1..=self.ell).all(|j| {
            let depth_level = self.ell - j + 1;
            let lhs = -self.log_inv_budget[depth_level];
            let rhs = j as f64 * (ln_floor_base - 2.0 * (j as f64).ln());
            lhs >= rhs - 1e-9 * rhs.abs()
        })
    }
}

/// Builds the schedule for a top-level call at level `ell`.
pub fn sample_schedule(gamma: f64, delta: f64, ell: usize) -> SampleSchedule {
    assert!(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    assert!(ell >= 1, "ell must be at least 1");
    let mut sizes = vec![0u64; ell + 1];
    let mut log_inv = vec![0f64; ell + 1];
    log_inv[ell] = (1.0 / delta).ln();
    for i in (2..=ell).rev() {
        let t = (log_inv[i] / (gamma * gamma)).ceil().max(1.0) as u64;
        sizes[i] = t;
        log_inv[i - 1] = log_inv[i] + (2.0 * t as f64).ln();
    }
    SampleSchedule {
        gamma,
        delta,
        ell,
        sizes,
        log_inv_budget: log_inv,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActivityVerdict {
    pub active: bool,
    pub queries: QueryCounts,
}

/// Decides whether `v` is still active after `level` rounds.
pub fn is_active<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    alpha: usize,
    gamma: f64,
    delta: f64,
    v: Vertex,
    level: usize,
) -> Result<ActivityVerdict, QueryError> {
    assert!(level >= 1, "level must be at least 1");
    let schedule = sample_schedule(gamma, delta, level.max(1));
    is_active_with(session, rng, &schedule, alpha, v)
}

/// [`is_active`] at the schedule's top level, reusing a precomputed schedule.
pub fn is_active_with<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    schedule: &SampleSchedule,
    alpha: usize,
    v: Vertex,
) -> Result<ActivityVerdict, QueryError> {
    let before = session.counts();
    let active = descend(session, rng, schedule, alpha, v, schedule.ell)?;
    Ok(ActivityVerdict {
        active,
        queries: session.counts().since(before),
    })
}

fn descend<R: Rng + ?Sized>(
    session: &mut QuerySession<'_>,
    rng: &mut R,
    schedule: &SampleSchedule,
    alpha: usize,
    v: Vertex,
    level: usize,
) -> Result<bool, QueryError> {
    let d = session.degree(v)?;
    let floor = 3 * alpha;
    if d <= floor {
        return Ok(false);
    }
    if level == 1 {
        return Ok(true);
    }
    let t = schedule.sample_size(level);
    let mut yes = 0u64;
    for _ in 0..t {
        let j = rng.gen_range(1..=d);
        let u = session
            .neighbor(v, j)?
            .vertex()
            .expect("index within the queried degree");
        if descend(session, rng, schedule, alpha, u, level - 1)? {
            yes += 1;
        }
    }
    let d = d as f64;
    Ok(yes as f64 * d > t as f64 * (floor as f64 + schedule.gamma * d))
}
