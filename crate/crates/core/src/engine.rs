//! Two independent evaluators of discounted repeated play.
//!
//! The exact engine handles populations in which every player uses a
//! memory-one strategy: the round-to-round dynamics form a Markov chain over
//! action profiles, and the discounted mean distribution is the solution of
//! a single linear system. The Monte Carlo engine samples whole plays and
//! supports arbitrary history-dependent opponents; it is seeded and
//! deterministic regardless of the parallel schedule.

use crate::game::{ActionProfile, PayoffTable};
use crate::zd::{enforced_relation_residual, MemoryOneStrategy, PayoffRelation};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Exact solves are limited to this many players (`2^n` states).
pub const MAX_EXACT_PLAYERS: usize = 12;

/// The discounted mean distribution must sum to 1 within this tolerance.
pub const DIST_SUM_TOL: f64 = 1e-10;

/// Weighted Monte Carlo runs are truncated once `delta^t` drops below this.
pub const MC_WEIGHT_CUTOFF: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("exact engine supports at most {MAX_EXACT_PLAYERS} players, got {0}")]
    TooManyPlayers(usize),
    #[error("discount factor must lie in (0,1), got {0}")]
    BadDiscount(f64),
    #[error("strategy vector for player {player} has length {len}, expected {expected}")]
    StrategyLengthMismatch { player: usize, len: usize, expected: usize },
    #[error("need at least one run")]
    NoRuns,
    #[error("internal error: discounted distribution sums to {0}")]
    DistributionNotNormalized(f64),
    #[error("exact engine requires memory-one strategies for all players")]
    NotMemoryOne,
}

/// The `(1-delta)`-weighted geometric average of per-round outcome
/// distributions, one entry per action-profile mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscountedDistribution {
    pub v: Vec<f64>,
    pub delta: f64,
}

impl DiscountedDistribution {
    pub fn n(&self) -> usize {
        self.v.len().trailing_zeros() as usize
    }
}

/// Computes the discounted mean distribution for an all-memory-one
/// population by a direct linear solve of `(I - delta * M) x = v0`, where
/// `M` propagates distributions one round forward and `v0` is the product
/// of the players' independent initial cooperation probabilities. The
/// result is checked for normalization, never renormalized.
pub fn exact_distribution(
    strategies: &[MemoryOneStrategy],
    delta: f64,
) -> Result<DiscountedDistribution, EngineError> {
    let n = strategies.len();
    if n > MAX_EXACT_PLAYERS {
        return Err(EngineError::TooManyPlayers(n));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(EngineError::BadDiscount(delta));
    }
    let size = 1usize << n;
    for (player, st) in strategies.iter().enumerate() {
        if st.p.len() != size {
            return Err(EngineError::StrategyLengthMismatch {
                player,
                len: st.p.len(),
                expected: size,
            });
        }
    }

    let mut v0 = DVector::zeros(size);
    for mask in 0..size {
        let mut prob = 1.0;
        for (i, st) in strategies.iter().enumerate() {
            prob *= if mask >> i & 1 == 1 { st.p0 } else { 1.0 - st.p0 };
        }
        v0[mask] = prob;
    }

    // A[next][prev] = P(prev -> next); players randomize independently
    let mut a = DMatrix::zeros(size, size);
    for prev in 0..size {
        for next in 0..size {
            let mut prob = 1.0;
            for (i, st) in strategies.iter().enumerate() {
                let p_coop = st.p[prev];
                prob *= if next >> i & 1 == 1 { p_coop } else { 1.0 - p_coop };
            }
            a[(next, prev)] = prob;
        }
    }

    let system = DMatrix::identity(size, size) - delta * a;
    // spectral radius of the transition operator is at most 1, so the
    // system is invertible for delta < 1
    let x = system
        .lu()
        .solve(&v0)
        .expect("discounted transition system must be invertible for delta < 1");
    let v: Vec<f64> = x.iter().map(|&y| (1.0 - delta) * y).collect();
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > DIST_SUM_TOL {
        return Err(EngineError::DistributionNotNormalized(sum));
    }
    Ok(DiscountedDistribution { v, delta })
}

/// Per-player average discounted payoffs `pi_i = g_i . v`.
pub fn discounted_payoffs(dist: &DiscountedDistribution, table: &PayoffTable) -> Vec<f64> {
    let n = table.n();
    assert_eq!(dist.v.len(), 1 << n, "distribution and table dimensions disagree");
    let mut payoffs = vec![0.0; n];
    for profile in ActionProfile::all(n) {
        let weight = dist.v[profile.mask() as usize];
        if weight == 0.0 {
            continue;
        }
        for (i, payoff) in payoffs.iter_mut().enumerate() {
            *payoff += weight * table.profile_payoff(profile, i);
        }
    }
    payoffs
}

/// Residual of the fundamental memory-one identity for the key player
/// (seat 0): `(delta p - p_rep) . v + (1 - delta) p0`, which is exactly
/// zero whenever `dist` arose from play in which the key used `strategy`.
pub fn verify_akin(strategy: &MemoryOneStrategy, dist: &DiscountedDistribution) -> f64 {
    let delta = dist.delta;
    let mut acc = 0.0;
    for (mask, &v) in dist.v.iter().enumerate() {
        let p_rep = (mask & 1) as f64;
        acc += (delta * strategy.p[mask] - p_rep) * v;
    }
    acc + (1.0 - delta) * strategy.p0
}

/// History-dependent cooperation rule: maps (profile history, seat) to a
/// cooperation probability for the next round.
pub type HistoryRule = Arc<dyn Fn(&[u32], usize) -> f64 + Send + Sync>;

/// A player's strategy for simulation purposes. Memory-one vectors are
/// indexed by the *global* profile mask (use
/// [`MemoryOneStrategy::reseat`] to place a key-seat-0 strategy at
/// another seat).
#[derive(Clone)]
pub enum PlayerStrategy {
    AllC,
    AllD,
    /// Cooperate with a fixed probability every round.
    Random(f64),
    MemoryOne(MemoryOneStrategy),
    HistoryRule { name: String, rule: HistoryRule },
}

impl std::fmt::Debug for PlayerStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlayerStrategy::AllC => write!(f, "AllC"),
            PlayerStrategy::AllD => write!(f, "AllD"),
            PlayerStrategy::Random(q) => write!(f, "Random({q})"),
            PlayerStrategy::MemoryOne(_) => write!(f, "MemoryOne"),
            PlayerStrategy::HistoryRule { name, .. } => write!(f, "HistoryRule({name})"),
        }
    }
}

impl PlayerStrategy {
    /// Cooperation probability for the first round.
    fn initial_probability(&self, seat: usize) -> f64 {
        match self {
            PlayerStrategy::AllC => 1.0,
            PlayerStrategy::AllD => 0.0,
            PlayerStrategy::Random(q) => *q,
            PlayerStrategy::MemoryOne(st) => st.p0,
            PlayerStrategy::HistoryRule { rule, .. } => rule(&[], seat),
        }
    }

    fn probability(&self, history: &[u32], seat: usize) -> f64 {
        match self {
            PlayerStrategy::AllC => 1.0,
            PlayerStrategy::AllD => 0.0,
            PlayerStrategy::Random(q) => *q,
            PlayerStrategy::MemoryOne(st) => st.p[*history.last().unwrap() as usize],
            PlayerStrategy::HistoryRule { rule, .. } => rule(history, seat),
        }
    }

    /// Extracts the memory-one form, when the strategy has one.
    pub fn as_memory_one(&self, n: usize) -> Option<MemoryOneStrategy> {
        match self {
            PlayerStrategy::AllC => Some(MemoryOneStrategy::constant(n, 1.0)),
            PlayerStrategy::AllD => Some(MemoryOneStrategy::constant(n, 0.0)),
            PlayerStrategy::Random(q) => Some(MemoryOneStrategy::constant(n, *q)),
            PlayerStrategy::MemoryOne(st) => Some(st.clone()),
            PlayerStrategy::HistoryRule { .. } => None,
        }
    }

    /// Cooperate iff at least half of all actions over the last (up to)
    /// three rounds were cooperative; cooperates with probability 1/2 on
    /// an empty history.
    pub fn majority_of_last_3(n: usize) -> PlayerStrategy {
        PlayerStrategy::HistoryRule {
            name: "majority3".into(),
            rule: Arc::new(move |history: &[u32], _seat| {
                if history.is_empty() {
                    return 0.5;
                }
                let window = &history[history.len().saturating_sub(3)..];
                let coop: u32 = window.iter().map(|m| m.count_ones()).sum();
                let total = (window.len() * n) as u32;
                if 2 * coop >= total {
                    1.0
                } else {
                    0.0
                }
            }),
        }
    }
}

/// How a Monte Carlo run accrues payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum McMode {
    /// Explicit `delta^t` weighting, truncated once the weight drops below
    /// [`MC_WEIGHT_CUTOFFF`](MC_WEIGHT_CUTOFF); unbiased and lower-variance.
    DiscountedWeights,
    /// Terminate each run with continuation probability `delta`, matching
    /// the continuation-probability reading of the discount factor.
    GeometricStopping,
}

#[derive(Debug, Clone, Copy)]
pub struct MonteCarloConfig {
    pub runs: usize,
    pub seed: u64,
    pub mode: McMode,
}

impl MonteCarloConfig {
    pub fn new(runs: usize, seed: u64) -> Self {
        MonteCarloConfig { runs, seed, mode: McMode::DiscountedWeights }
    }
}

/// Aggregated simulation output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub payoff_mean: Vec<f64>,
    pub payoff_stderr: Vec<f64>,
    pub runs: usize,
    pub seed: u64,
    /// Residual of the enforced payoff relation at the mean payoffs, when a
    /// relation was supplied. Equals the mean of the per-run residuals.
    pub residual: Option<f64>,
    /// Standard error of the per-run residuals.
    pub residual_stderr: Option<f64>,
    /// Residual of the fundamental memory-one identity for seat 0 at the
    /// empirical mean distribution, when seat 0 is memory-one.
    pub akin_residual: Option<f64>,
}

struct RunAccumulator {
    payoff_sum: Vec<f64>,
    payoff_sq_sum: Vec<f64>,
    dist_sum: Vec<f64>,
    residual_sum: f64,
    residual_sq_sum: f64,
}

impl RunAccumulator {
    fn new(n: usize) -> Self {
        RunAccumulator {
            payoff_sum: vec![0.0; n],
            payoff_sq_sum: vec![0.0; n],
            dist_sum: vec![0.0; 1 << n],
            residual_sum: 0.0,
            residual_sq_sum: 0.0,
        }
    }

    fn absorb(&mut self, other: &RunAccumulator) {
        for (acc, x) in self.payoff_sum.iter_mut().zip(&other.payoff_sum) {
            *acc += x;
        }
        for (acc, x) in self.payoff_sq_sum.iter_mut().zip(&other.payoff_sq_sum) {
            *acc += x;
        }
        for (acc, x) in self.dist_sum.iter_mut().zip(&other.dist_sum) {
            *acc += x;
        }
        self.residual_sum += other.residual_sum;
        self.residual_sq_sum += other.residual_sq_sum;
    }
}

fn simulate_run(
    table: &PayoffTable,
    strategies: &[PlayerStrategy],
    delta: f64,
    mode: McMode,
    relation: Option<&PayoffRelation>,
    rng: &mut ChaCha8Rng,
    acc: &mut RunAccumulator,
) {
    let n = table.n();
    let mut history: Vec<u32> = Vec::new();
    let mut run_payoffs = vec![0.0; n];
    let mut run_dist = vec![0.0; 1 << n];

    let mut t = 0usize;
    let mut weight = 1.0 - delta; // (1 - delta) * delta^t
    loop {
        let mut mask = 0u32;
        for (i, st) in strategies.iter().enumerate() {
            let p = if t == 0 {
                st.initial_probability(i)
            } else {
                st.probability(&history, i)
            };
            if rng.gen::<f64>() < p {
                mask |= 1 << i;
            }
        }
        let profile = ActionProfile::new(mask, n);
        let w = match mode {
            McMode::DiscountedWeights => weight,
            McMode::GeometricStopping => 1.0 - delta,
        };
        for (i, payoff) in run_payoffs.iter_mut().enumerate() {
            *payoff += w * table.profile_payoff(profile, i);
        }
        run_dist[mask as usize] += w;

        history.push(mask);
        t += 1;
        match mode {
            McMode::DiscountedWeights => {
                weight *= delta;
                if weight / (1.0 - delta) < MC_WEIGHT_CUTOFF {
                    break;
                }
            }
            McMode::GeometricStopping => {
                if rng.gen::<f64>() >= delta {
                    break;
                }
            }
        }
    }

    for i in 0..n {
        acc.payoff_sum[i] += run_payoffs[i];
        acc.payoff_sq_sum[i] += run_payoffs[i] * run_payoffs[i];
    }
    for (acc_d, x) in acc.dist_sum.iter_mut().zip(&run_dist) {
        *acc_d += x;
    }
    if let Some(rel) = relation {
        let r = enforced_relation_residual(&run_payoffs, rel);
        acc.residual_sum += r;
        acc.residual_sq_sum += r * r;
    }
}

/// Runs seeded Monte Carlo simulation of the repeated game.
///
/// Runs are distributed over threads in fixed-size blocks and block
/// results are combined in block order, so identical seeds produce
/// identical reports regardless of the parallel schedule. Each run draws
/// from its own counter-derived random substream.
pub fn monte_carlo(
    table: &PayoffTable,
    strategies: &[PlayerStrategy],
    delta: f64,
    config: &MonteCarloConfig,
    relation: Option<&PayoffRelation>,
) -> Result<SimulationReport, EngineError> {
    let n = table.n();
    assert_eq!(strategies.len(), n, "one strategy per player required");
    if config.runs == 0 {
        return Err(EngineError::NoRuns);
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(EngineError::BadDiscount(delta));
    }

    const BLOCK: usize = 1024;
    let blocks = config.runs.div_ceil(BLOCK);
    let partials: Vec<RunAccumulator> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut acc = RunAccumulator::new(n);
            let lo = block * BLOCK;
            let hi = ((block + 1) * BLOCK).min(config.runs);
            for run in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(run as u64);
                simulate_run(table, strategies, delta, config.mode, relation, &mut rng, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = RunAccumulator::new(n);
    for partial in &partials {
        total.absorb(partial);
    }

    let runs_f = config.runs as f64;
    let mean: Vec<f64> = total.payoff_sum.iter().map(|s| s / runs_f).collect();
    let stderr: Vec<f64> = total
        .payoff_sq_sum
        .iter()
        .zip(&mean)
        .map(|(sq, m)| {
            let var = (sq / runs_f - m * m).max(0.0) * runs_f / (runs_f - 1.0).max(1.0);
            (var / runs_f).sqrt()
        })
        .collect();

    let residual = relation.map(|rel| enforced_relation_residual(&mean, rel));
    let residual_stderr = relation.map(|_| {
        let m = total.residual_sum / runs_f;
        let var =
            (total.residual_sq_sum / runs_f - m * m).max(0.0) * runs_f / (runs_f - 1.0).max(1.0);
        (var / runs_f).sqrt()
    });
    let akin_residual = strategies[0].as_memory_one(n).map(|st| {
        let v: Vec<f64> = total.dist_sum.iter().map(|x| x / runs_f).collect();
        let dist = DiscountedDistribution { v, delta };
        verify_akin(&st, &dist)
    });

    Ok(SimulationReport {
        payoff_mean: mean,
        payoff_stderr: stderr,
        runs: config.runs,
        seed: config.seed,
        residual,
        residual_stderr,
        akin_residual,
    })
}
