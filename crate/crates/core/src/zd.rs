//! Zero-determinant strategy construction and enforceability.
//!
//! A ZD strategy is a memory-one strategy whose conditional cooperation
//! probabilities are an affine combination of the players' one-shot payoffs.
//! A key player using one unilaterally enforces the linear relation
//! `pi_coplayers = s * pi_key + (1 - s) * l` between discounted payoffs,
//! where `pi_coplayers` is the `w`-weighted average of the co-players'
//! payoffs. This module builds the strategy vector for given parameters,
//! computes the feasible range of the scaling constant `phi`, and decides
//! whether a relation is enforceable at all.

use crate::game::{ActionProfile, PayoffTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for the weight-normalization check.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Entries of the strategy vector may stray outside `[0,1]` by this much
/// before the parameters are declared infeasible; covers accumulated
/// rounding in the entry arithmetic.
pub const ENTRY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZdError {
    #[error("co-player weights must sum to 1, got {0}")]
    WeightsNotNormalized(f64),
    #[error("weight vector length must be n-1 = {expected}, got {actual}")]
    WeightLengthMismatch { expected: usize, actual: usize },
    #[error("negative co-player weight {weight} at index {index}; enable unchecked weights to allow")]
    NegativeWeight { index: usize, weight: f64 },
    #[error("discount factor must lie in (0,1), got {0}")]
    BadDiscount(f64),
    #[error("initial cooperation probability must lie in [0,1], got {0}")]
    BadInitialProbability(f64),
    #[error(
        "infeasible parameters: entry for profile mask {mask} is {value}, outside [0,1]"
    )]
    InfeasibleParameters { mask: u32, value: f64 },
    #[error("phi must be nonzero")]
    ZeroPhi,
}

/// A target linear payoff relation `(s, l)` together with the weights the
/// key player assigns to each co-player. Weights must sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffRelation {
    s: f64,
    l: f64,
    w: Vec<f64>,
}

impl PayoffRelation {
    /// Builds a relation, rejecting non-normalized or (by default) negative
    /// weights. Negative weights are gated behind
    /// [`new_unchecked_weights`](Self::new_unchecked_weights) because the
    /// theory only demonstrates nonnegative ones.
    pub fn new(s: f64, l: f64, w: Vec<f64>) -> Result<Self, ZdError> {
        if let Some((index, &weight)) = w.iter().enumerate().find(|(_, &x)| x < 0.0) {
            return Err(ZdError::NegativeWeight { index, weight });
        }
        Self::new_unchecked_weights(s, l, w)
    }

    /// Like [`new`](Self::new) but admits negative weights; the
    /// normalization constraint still applies.
    pub fn new_unchecked_weights(s: f64, l: f64, w: Vec<f64>) -> Result<Self, ZdError> {
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(ZdError::WeightsNotNormalized(sum));
        }
        Ok(PayoffRelation { s, l, w })
    }

    /// Equal weights `1/(n-1)` for every co-player.
    pub fn equal_weights(s: f64, l: f64, n: usize) -> Self {
        let w = vec![1.0 / (n - 1) as f64; n - 1];
        PayoffRelation { s, l, w }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// Weight of co-player `j` (player index `j` in `1..n`).
    pub fn weight_of(&self, j: usize) -> f64 {
        self.w[j - 1]
    }

    pub fn n(&self) -> usize {
        self.w.len() + 1
    }
}

/// Partial sums of the sorted weight vector: `w_hat[z]` is the sum of the
/// `z` smallest weights and `w_tilde[z]` the sum of the `z` largest, for
/// `z` in `0..=n-1`. These realize the extrema of the weight sums over all
/// `z`-subsets of co-players.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightOrderStatistics {
    w_hat: Vec<f64>,
    w_tilde: Vec<f64>,
}

impl WeightOrderStatistics {
    pub fn from_relation(relation: &PayoffRelation) -> Self {
        let mut sorted = relation.w.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let m = sorted.len();
        let mut w_hat = Vec::with_capacity(m + 1);
        let mut w_tilde = Vec::with_capacity(m + 1);
        w_hat.push(0.0);
        w_tilde.push(0.0);
        let mut lo = 0.0;
        let mut hi = 0.0;
        for z in 0..m {
            lo += sorted[z];
            hi += sorted[m - 1 - z];
            w_hat.push(lo);
            w_tilde.push(hi);
        }
        WeightOrderStatistics { w_hat, w_tilde }
    }

    /// Sum of the `z` smallest weights.
    pub fn smallest(&self, z: usize) -> f64 {
        self.w_hat[z]
    }

    /// Sum of the `z` largest weights.
    pub fn largest(&self, z: usize) -> f64 {
        self.w_tilde[z]
    }
}

/// A memory-one strategy: cooperation probability per previous action
/// profile (indexed by mask), plus the initial cooperation probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryOneStrategy {
    pub p: Vec<f64>,
    pub p0: f64,
}

impl MemoryOneStrategy {
    pub fn new(p: Vec<f64>, p0: f64) -> Result<Self, ZdError> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(ZdError::BadInitialProbability(p0));
        }
        if let Some((mask, &value)) =
            p.iter().enumerate().find(|(_, &x)| !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&x))
        {
            return Err(ZdError::InfeasibleParameters { mask: mask as u32, value });
        }
        Ok(MemoryOneStrategy { p, p0 })
    }

    pub fn n(&self) -> usize {
        self.p.len().trailing_zeros() as usize
    }

    /// Unconditional strategies: always-cooperate, always-defect, uniform.
    pub fn constant(n: usize, q: f64) -> Self {
        MemoryOneStrategy { p: vec![q; 1 << n], p0: q }
    }

    /// Re-indexes a strategy written for key seat 0 so that it can be used
    /// by the player at `seat`: the new vector is indexed by the global
    /// profile mask, with the seat's own action mapped to local bit 0 and
    /// the co-players mapped to the remaining bits in ascending seat order.
    pub fn reseat(&self, seat: usize, n: usize) -> Self {
        assert_eq!(self.p.len(), 1 << n);
        if seat == 0 {
            return self.clone();
        }
        let mut p = vec![0.0; 1 << n];
        for (global, slot) in p.iter_mut().enumerate() {
            let global = global as u32;
            let mut local = (global >> seat & 1) as u32;
            let mut bit = 1;
            for j in (0..n).filter(|&j| j != seat) {
                local |= (global >> j & 1) << bit;
                bit += 1;
            }
            *slot = self.p[local as usize];
        }
        MemoryOneStrategy { p, p0: self.p0 }
    }
}

/// Full parameter set of a ZD strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ZdParameters {
    pub relation: PayoffRelation,
    pub phi: f64,
    pub delta: f64,
    pub p0: f64,
}

impl ZdParameters {
    pub fn new(relation: PayoffRelation, phi: f64, delta: f64, p0: f64) -> Result<Self, ZdError> {
        if phi == 0.0 {
            return Err(ZdError::ZeroPhi);
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(ZdError::BadDiscount(delta));
        }
        if !(0.0..=1.0).contains(&p0) {
            return Err(ZdError::BadInitialProbability(p0));
        }
        Ok(ZdParameters { relation, phi, delta, p0 })
    }
}

/// The range of scaling constants `phi > 0` for which every strategy entry
/// is a valid probability. Empty iff `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FeasibilityInterval {
    pub const EMPTY: FeasibilityInterval = FeasibilityInterval { lo: 1.0, hi: 0.0 };

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Default `phi` pick: the interval midpoint, for maximal margin against
    /// the boundary constraints. (The theory only requires existence.)
    pub fn midpoint(&self) -> Option<f64> {
        if self.is_empty() {
            None
        } else if self.hi.is_finite() {
            Some(0.5 * (self.lo + self.hi))
        } else {
            Some(if self.lo > 0.0 { 2.0 * self.lo } else { 1.0 })
        }
    }
}

/// The constraint margin of a cooperation profile: with `|sigma|` total
/// cooperators (key included) and `W_D` the weight of defecting co-players,
/// `rho_C = (1-s)(a[|sigma|-1] - l) + W_D * (b[|sigma|] - a[|sigma|-1])`.
pub fn rho_c(table: &PayoffTable, relation: &PayoffRelation, profile: ActionProfile) -> f64 {
    debug_assert!(profile.cooperates(0));
    let k = profile.cooperators() as isize;
    let a_prev = table.a_ext(k - 1);
    let gap = table.b_ext(k as usize) - a_prev;
    let w_d: f64 = profile.coplayer_defectors().map(|j| relation.weight_of(j)).sum();
    (1.0 - relation.s()) * (a_prev - relation.l()) + w_d * gap
}

/// Margin of a defection profile:
/// `rho_D = (1-s)(l - b[|sigma|]) + W_C * (b[|sigma|] - a[|sigma|-1])`.
pub fn rho_d(table: &PayoffTable, relation: &PayoffRelation, profile: ActionProfile) -> f64 {
    debug_assert!(!profile.cooperates(0));
    let k = profile.cooperators() as isize;
    let b_k = table.b_ext(k as usize);
    let gap = b_k - table.a_ext(k - 1);
    let w_c: f64 = profile.coplayer_cooperators().map(|j| relation.weight_of(j)).sum();
    (1.0 - relation.s()) * (relation.l() - b_k) + w_c * gap
}

fn check_relation_shape(table: &PayoffTable, relation: &PayoffRelation) -> Result<(), ZdError> {
    if relation.w.len() != table.n() - 1 {
        return Err(ZdError::WeightLengthMismatch {
            expected: table.n() - 1,
            actual: relation.w.len(),
        });
    }
    Ok(())
}

/// Builds the memory-one strategy vector for the given ZD parameters.
///
/// Per profile, with key cooperating:
/// `delta * p = 1 + phi * [(1-s)(l - a[|sigma|-1]) - W_D (b[|sigma|] - a[|sigma|-1])] - (1-delta) p0`,
/// and with key defecting:
/// `delta * p = phi * [(1-s)(l - b[|sigma|]) + W_C (b[|sigma|] - a[|sigma|-1])] - (1-delta) p0`.
///
/// Entries are not clamped: a value outside `[0,1]` by more than
/// [`ENTRY_TOL`] yields an error carrying the worst-violating profile.
pub fn zd_entries(table: &PayoffTable, params: &ZdParameters) -> Result<MemoryOneStrategy, ZdError> {
    check_relation_shape(table, &params.relation)?;
    let delta = params.delta;
    let n = table.n();
    let mut p = Vec::with_capacity(1 << n);
    let mut worst: Option<(u32, f64, f64)> = None; // (mask, value, violation)
    for profile in ActionProfile::all(n) {
        let delta_p = if profile.cooperates(0) {
            1.0 - params.phi * rho_c(table, &params.relation, profile) - (1.0 - delta) * params.p0
        } else {
            params.phi * rho_d(table, &params.relation, profile) - (1.0 - delta) * params.p0
        };
        let entry = delta_p / delta;
        let violation = (entry - 1.0).max(-entry);
        if violation > ENTRY_TOL {
            match worst {
                Some((_, _, v)) if v >= violation => {}
                _ => worst = Some((profile.mask(), entry, violation)),
            }
        }
        p.push(entry);
    }
    if let Some((mask, value, _)) = worst {
        return Err(ZdError::InfeasibleParameters { mask, value });
    }
    Ok(MemoryOneStrategy { p, p0: params.p0 })
}

/// Intersects, over all `2^n` profiles, the ranges of `phi > 0` for which
/// the strategy entry stays in `[0,1]`.
///
/// A cooperation profile requires
/// `(1-delta)(1-p0) <= phi * rho_C <= 1 - (1-delta) p0`, a defection
/// profile `(1-delta) p0 <= phi * rho_D <= delta + (1-delta) p0`.
/// Infeasibility is a value (the empty interval), not an error.
pub fn phi_interval(
    table: &PayoffTable,
    relation: &PayoffRelation,
    delta: f64,
    p0: f64,
) -> Result<FeasibilityInterval, ZdError> {
    check_relation_shape(table, relation)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(ZdError::BadDiscount(delta));
    }
    if !(0.0..=1.0).contains(&p0) {
        return Err(ZdError::BadInitialProbability(p0));
    }
    let mut lo = 0.0f64;
    let mut hi = f64::INFINITY;
    for profile in ActionProfile::all(table.n()) {
        let (rho, lower, upper) = if profile.cooperates(0) {
            (
                rho_c(table, relation, profile),
                (1.0 - delta) * (1.0 - p0),
                1.0 - (1.0 - delta) * p0,
            )
        } else {
            (
                rho_d(table, relation, profile),
                (1.0 - delta) * p0,
                delta + (1.0 - delta) * p0,
            )
        };
        if rho > 0.0 {
            lo = lo.max(lower / rho);
            hi = hi.min(upper / rho);
        } else if lower > 0.0 || rho < 0.0 {
            // rho <= 0 with a positive lower bound cannot be met by phi > 0;
            // rho < 0 with lower = 0 would force phi <= 0.
            return Ok(FeasibilityInterval::EMPTY);
        }
        if lo > hi {
            return Ok(FeasibilityInterval::EMPTY);
        }
    }
    Ok(FeasibilityInterval { lo, hi })
}

/// Outcome of the necessary-condition screen.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport {
    pub pass: bool,
    pub violated: Option<String>,
}

/// Necessary conditions for enforceability: `-min_j w_j < s < 1` and
/// `b[0] <= l <= a[n-1]` with at least one of the `l` inequalities strict.
pub fn check_necessary(relation: &PayoffRelation, table: &PayoffTable) -> NecessaryReport {
    let s = relation.s();
    let l = relation.l();
    let min_w = relation.w.iter().cloned().fold(f64::INFINITY, f64::min);
    let fail = |msg: String| NecessaryReport { pass: false, violated: Some(msg) };
    if !(s < 1.0) {
        return fail("s < 1 required".into());
    }
    if !(s > -min_w) {
        return fail(format!("s > -min_j w_j = {} required", -min_w));
    }
    let b0 = table.b()[0];
    let a_top = table.a()[table.n() - 1];
    if l < b0 {
        return fail(format!("l >= b[0] = {} required", b0));
    }
    if l > a_top {
        return fail(format!("l <= a[n-1] = {} required", a_top));
    }
    if l == b0 && l == a_top {
        return fail("at least one of the l bounds must be strict".into());
    }
    NecessaryReport { pass: true, violated: None }
}

/// Which side of the baseline-payoff bounds is met with equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BindingSide {
    Interior,
    /// `l` equals the lower bound; only `p0 = 0` remains admissible.
    Lower,
    /// `l` equals the upper bound; only `p0 = 1` remains admissible.
    Upper,
}

/// Verdict of the enforceability characterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnforceabilityReport {
    pub enforceable: bool,
    /// `max_z { b[z] - w_hat[z] (b[z] - a[z-1]) / (1-s) }`
    pub l_lower: f64,
    /// `min_z { a[z] + w_hat[n-z-1] (b[z+1] - a[z]) / (1-s) }`
    pub l_upper: f64,
    pub binding: BindingSide,
    pub reason: Option<String>,
}

/// Decides whether `(s, l, w)` is enforceable for *some* discount factor:
/// `-1/(n-1) < s < 1` and `l` within the bounds above, with at least one
/// bound strict. Equality on the lower bound forces `p0 = 0`, equality on
/// the upper forces `p0 = 1`; the report records which side binds. Uses the
/// `a[-1] = b[n] = 0` convention; ties over `z` are broken toward smaller
/// `z` (the extrema values are what matter).
pub fn is_enforceable(
    table: &PayoffTable,
    relation: &PayoffRelation,
) -> Result<EnforceabilityReport, ZdError> {
    check_relation_shape(table, relation)?;
    let n = table.n();
    let s = relation.s();
    let stats = WeightOrderStatistics::from_relation(relation);
    let one_minus_s = 1.0 - s;

    // Bounds are well defined only for s < 1; report the slope failure first.
    let mut l_lower = f64::NEG_INFINITY;
    let mut l_upper = f64::INFINITY;
    if one_minus_s > 0.0 {
        for z in 0..n {
            let cand = table.b()[z]
                - stats.smallest(z) * (table.b()[z] - table.a_ext(z as isize - 1)) / one_minus_s;
            if cand > l_lower {
                l_lower = cand;
            }
        }
        for z in 0..n {
            let cand = table.a()[z]
                + stats.smallest(n - z - 1) * (table.b_ext(z + 1) - table.a()[z]) / one_minus_s;
            if cand < l_upper {
                l_upper = cand;
            }
        }
    }

    let fail = |l_lower, l_upper, reason: String| EnforceabilityReport {
        enforceable: false,
        l_lower,
        l_upper,
        binding: BindingSide::Interior,
        reason: Some(reason),
    };
    if !(s < 1.0) {
        return Ok(fail(l_lower, l_upper, "s < 1 required".into()));
    }
    if !(s > -1.0 / (n - 1) as f64) {
        return Ok(fail(l_lower, l_upper, format!("s > -1/(n-1) = {} required", -1.0 / (n - 1) as f64)));
    }
    let l = relation.l();
    // Bound comparisons get a scale-aware tolerance: the bounds are sums of
    // products of payoffs and weights, so exact ties (common at onset
    // slopes) land within a few ulps of the mathematical value.
    let tol = 1e-12 * (1.0 + l.abs() + l_lower.abs().max(l_upper.abs()));
    if l < l_lower - tol {
        return Ok(fail(l_lower, l_upper, format!("l below lower bound {}", l_lower)));
    }
    if l > l_upper + tol {
        return Ok(fail(l_lower, l_upper, format!("l above upper bound {}", l_upper)));
    }
    let at_lower = (l - l_lower).abs() <= tol;
    let at_upper = (l - l_upper).abs() <= tol;
    if at_lower && at_upper {
        return Ok(fail(l_lower, l_upper, "both l bounds met with equality".into()));
    }
    let binding = if at_lower {
        BindingSide::Lower
    } else if at_upper {
        BindingSide::Upper
    } else {
        BindingSide::Interior
    };
    Ok(EnforceabilityReport { enforceable: true, l_lower, l_upper, binding, reason: None })
}

/// Number of interior grid points used by the brute-force oracle's `p0`
/// scan (endpoints 0 and 1 included exactly).
pub const ORACLE_P0_STEPS: usize = 1000;

/// Ground-truth enforceability check at a fixed discount factor: scans
/// `p0` over a uniform grid and reports whether any feasible `phi`
/// interval exists. Independent of the closed-form bounds and thresholds.
pub fn is_enforceable_oracle(
    table: &PayoffTable,
    relation: &PayoffRelation,
    delta: f64,
) -> Result<bool, ZdError> {
    for k in 0..=ORACLE_P0_STEPS {
        let p0 = k as f64 / ORACLE_P0_STEPS as f64;
        if !phi_interval(table, relation, delta, p0)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Residual of the enforced relation:
/// `sum_j w_j pi_j - s pi_0 - (1-s) l`; zero (within tolerance) certifies
/// that the relation holds for the given discounted payoff vector.
pub fn enforced_relation_residual(payoffs: &[f64], relation: &PayoffRelation) -> f64 {
    assert_eq!(payoffs.len(), relation.n(), "payoff vector length mismatch");
    let weighted: f64 = payoffs[1..]
        .iter()
        .zip(relation.weights())
        .map(|(pi, w)| w * pi)
        .sum();
    weighted - relation.s() * payoffs[0] - (1.0 - relation.s()) * relation.l()
}
