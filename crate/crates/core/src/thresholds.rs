//! Threshold discount factors for extortionate, generous and equalizer
//! strategies, plus the closed forms for the public goods and snowdrift
//! games and the Nash-equilibrium regions of the public goods game.

use crate::game::PayoffTable;
use crate::zd::{is_enforceable, PayoffRelation, WeightOrderStatistics, ZdError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThresholdError {
    #[error("slope {s} below the enforceable bound {bound}")]
    SlopeBelowBound { s: f64, bound: f64 },
    #[error("initial probability must lie strictly inside (0,1), got {0}")]
    BoundaryInitialProbability(f64),
    #[error(transparent)]
    Zd(#[from] ZdError),
}

/// The four extrema over `z` of the constraint margins
/// `rho_C(z) = (1-s)(a[z]-l) + w(b[z+1]-a[z])` and
/// `rho_D(z) = (1-s)(l-b[z]) + w(b[z]-a[z-1])`, with the largest weight
/// sums used in the maxima and the smallest in the minima.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoExtrema {
    pub c_max: f64,
    pub c_min: f64,
    pub d_max: f64,
    pub d_min: f64,
}

/// Evaluates the four extrema by explicit loop over `z = 0..n-1`, applying
/// the `a[-1] = b[n] = 0` convention.
pub fn rho_extrema(table: &PayoffTable, relation: &PayoffRelation) -> RhoExtrema {
    let n = table.n();
    let s = relation.s();
    let l = relation.l();
    let stats = WeightOrderStatistics::from_relation(relation);
    let mut ex = RhoExtrema {
        c_max: f64::NEG_INFINITY,
        c_min: f64::INFINITY,
        d_max: f64::NEG_INFINITY,
        d_min: f64::INFINITY,
    };
    for z in 0..n {
        let gap_c = table.b_ext(z + 1) - table.a()[z];
        let base_c = (1.0 - s) * (table.a()[z] - l);
        ex.c_max = ex.c_max.max(base_c + stats.largest(n - z - 1) * gap_c);
        ex.c_min = ex.c_min.min(base_c + stats.smallest(n - z - 1) * gap_c);

        let gap_d = table.b()[z] - table.a_ext(z as isize - 1);
        let base_d = (1.0 - s) * (l - table.b()[z]);
        ex.d_max = ex.d_max.max(base_d + stats.largest(z) * gap_d);
        ex.d_min = ex.d_min.min(base_d + stats.smallest(z) * gap_d);
    }
    ex
}

/// Which fraction attained the maximum in a threshold formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BindingTerm {
    /// No constraint binds: the relation is enforceable for every discount.
    None,
    /// Spread of the cooperation margins, `(c_max - c_min) / c_max`.
    CooperationSpread,
    /// Cross term `d_max / (d_max + c_min)`.
    DefectionOverCross,
    /// Spread of the defection margins, `(d_max - d_min) / d_max`.
    DefectionSpread,
    /// Cross term `c_max / (c_max + d_min)`.
    CooperationOverCross,
    /// One of the four equalizer inequalities, numbered 1-4.
    Equalizer(u8),
}

/// A threshold discount factor together with which term produced it.
/// `feasible = false` means the requested relation is not enforceable for
/// any discount factor (so no threshold exists).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub delta_tau: f64,
    pub binding_term: BindingTerm,
    pub feasible: bool,
}

impl ThresholdResult {
    fn infeasible() -> Self {
        ThresholdResult { delta_tau: 1.0, binding_term: BindingTerm::None, feasible: false }
    }
}

fn max_fraction(candidates: &[(f64, BindingTerm)]) -> ThresholdResult {
    let mut best = (0.0, BindingTerm::None);
    for &(value, term) in candidates {
        if value > best.0 {
            best = (value, term);
        }
    }
    ThresholdResult { delta_tau: best.0, binding_term: best.1, feasible: true }
}

/// Threshold above which the extortionate relation (`l = b[0]`, `p0 = 0`)
/// can be enforced: `max{(c_max - c_min)/c_max, d_max/(d_max + c_min)}`.
/// Degenerate fractions (`c_max = c_min`, `d_max = 0`) impose no
/// constraint and contribute 0.
pub fn extortion_threshold(
    table: &PayoffTable,
    s: f64,
    w: &[f64],
) -> Result<ThresholdResult, ThresholdError> {
    let relation = PayoffRelation::new(s, table.b()[0], w.to_vec())?;
    if !is_enforceable(table, &relation)?.enforceable {
        return Ok(ThresholdResult::infeasible());
    }
    let ex = rho_extrema(table, &relation);
    let spread = if ex.c_max > ex.c_min {
        (ex.c_max - ex.c_min) / ex.c_max
    } else {
        0.0
    };
    let cross = if ex.d_max > 0.0 {
        ex.d_max / (ex.d_max + ex.c_min)
    } else {
        0.0
    };
    Ok(max_fraction(&[
        (spread, BindingTerm::CooperationSpread),
        (cross, BindingTerm::DefectionOverCross),
    ]))
}

/// Threshold above which the generous relation (`l = a[n-1]`, `p0 = 1`)
/// can be enforced: `max{(d_max - d_min)/d_max, c_max/(c_max + d_min)}`.
pub fn generosity_threshold(
    table: &PayoffTable,
    s: f64,
    w: &[f64],
) -> Result<ThresholdResult, ThresholdError> {
    let relation = PayoffRelation::new(s, table.a()[table.n() - 1], w.to_vec())?;
    if !is_enforceable(table, &relation)?.enforceable {
        return Ok(ThresholdResult::infeasible());
    }
    let ex = rho_extrema(table, &relation);
    let spread = if ex.d_max > ex.d_min {
        (ex.d_max - ex.d_min) / ex.d_max
    } else {
        0.0
    };
    let cross = if ex.c_max > 0.0 {
        ex.c_max / (ex.c_max + ex.d_min)
    } else {
        0.0
    };
    Ok(max_fraction(&[
        (spread, BindingTerm::DefectionSpread),
        (cross, BindingTerm::CooperationOverCross),
    ]))
}

/// Threshold for enforcing the relation with a fixed interior initial
/// probability `p0 in (0,1)`. Covers equalizers (`s = 0`) and, per the
/// same argument, any relation with `b[0] < l < a[n-1]`.
///
/// Requires every constraint margin strictly positive (`c_min > 0`,
/// `d_min > 0`); otherwise no interior `p0` works and the result is
/// infeasible. Degenerate spreads impose no constraint.
pub fn equalizer_threshold(
    table: &PayoffTable,
    relation: &PayoffRelation,
    p0: f64,
) -> Result<ThresholdResult, ThresholdError> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(ThresholdError::BoundaryInitialProbability(p0));
    }
    if !is_enforceable(table, relation)?.enforceable {
        return Ok(ThresholdResult::infeasible());
    }
    let ex = rho_extrema(table, relation);
    if !(ex.c_min > 0.0 && ex.d_min > 0.0) {
        return Ok(ThresholdResult::infeasible());
    }
    let mut candidates = Vec::with_capacity(4);
    if ex.d_max > ex.d_min {
        candidates.push((
            1.0 - ex.d_min / (ex.d_min + (ex.d_max - ex.d_min) * p0),
            BindingTerm::Equalizer(1),
        ));
    }
    candidates.push((
        1.0 - ex.c_min / ((1.0 - p0) * (ex.c_min + ex.d_max)),
        BindingTerm::Equalizer(2),
    ));
    if ex.c_max > ex.c_min {
        candidates.push((
            1.0 - ex.c_min / ((1.0 - p0) * (ex.c_max - ex.c_min) + ex.c_min),
            BindingTerm::Equalizer(3),
        ));
    }
    candidates.push((
        1.0 - ex.d_min / ((ex.c_max + ex.d_min) * p0),
        BindingTerm::Equalizer(4),
    ));
    Ok(max_fraction(&candidates))
}

/// Threshold for a given `p0 in [0,1]`: routes the boundary values to the
/// extortion- and generosity-style formulas (which are valid for any
/// baseline `l` once the required margin signs hold) and the interior to
/// the four-inequality formula. Used for cross-validating the feasibility
/// oracle over a `p0` grid.
pub fn threshold_at_p0(
    table: &PayoffTable,
    relation: &PayoffRelation,
    p0: f64,
) -> Result<ThresholdResult, ThresholdError> {
    if !is_enforceable(table, relation)?.enforceable {
        return Ok(ThresholdResult::infeasible());
    }
    let ex = rho_extrema(table, relation);
    if p0 == 0.0 {
        // needs every cooperation margin strictly positive and no negative
        // defection margin
        if !(ex.c_min > 0.0 && ex.d_min >= 0.0) {
            return Ok(ThresholdResult::infeasible());
        }
        let spread = if ex.c_max > ex.c_min { (ex.c_max - ex.c_min) / ex.c_max } else { 0.0 };
        let cross = if ex.d_max > 0.0 { ex.d_max / (ex.d_max + ex.c_min) } else { 0.0 };
        return Ok(max_fraction(&[
            (spread, BindingTerm::CooperationSpread),
            (cross, BindingTerm::DefectionOverCross),
        ]));
    }
    if p0 == 1.0 {
        if !(ex.d_min > 0.0 && ex.c_min >= 0.0) {
            return Ok(ThresholdResult::infeasible());
        }
        let spread = if ex.d_max > ex.d_min { (ex.d_max - ex.d_min) / ex.d_max } else { 0.0 };
        let cross = if ex.c_max > 0.0 { ex.c_max / (ex.c_max + ex.d_min) } else { 0.0 };
        return Ok(max_fraction(&[
            (spread, BindingTerm::DefectionSpread),
            (cross, BindingTerm::CooperationOverCross),
        ]));
    }
    equalizer_threshold(table, relation, p0)
}

/// Minimal enforceable slope in the public goods game, `1 - n/(r(n-1))`.
/// Slopes at or above `(r-1)/r` are enforceable for every group size.
pub fn pgg_slope_bound(n: usize, r: f64) -> f64 {
    1.0 - n as f64 / (r * (n as f64 - 1.0))
}

/// Closed-form threshold for extortion and generosity in the public goods
/// game: `(1 - (1-s)(r - r/n)) / (1 - (1-s)(1 - r/n))`.
pub fn pgg_threshold(n: usize, r: f64, s: f64) -> Result<f64, ThresholdError> {
    let bound = pgg_slope_bound(n, r);
    if s < bound {
        return Err(ThresholdError::SlopeBelowBound { s, bound });
    }
    let nf = n as f64;
    Ok((1.0 - (1.0 - s) * (r - r / nf)) / (1.0 - (1.0 - s) * (1.0 - r / nf)))
}

/// Enforceable-slope summary for the multiplayer snowdrift game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NsdSlopeBounds {
    /// Extortion needs `s >= 1 - c/(b(n-1))`.
    pub extortion_lower: f64,
    /// Generous strategies can enforce any slope in `(0,1)`.
    pub generous_unrestricted: bool,
}

pub fn nsd_slope_bounds(n: usize, benefit: f64, cost: f64) -> NsdSlopeBounds {
    NsdSlopeBounds {
        extortion_lower: 1.0 - cost / (benefit * (n as f64 - 1.0)),
        generous_unrestricted: true,
    }
}

/// Closed-form generous threshold in the snowdrift game.
pub fn nsd_generous_threshold(n: usize, benefit: f64, cost: f64, s: f64) -> f64 {
    let nf = n as f64;
    let split = 1.0 - cost / (benefit * (nf - 1.0));
    if s <= split {
        let frac =
            ((1.0 - s) * benefit - cost / (nf - 1.0)) / ((1.0 - s) * (benefit - cost / nf));
        ((nf - 1.0) / nf).max(frac)
    } else {
        nsd_high_slope_threshold(n, benefit, cost, s)
    }
}

/// Closed-form extortion threshold in the snowdrift game; requires the
/// slope to be at least the extortion bound.
pub fn nsd_extortion_threshold(
    n: usize,
    benefit: f64,
    cost: f64,
    s: f64,
) -> Result<f64, ThresholdError> {
    let bound = nsd_slope_bounds(n, benefit, cost).extortion_lower;
    if s < bound {
        return Err(ThresholdError::SlopeBelowBound { s, bound });
    }
    Ok(nsd_high_slope_threshold(n, benefit, cost, s))
}

fn nsd_high_slope_threshold(n: usize, benefit: f64, cost: f64, s: f64) -> f64 {
    let nf = n as f64;
    ((1.0 - s) * (cost / nf - cost) + cost) / ((1.0 - s) * (benefit - cost) + cost)
}

/// Nash-equilibrium regions for ZD strategies in the public goods game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PggNashRegions {
    /// Slopes where extortionate ZD strategies exist and are a symmetric
    /// Nash equilibrium: `[slope_onset, crossover)`.
    pub extortion_slopes: (f64, f64),
    /// Slopes where generous ZD strategies are a symmetric Nash
    /// equilibrium: `(crossover, 1)`.
    pub generous_slopes: (f64, f64),
    /// At the crossover `(n-2)/(n-1)` both types are equilibria.
    pub crossover: f64,
    /// Generous equilibria additionally need
    /// `delta >= (n-r)(n-1)/((n-1)^2 + (r-1))`.
    pub generous_min_delta: f64,
}

pub fn pgg_nash_regions(n: usize, r: f64) -> PggNashRegions {
    let nf = n as f64;
    let crossover = (nf - 2.0) / (nf - 1.0);
    PggNashRegions {
        extortion_slopes: (pgg_slope_bound(n, r), crossover),
        generous_slopes: (crossover, 1.0),
        crossover,
        generous_min_delta: (nf - r) * (nf - 1.0) / ((nf - 1.0).powi(2) + (r - 1.0)),
    }
}
