//! Zero-determinant strategies in repeated multiplayer social dilemmas with
//! a common discount factor.
//!
//! The library answers three questions about a symmetric `n`-player social
//! dilemma played repeatedly with continuation probability `delta`:
//!
//! * Which linear payoff relations `pi_coplayers = s * pi_key + (1-s) * l`
//!   can a single memory-one player enforce ([`zd`])?
//! * How patient must the group be — the threshold discount factor above
//!   which a given relation becomes enforceable ([`thresholds`])?
//! * What do the resulting discounted payoffs actually look like, verified
//!   by an exact Markov-chain evaluation and by seeded Monte Carlo
//!   simulation ([`engine`])?
//!
//! [`game`] supplies the payoff structures (public goods, multiplayer
//! snowdrift, custom tables) and the social-dilemma validity checks.

pub mod engine;
pub mod game;
pub mod thresholds;
pub mod zd;

pub use engine::{
    discounted_payoffs, exact_distribution, monte_carlo, verify_akin, DiscountedDistribution,
    MonteCarloConfig, PlayerStrategy, SimulationReport,
};
pub use game::{ActionProfile, GameError, GameSpec, PayoffTable};
pub use thresholds::{
    equalizer_threshold, extortion_threshold, generosity_threshold, nsd_extortion_threshold,
    nsd_generous_threshold, nsd_slope_bounds, pgg_nash_regions, pgg_slope_bound, pgg_threshold,
    rho_extrema, RhoExtrema, ThresholdResult,
};
pub use zd::{
    check_necessary, enforced_relation_residual, is_enforceable, is_enforceable_oracle,
    phi_interval, zd_entries, EnforceabilityReport, FeasibilityInterval, MemoryOneStrategy,
    PayoffRelation, ZdParameters,
};
