//! Symmetric multiplayer social dilemma payoff structures.
//!
//! A group of `n` players simultaneously choose to cooperate or defect. The
//! game is symmetric: a player's single-round payoff depends only on their own
//! action and the number of cooperating co-players `z`. A cooperator facing
//! `z` cooperating co-players receives `a[z]`, a defector receives `b[z]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Single-round payoffs of a symmetric `n`-player two-action game.
///
/// Immutable after construction; validated against the social-dilemma axioms
/// by [`PayoffTable::validate_dilemma`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Which social-dilemma axiom was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// Payoffs are nondecreasing in the number of cooperating co-players.
    Monotonicity,
    /// Within a mixed group, defectors strictly out-earn cooperators:
    /// `b[z+1] > a[z]`.
    DefectionDominance,
    /// Mutual cooperation beats mutual defection: `a[n-1] > b[0]`.
    CooperationFavored,
}

impl Axiom {
    /// Short letter used in diagnostics (`a`, `b`, `c`).
    pub fn letter(&self) -> char {
        match self {
            Axiom::Monotonicity => 'a',
            Axiom::DefectionDominance => 'b',
            Axiom::CooperationFavored => 'c',
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("group size must be at least 2, got {0}")]
    GroupTooSmall(usize),
    #[error("payoff vector length mismatch: n = {n}, len(a) = {a_len}, len(b) = {b_len}")]
    LengthMismatch { n: usize, a_len: usize, b_len: usize },
    #[error("axiom ({}) violated at z = {index}", axiom.letter())]
    AxiomViolated { axiom: Axiom, index: usize },
    #[error("enhancement factor must satisfy 1 < r < n, got r = {r}, n = {n}")]
    BadEnhancementFactor { r: f64, n: usize },
    #[error("contribution cost must be positive, got {0}")]
    NonPositiveCost(f64),
    #[error("snowdrift requires benefit > cost > 0, got benefit = {benefit}, cost = {cost}")]
    BadSnowdriftParams { benefit: f64, cost: f64 },
}

impl PayoffTable {
    /// Builds a table from raw payoff vectors. Checks structure only; call
    /// [`validate_dilemma`](Self::validate_dilemma) for the dilemma axioms.
    pub fn new(n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, GameError> {
        if n < 2 {
            return Err(GameError::GroupTooSmall(n));
        }
        if a.len() != n || b.len() != n {
            return Err(GameError::LengthMismatch { n, a_len: a.len(), b_len: b.len() });
        }
        Ok(PayoffTable { n, a, b })
    }

    /// Linear public goods game: each cooperator contributes `c`, the pot is
    /// multiplied by `r` and split evenly, so `a[z] = rc(z+1)/n - c` and
    /// `b[z] = rcz/n`. Requires `1 < r < n` so that the game is a dilemma.
    pub fn public_goods(n: usize, r: f64, c: f64) -> Result<Self, GameError> {
        if n < 2 {
            return Err(GameError::GroupTooSmall(n));
        }
        if c <= 0.0 {
            return Err(GameError::NonPositiveCost(c));
        }
        if !(r > 1.0 && r < n as f64) {
            return Err(GameError::BadEnhancementFactor { r, n });
        }
        let nf = n as f64;
        let a = (0..n).map(|z| r * c * (z as f64 + 1.0) / nf - c).collect();
        let b = (0..n).map(|z| r * c * z as f64 / nf).collect();
        Ok(PayoffTable { n, a, b })
    }

    /// Multiplayer snowdrift game: cooperators share the cost of producing a
    /// fixed benefit, `a[z] = benefit - cost/(z+1)`; defectors free-ride,
    /// `b[z] = benefit` for `z >= 1`, and `b[0] = 0`.
    pub fn snowdrift(n: usize, benefit: f64, cost: f64) -> Result<Self, GameError> {
        if n < 2 {
            return Err(GameError::GroupTooSmall(n));
        }
        if !(benefit > cost && cost > 0.0) {
            return Err(GameError::BadSnowdriftParams { benefit, cost });
        }
        let a = (0..n).map(|z| benefit - cost / (z as f64 + 1.0)).collect();
        let b = (0..n).map(|z| if z == 0 { 0.0 } else { benefit }).collect();
        Ok(PayoffTable { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Cooperator payoff `a[z]`, extended with the boundary convention
    /// `a[-1] = 0` used throughout the enforceability formulas.
    pub fn a_ext(&self, z: isize) -> f64 {
        if z < 0 {
            0.0
        } else {
            self.a[z as usize]
        }
    }

    /// Defector payoff `b[z]`, extended with the boundary convention
    /// `b[n] = 0`.
    pub fn b_ext(&self, z: usize) -> f64 {
        if z >= self.n {
            0.0
        } else {
            self.b[z]
        }
    }

    /// Checks Assumption-1 style social-dilemma axioms:
    /// (a) `a` and `b` nondecreasing, (b) `b[z+1] > a[z]`, (c) `a[n-1] > b[0]`.
    ///
    /// Strict inequalities are checked exactly; the inputs are user-given
    /// constants, so no epsilon slack is applied.
    pub fn validate_dilemma(&self) -> Result<(), GameError> {
        for z in 0..self.n - 1 {
            if !(self.a[z + 1] >= self.a[z] && self.b[z + 1] >= self.b[z]) {
                return Err(GameError::AxiomViolated { axiom: Axiom::Monotonicity, index: z });
            }
        }
        for z in 0..self.n - 1 {
            if !(self.b[z + 1] > self.a[z]) {
                return Err(GameError::AxiomViolated { axiom: Axiom::DefectionDominance, index: z });
            }
        }
        if !(self.a[self.n - 1] > self.b[0]) {
            return Err(GameError::AxiomViolated { axiom: Axiom::CooperationFavored, index: 0 });
        }
        Ok(())
    }

    /// Single-round payoff of `player` in `profile`: `a[z]` if the player
    /// cooperates, else `b[z]`, with `z` the number of cooperating co-players.
    pub fn profile_payoff(&self, profile: ActionProfile, player: usize) -> f64 {
        assert!(player < self.n, "player index out of bounds");
        let z = profile.cooperating_coplayers(player);
        if profile.cooperates(player) {
            self.a[z]
        } else {
            self.b[z]
        }
    }

    /// Average single-round payoff of the `n-1` co-players of the key player,
    /// given the key's action and the number `z` of cooperating co-players.
    ///
    /// Uses the `a[-1] = b[n] = 0` convention at the boundaries, where the
    /// corresponding group is empty anyway.
    pub fn coplayer_average(&self, key_cooperates: bool, z: usize) -> f64 {
        assert!(z <= self.n - 1, "cooperating co-player count out of range");
        let zf = z as f64;
        let rest = (self.n - 1 - z) as f64;
        let total = if key_cooperates {
            // cooperating co-players see z-1 other co-players plus the key: a[z]
            // defecting co-players see z+1 cooperators: b[z+1]
            self.a_ext(z as isize) * zf + rest * self.b_ext(z + 1)
        } else {
            self.a_ext(z as isize - 1) * zf + rest * self.b_ext(z)
        };
        total / (self.n - 1) as f64
    }
}

/// One joint action of the group, encoded as an `n`-bit mask with bit `i`
/// set iff player `i` cooperates. The key player is index 0 by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActionProfile {
    mask: u32,
    n: usize,
}

impl ActionProfile {
    pub fn new(mask: u32, n: usize) -> Self {
        debug_assert!((mask as u64) < (1u64 << n));
        ActionProfile { mask, n }
    }

    /// Iterates all `2^n` profiles in ascending mask order.
    pub fn all(n: usize) -> impl Iterator<Item = ActionProfile> {
        (0..1u32 << n).map(move |mask| ActionProfile { mask, n })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cooperates(&self, player: usize) -> bool {
        self.mask >> player & 1 == 1
    }

    /// Total number of cooperators in the profile.
    pub fn cooperators(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Number of cooperators excluding `player`.
    pub fn cooperating_coplayers(&self, player: usize) -> usize {
        self.cooperators() - usize::from(self.cooperates(player))
    }

    /// Indices of co-players of player 0 that cooperate.
    pub fn coplayer_cooperators(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(|&j| self.cooperates(j))
    }

    /// Indices of co-players of player 0 that defect.
    pub fn coplayer_defectors(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(|&j| !self.cooperates(j))
    }
}

/// JSON game specification accepted by the CLI and file interfaces.
///
/// `{"type": "pgg", "n": 5, "r": 2.0, "c": 1.0}`,
/// `{"type": "nsd", "n": 5, "benefit": 2.0, "cost": 1.0}`, or
/// `{"type": "custom", "n": 2, "a": [...], "b": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GameSpec {
    Pgg {
        n: usize,
        r: f64,
        c: f64,
    },
    Nsd {
        n: usize,
        benefit: f64,
        cost: f64,
    },
    Custom {
        n: usize,
        a: Vec<f64>,
        b: Vec<f64>,
    },
}

impl GameSpec {
    pub fn build(&self) -> Result<PayoffTable, GameError> {
        match self {
            GameSpec::Pgg { n, r, c } => PayoffTable::public_goods(*n, *r, *c),
            GameSpec::Nsd { n, benefit, cost } => PayoffTable::snowdrift(*n, *benefit, *cost),
            GameSpec::Custom { n, a, b } => PayoffTable::new(*n, a.clone(), b.clone()),
        }
    }
}
