//! C ABI over the zdgames library.
//!
//! Games are opaque handles created by `zd_game_pgg` / `zd_game_nsd` /
//! `zd_game_custom` and released with `zd_game_free`. All other functions
//! return a `ZdStatus` and write results through out-pointers. Passing a
//! null weights pointer means equal co-player weights.

use std::slice;
use zdgames::game::PayoffTable;
use zdgames::zd::{self, PayoffRelation, ZdParameters};
use zdgames::{engine, thresholds, MemoryOneStrategy};

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ZdStatus {
    Ok = 0,
    /// A pointer argument was null.
    NullPointer = 1,
    /// A numeric argument was out of range or a buffer had the wrong size.
    InvalidArgument = 2,
    /// The payoff table is not a social dilemma.
    NotDilemma = 3,
    /// The requested relation or threshold is infeasible.
    Infeasible = 4,
}

/// Opaque game handle.
pub struct ZdGame {
    table: PayoffTable,
}

fn make_handle(result: Result<PayoffTable, zdgames::GameError>) -> *mut ZdGame {
    match result {
        Ok(table) => Box::into_raw(Box::new(ZdGame { table })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Public goods game with multiplication factor `r` and contribution `c`.
/// Returns null on invalid parameters.
#[no_mangle]
pub extern "C" fn zd_game_pgg(n: usize, r: f64, c: f64) -> *mut ZdGame {
    make_handle(PayoffTable::public_goods(n, r, c))
}

/// Multiplayer snowdrift game with benefit `b` and total cost `c`.
/// Returns null on invalid parameters.
#[no_mangle]
pub extern "C" fn zd_game_nsd(n: usize, b: f64, c: f64) -> *mut ZdGame {
    make_handle(PayoffTable::snowdrift(n, b, c))
}

/// Custom symmetric game from cooperator payoffs `a[0..n]` and defector
/// payoffs `b[0..n]`, both indexed by the number of cooperating co-players.
/// Returns null on invalid parameters.
///
/// # Safety
/// `a` and `b` must point to `n` readable doubles each.
#[no_mangle]
pub unsafe extern "C" fn zd_game_custom(n: usize, a: *const f64, b: *const f64) -> *mut ZdGame {
    if a.is_null() || b.is_null() || n == 0 {
        return std::ptr::null_mut();
    }
    let a = slice::from_raw_parts(a, n).to_vec();
    let b = slice::from_raw_parts(b, n).to_vec();
    make_handle(PayoffTable::new(n, a, b))
}

/// Releases a game handle. Null is allowed.
///
/// # Safety
/// `game` must be a handle returned by a constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zd_game_free(game: *mut ZdGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of players in the game.
///
/// # Safety
/// `game` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn zd_game_players(game: *const ZdGame) -> usize {
    if game.is_null() {
        return 0;
    }
    (*game).table.n()
}

/// Checks the social-dilemma axioms.
///
/// # Safety
/// `game` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn zd_game_validate(game: *const ZdGame) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    match game.table.validate_dilemma() {
        Ok(()) => ZdStatus::Ok,
        Err(_) => ZdStatus::NotDilemma,
    }
}

unsafe fn build_relation(
    table: &PayoffTable,
    s: f64,
    l: f64,
    weights: *const f64,
) -> Result<PayoffRelation, ZdStatus> {
    let n = table.n();
    let w = if weights.is_null() {
        vec![1.0 / (n - 1) as f64; n - 1]
    } else {
        slice::from_raw_parts(weights, n - 1).to_vec()
    };
    PayoffRelation::new(s, l, w).map_err(|_| ZdStatus::InvalidArgument)
}

/// Decides whether the relation `pi_coplayers = s * pi_key + (1 - s) * l`
/// is enforceable for some discount factor. Writes the admissible range of
/// baseline payoffs to `l_lower` / `l_upper` (either may be null).
/// `weights` may be null for equal weights, otherwise points to `n - 1`
/// co-player weights.
///
/// # Safety
/// `game` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zd_is_enforceable(
    game: *const ZdGame,
    s: f64,
    l: f64,
    weights: *const f64,
    l_lower: *mut f64,
    l_upper: *mut f64,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    let relation = match build_relation(&game.table, s, l, weights) {
        Ok(rel) => rel,
        Err(status) => return status,
    };
    let report = match zd::is_enforceable(&game.table, &relation) {
        Ok(report) => report,
        Err(_) => return ZdStatus::InvalidArgument,
    };
    if !l_lower.is_null() {
        *l_lower = report.l_lower;
    }
    if !l_upper.is_null() {
        *l_upper = report.l_upper;
    }
    if report.enforceable {
        ZdStatus::Ok
    } else {
        ZdStatus::Infeasible
    }
}

/// Threshold discount factor for extortionate (`generous = 0`) or generous
/// (`generous != 0`) relations with slope `s` and equal weights.
///
/// # Safety
/// `game` must be a live handle; `delta_tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zd_threshold(
    game: *const ZdGame,
    s: f64,
    generous: i32,
    delta_tau: *mut f64,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    if delta_tau.is_null() {
        return ZdStatus::NullPointer;
    }
    let n = game.table.n();
    let weights = vec![1.0 / (n - 1) as f64; n - 1];
    let result = if generous != 0 {
        thresholds::generosity_threshold(&game.table, s, &weights)
    } else {
        thresholds::extortion_threshold(&game.table, s, &weights)
    };
    match result {
        Ok(res) if res.feasible => {
            *delta_tau = res.delta_tau;
            ZdStatus::Ok
        }
        Ok(_) => ZdStatus::Infeasible,
        Err(_) => ZdStatus::InvalidArgument,
    }
}

/// Threshold discount factor for an equalizer relation (`s = 0`) fixing
/// the co-players' payoff at `l`, entered with initial cooperation
/// probability `p0` strictly between 0 and 1.
///
/// # Safety
/// `game` must be a live handle; `delta_tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zd_equalizer_threshold(
    game: *const ZdGame,
    l: f64,
    p0: f64,
    delta_tau: *mut f64,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    if delta_tau.is_null() {
        return ZdStatus::NullPointer;
    }
    let n = game.table.n();
    let weights = vec![1.0 / (n - 1) as f64; n - 1];
    let relation = match PayoffRelation::new(0.0, l, weights) {
        Ok(rel) => rel,
        Err(_) => return ZdStatus::InvalidArgument,
    };
    match thresholds::equalizer_threshold(&game.table, &relation, p0) {
        Ok(res) if res.feasible => {
            *delta_tau = res.delta_tau;
            ZdStatus::Ok
        }
        Ok(_) => ZdStatus::Infeasible,
        Err(_) => ZdStatus::InvalidArgument,
    }
}

/// Feasible range of the scaling parameter phi at discount factor `delta`
/// and initial cooperation probability `p0`.
///
/// # Safety
/// `game` must be a live handle; `phi_lo` and `phi_hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zd_phi_interval(
    game: *const ZdGame,
    s: f64,
    l: f64,
    weights: *const f64,
    delta: f64,
    p0: f64,
    phi_lo: *mut f64,
    phi_hi: *mut f64,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    if phi_lo.is_null() || phi_hi.is_null() {
        return ZdStatus::NullPointer;
    }
    let relation = match build_relation(&game.table, s, l, weights) {
        Ok(rel) => rel,
        Err(status) => return status,
    };
    let interval = match zd::phi_interval(&game.table, &relation, delta, p0) {
        Ok(interval) => interval,
        Err(_) => return ZdStatus::InvalidArgument,
    };
    *phi_lo = interval.lo;
    *phi_hi = interval.hi;
    if interval.is_empty() {
        ZdStatus::Infeasible
    } else {
        ZdStatus::Ok
    }
}

/// Memory-one ZD strategy realizing the relation. Writes the `2^n`
/// conditional cooperation probabilities into `entries` (indexed by the
/// previous action profile, bit 0 = the key player, bit j = co-player j;
/// a set bit means cooperation). `entries_len` must equal `2^n`.
///
/// # Safety
/// `game` must be a live handle; `entries` must point to `entries_len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn zd_strategy_entries(
    game: *const ZdGame,
    s: f64,
    l: f64,
    weights: *const f64,
    delta: f64,
    p0: f64,
    phi: f64,
    entries: *mut f64,
    entries_len: usize,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    if entries.is_null() {
        return ZdStatus::NullPointer;
    }
    let n = game.table.n();
    if entries_len != 1usize << n {
        return ZdStatus::InvalidArgument;
    }
    let relation = match build_relation(&game.table, s, l, weights) {
        Ok(rel) => rel,
        Err(status) => return status,
    };
    let params = match ZdParameters::new(relation, phi, delta, p0) {
        Ok(params) => params,
        Err(_) => return ZdStatus::InvalidArgument,
    };
    match zd::zd_entries(&game.table, &params) {
        Ok(strategy) => {
            slice::from_raw_parts_mut(entries, entries_len).copy_from_slice(&strategy.p);
            ZdStatus::Ok
        }
        Err(_) => ZdStatus::Infeasible,
    }
}

/// Exact discounted payoffs when every player uses a memory-one strategy.
/// `strategies` holds `n` blocks of `2^n + 1` doubles: the conditional
/// cooperation probabilities followed by the initial one, each in the
/// owner's local indexing (bit 0 = that player). Writes `n` payoffs.
///
/// # Safety
/// `game` must be a live handle; `strategies` must point to
/// `n * (2^n + 1)` readable doubles and `payoffs` to `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn zd_exact_payoffs(
    game: *const ZdGame,
    strategies: *const f64,
    delta: f64,
    payoffs: *mut f64,
) -> ZdStatus {
    let Some(game) = game.as_ref() else {
        return ZdStatus::NullPointer;
    };
    if strategies.is_null() || payoffs.is_null() {
        return ZdStatus::NullPointer;
    }
    let n = game.table.n();
    let block = (1usize << n) + 1;
    let raw = slice::from_raw_parts(strategies, n * block);
    let players: Vec<MemoryOneStrategy> = raw
        .chunks_exact(block)
        .map(|chunk| MemoryOneStrategy {
            p: chunk[..block - 1].to_vec(),
            p0: chunk[block - 1],
        })
        .collect();
    let dist = match engine::exact_distribution(&players, delta) {
        Ok(dist) => dist,
        Err(_) => return ZdStatus::InvalidArgument,
    };
    let result = engine::discounted_payoffs(&dist, &game.table);
    slice::from_raw_parts_mut(payoffs, n).copy_from_slice(&result);
    ZdStatus::Ok
}
