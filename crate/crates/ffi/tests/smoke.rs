//! Exercises the C ABI through the exported symbols, the same way a C
//! caller would.

use zdgames_ffi::*;

#[test]
fn game_lifecycle_and_thresholds() {
    unsafe {
        let game = zd_game_pgg(5, 2.0, 1.0);
        assert!(!game.is_null());
        assert_eq!(zd_game_players(game), 5);
        assert!(zd_game_validate(game) == ZdStatus::Ok);

        let mut lo = f64::NAN;
        let mut hi = f64::NAN;
        let status = zd_is_enforceable(game, 0.5, 0.0, std::ptr::null(), &mut lo, &mut hi);
        assert!(status == ZdStatus::Ok);
        assert!((lo - 0.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);

        let mut tau = f64::NAN;
        assert!(zd_threshold(game, 0.5, 0, &mut tau) == ZdStatus::Ok);
        assert!((tau - 2.0 / 7.0).abs() < 1e-12);

        let mut phi_lo = f64::NAN;
        let mut phi_hi = f64::NAN;
        let status = zd_phi_interval(game, 0.5, 0.0, std::ptr::null(), 0.5, 0.0, &mut phi_lo, &mut phi_hi);
        assert!(status == ZdStatus::Ok);
        assert!(phi_lo <= phi_hi);

        let mut entries = vec![0.0f64; 32];
        let phi = 0.5 * (phi_lo + phi_hi);
        let status = zd_strategy_entries(
            game, 0.5, 0.0, std::ptr::null(), 0.5, 0.0, phi, entries.as_mut_ptr(), entries.len(),
        );
        assert!(status == ZdStatus::Ok);
        assert!(entries.iter().all(|p| (0.0..=1.0).contains(p)));
        assert_eq!(entries[0], 0.0); // extortioner never re-cooperates after mutual defection

        // key strategy vs four unconditional cooperators
        let block = 33;
        let mut strategies = Vec::with_capacity(5 * block);
        strategies.extend_from_slice(&entries);
        strategies.push(0.0); // extortion starts with defection
        for _ in 1..5 {
            strategies.extend(std::iter::repeat(1.0).take(block));
        }
        let mut payoffs = vec![0.0f64; 5];
        let status = zd_exact_payoffs(game, strategies.as_ptr(), 0.5, payoffs.as_mut_ptr());
        assert!(status == ZdStatus::Ok);
        // enforced relation with slope 1/2 and baseline 0
        let coplayer_mean: f64 = payoffs[1..].iter().sum::<f64>() / 4.0;
        assert!((coplayer_mean - 0.5 * payoffs[0]).abs() < 1e-10);

        zd_game_free(game);
    }
}

#[test]
fn error_paths() {
    unsafe {
        assert!(zd_game_pgg(5, 7.0, 1.0).is_null());
        assert!(zd_game_validate(std::ptr::null()) == ZdStatus::NullPointer);

        let game = zd_game_nsd(5, 2.0, 1.0);
        let mut tau = f64::NAN;
        // slope below the extortion bound is infeasible
        assert!(zd_threshold(game, 0.5, 0, &mut tau) == ZdStatus::Infeasible);
        // the generous family has no slope restriction
        assert!(zd_threshold(game, 0.5, 1, &mut tau) == ZdStatus::Ok);
        assert!((tau - 5.0 / 6.0).abs() < 1e-12);

        let mut entries = vec![0.0f64; 7]; // wrong length
        let status = zd_strategy_entries(
            game, 0.5, 0.0, std::ptr::null(), 0.9, 1.0, 0.1, entries.as_mut_ptr(), entries.len(),
        );
        assert!(status == ZdStatus::InvalidArgument);
        zd_game_free(game);

        // a payoff table violating defection dominance
        let a = [1.0, 2.0];
        let b = [0.0, 0.5];
        let game = zd_game_custom(2, a.as_ptr(), b.as_ptr());
        assert!(!game.is_null());
        assert!(zd_game_validate(game) == ZdStatus::NotDilemma);
        zd_game_free(game);
    }
}
