#ifndef ZDGAMES_H
#define ZDGAMES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible call.
 */
typedef enum ZdStatus {
  ZdStatus_Ok = 0,
  /**
   * A pointer argument was null.
   */
  ZdStatus_NullPointer = 1,
  /**
   * A numeric argument was out of range or a buffer had the wrong size.
   */
  ZdStatus_InvalidArgument = 2,
  /**
   * The payoff table is not a social dilemma.
   */
  ZdStatus_NotDilemma = 3,
  /**
   * The requested relation or threshold is infeasible.
   */
  ZdStatus_Infeasible = 4,
} ZdStatus;

/**
 * Opaque game handle.
 */
typedef struct ZdGame ZdGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Public goods game with multiplication factor `r` and contribution `c`.
 * Returns null on invalid parameters.
 */
struct ZdGame *zd_game_pgg(uintptr_t n, double r, double c);

/**
 * Multiplayer snowdrift game with benefit `b` and total cost `c`.
 * Returns null on invalid parameters.
 */
struct ZdGame *zd_game_nsd(uintptr_t n, double b, double c);

/**
 * Custom symmetric game from cooperator payoffs `a[0..n]` and defector
 * payoffs `b[0..n]`, both indexed by the number of cooperating co-players.
 * Returns null on invalid parameters.
 *
 * # Safety
 * `a` and `b` must point to `n` readable doubles each.
 */
struct ZdGame *zd_game_custom(uintptr_t n, const double *a, const double *b);

/**
 * Releases a game handle. Null is allowed.
 *
 * # Safety
 * `game` must be a handle returned by a constructor, not yet freed.
 */
void zd_game_free(struct ZdGame *game);

/**
 * Number of players in the game.
 *
 * # Safety
 * `game` must be a live handle.
 */
uintptr_t zd_game_players(const struct ZdGame *game);

/**
 * Checks the social-dilemma axioms.
 *
 * # Safety
 * `game` must be a live handle.
 */
enum ZdStatus zd_game_validate(const struct ZdGame *game);

/**
 * Decides whether the relation `pi_coplayers = s * pi_key + (1 - s) * l`
 * is enforceable for some discount factor. Writes the admissible range of
 * baseline payoffs to `l_lower` / `l_upper` (either may be null).
 * `weights` may be null for equal weights, otherwise points to `n - 1`
 * co-player weights.
 *
 * # Safety
 * `game` must be a live handle; non-null out-pointers must be writable.
 */
enum ZdStatus zd_is_enforceable(const struct ZdGame *game,
                                double s,
                                double l,
                                const double *weights,
                                double *l_lower,
                                double *l_upper);

/**
 * Threshold discount factor for extortionate (`generous = 0`) or generous
 * (`generous != 0`) relations with slope `s` and equal weights.
 *
 * # Safety
 * `game` must be a live handle; `delta_tau` must be writable.
 */
enum ZdStatus zd_threshold(const struct ZdGame *game,
                           double s,
                           int32_t generous,
                           double *delta_tau);

/**
 * Threshold discount factor for an equalizer relation (`s = 0`) fixing
 * the co-players' payoff at `l`, entered with initial cooperation
 * probability `p0` strictly between 0 and 1.
 *
 * # Safety
 * `game` must be a live handle; `delta_tau` must be writable.
 */
enum ZdStatus zd_equalizer_threshold(const struct ZdGame *game,
                                     double l,
                                     double p0,
                                     double *delta_tau);

/**
 * Feasible range of the scaling parameter phi at discount factor `delta`
 * and initial cooperation probability `p0`.
 *
 * # Safety
 * `game` must be a live handle; `phi_lo` and `phi_hi` must be writable.
 */
enum ZdStatus zd_phi_interval(const struct ZdGame *game,
                              double s,
                              double l,
                              const double *weights,
                              double delta,
                              double p0,
                              double *phi_lo,
                              double *phi_hi);

/**
 * Memory-one ZD strategy realizing the relation. Writes the `2^n`
 * conditional cooperation probabilities into `entries` (indexed by the
 * previous action profile, bit 0 = the key player, bit j = co-player j;
 * a set bit means cooperation). `entries_len` must equal `2^n`.
 *
 * # Safety
 * `game` must be a live handle; `entries` must point to `entries_len`
 * writable doubles.
 */
enum ZdStatus zd_strategy_entries(const struct ZdGame *game,
                                  double s,
                                  double l,
                                  const double *weights,
                                  double delta,
                                  double p0,
                                  double phi,
                                  double *entries,
                                  uintptr_t entries_len);

/**
 * Exact discounted payoffs when every player uses a memory-one strategy.
 * `strategies` holds `n` blocks of `2^n + 1` doubles: the conditional
 * cooperation probabilities followed by the initial one, each in the
 * owner's local indexing (bit 0 = that player). Writes `n` payoffs.
 *
 * # Safety
 * `game` must be a live handle; `strategies` must point to
 * `n * (2^n + 1)` readable doubles and `payoffs` to `n` writable ones.
 */
enum ZdStatus zd_exact_payoffs(const struct ZdGame *game,
                               const double *strategies,
                               double delta,
                               double *payoffs);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZDGAMES_H */
