#ifndef PPLE_H
#define PPLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Marks an interaction index that was never reached.
 */
#define PPLE_NEVER UINT64_MAX

typedef enum PpleStatus {
  PPLE_STATUS_OK = 0,
  PPLE_STATUS_NULL_POINTER = 1,
  PPLE_STATUS_INVALID_PARAMS = 2,
  PPLE_STATUS_EXHAUSTED = 3,
  PPLE_STATUS_SAFETY_VIOLATION = 4,
  PPLE_STATUS_OUT_OF_RANGE = 5,
  PPLE_STATUS_PANIC = 6,
} PpleStatus;

typedef enum PpleStop {
  PPLE_STOP_SINGLE_ALIVE = 0,
  PPLE_STOP_SINGLE_ACTIVE = 1,
  PPLE_STOP_RESOLVED = 2,
  PPLE_STOP_FIRST_ROUND = 3,
  PPLE_STOP_EPOCH2_END = 4,
} PpleStop;

/**
 * Opaque simulation handle.
 */
typedef struct PpleSim PpleSim;

typedef struct PpleParams {
  uint32_t n;
  uint16_t gamma;
  uint8_t phi;
  uint8_t psi;
  bool backup_only;
  bool drag_advance_on_noncoin;
  bool seniority_uses_cnt;
  bool drag_advance_any_epoch;
} PpleParams;

typedef struct PpleResult {
  enum PpleStatus outcome;
  uint64_t interactions;
  double parallel_time;
  uint64_t single_active_at;
  uint64_t single_alive_at;
  uint64_t epoch1_end;
  uint64_t epoch2_end;
  uint32_t epoch2_survivors;
} PpleResult;

/**
 * Counts by role (Zero, X, D, Coin, Inhibitor, Leader) and leader mode (A, P, W).
 */
typedef struct PpleCensus {
  uint64_t interactions;
  uint32_t zero;
  uint32_t x;
  uint32_t deactivated;
  uint32_t coins;
  uint32_t inhibitors;
  uint32_t leaders;
  uint32_t active;
  uint32_t passive;
  uint32_t withdrawn;
  bool stabilized;
} PpleCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default parameters for a population of `n` agents.
 */
struct PpleParams pple_params_default(uint32_t n);

/**
 * Create a simulation. On success `*out` receives a handle to release with
 * `pple_sim_free`.
 *
 * # Safety
 * `params` must point to a valid `PpleParams` and `out` to writable storage
 * for one pointer.
 */
enum PpleStatus pple_sim_new(const struct PpleParams *params, uint64_t seed, struct PpleSim **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `sim` must be null or a handle from `pple_sim_new` not yet freed.
 */
void pple_sim_free(struct PpleSim *sim);

/**
 * Perform `count` interactions.
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum PpleStatus pple_sim_step(struct PpleSim *sim, uint64_t count);

/**
 * Run until `stop` holds or `max_interactions` total interactions have been
 * performed (0 means no limit). The return value is the trial outcome;
 * `*out`, if non-null, receives the measurements.
 *
 * # Safety
 * `sim` must be a live handle; `out` must be null or writable.
 */
enum PpleStatus pple_sim_run(struct PpleSim *sim,
                             enum PpleStop stop,
                             uint64_t max_interactions,
                             struct PpleResult *out);

/**
 * Current population counts.
 *
 * # Safety
 * `sim` must be a live handle and `out` writable.
 */
enum PpleStatus pple_sim_census(const struct PpleSim *sim, struct PpleCensus *out);

/**
 * Packed 32-bit state of agent `index`.
 *
 * # Safety
 * `sim` must be a live handle and `out` writable.
 */
enum PpleStatus pple_sim_agent(const struct PpleSim *sim, uint32_t index, uint32_t *out);

/**
 * Expected interactions for the backup rule alone to reduce `k0` alive
 * candidates to one in a population of `n`.
 */
double pple_backup_expected_interactions(uint64_t n, uint64_t k0);

/**
 * Message for the last failure on this thread. Valid until the next failing
 * call on the same thread; never null.
 */
const char *pple_last_error(void);

/**
 * Library version, NUL-terminated and static.
 */
const char *pple_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PPLE_H */
