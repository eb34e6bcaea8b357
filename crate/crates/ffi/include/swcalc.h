#ifndef SWCALC_H
#define SWCALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwcGeography {
  SWC_GEOGRAPHY_NOT_IN_RANGE = 0,
  SWC_GEOGRAPHY_EXCEPTION_A = 1,
  SWC_GEOGRAPHY_EXCEPTION_B = 2,
  SWC_GEOGRAPHY_EXCLUDED = 3,
} SwcGeography;

typedef enum SwcHomeo {
  SWC_HOMEO_HOMEOMORPHIC = 0,
  SWC_HOMEO_DISTINCT = 1,
  SWC_HOMEO_UNDECIDABLE = 2,
} SwcHomeo;

/**
 * Result codes of every fallible call.
 */
typedef enum SwcStatus {
  SWC_STATUS_OK = 0,
  SWC_STATUS_NULL_POINTER = 1,
  SWC_STATUS_INVALID_UTF8 = 2,
  SWC_STATUS_PARSE_ERROR = 3,
  SWC_STATUS_EVAL_ERROR = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  SWC_STATUS_INTERNAL = 5,
} SwcStatus;

typedef enum SwcTaubes {
  SWC_TAUBES_CONSISTENT = 0,
  SWC_TAUBES_OBSTRUCTED = 1,
  SWC_TAUBES_INAPPLICABLE = 2,
} SwcTaubes;

/**
 * Opaque manifold record.
 */
typedef struct SwcManifold SwcManifold;

/**
 * Characteristic numbers; a `has_*` flag is false when that value is unknown.
 */
typedef struct SwcChars {
  int64_t e;
  int64_t sign;
  int64_t c1_squared;
  int64_t chi;
  bool has_chi;
  int64_t b1;
  bool has_b1;
  int64_t b2_plus;
  int64_t b2_minus;
  bool has_b2;
} SwcChars;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Evaluate a manifold expression (JSON text with a top-level `"op"`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SwcStatus swc_manifold_from_expr_json(const char *json, struct SwcManifold **out);

/**
 * Load a manifold record as emitted by `swc_manifold_to_json`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SwcStatus swc_manifold_from_record_json(const char *json, struct SwcManifold **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void swc_manifold_free(struct SwcManifold *m);

/**
 * Canonical JSON form of the record.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum SwcStatus swc_manifold_to_json(const struct SwcManifold *m, char **out);

/**
 * Human-readable Seiberg-Witten invariant.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum SwcStatus swc_manifold_sw_text(const struct SwcManifold *m, char **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum SwcStatus swc_manifold_chars(const struct SwcManifold *m, struct SwcChars *out);

/**
 * # Safety
 * `a` and `b` must be live handles; `verdict` must be writable; `note`
 * may be null, otherwise it receives an explanation string.
 */
enum SwcStatus swc_homeo_compare(const struct SwcManifold *a,
                                 const struct SwcManifold *b,
                                 enum SwcHomeo *verdict,
                                 char **note);

/**
 * # Safety
 * `m` must be a live handle; `verdict` must be writable; `reason` may be null.
 */
enum SwcStatus swc_taubes_check(const struct SwcManifold *m,
                                enum SwcTaubes *verdict,
                                char **reason);

/**
 * Whether `Z(m,g)` has the numbers of no simply connected spin complex surface.
 */
bool swc_zmg_restricted(int64_t m, int64_t g);

enum SwcGeography swc_ppx_check(int64_t chi, int64_t c1_squared, bool spin);

/**
 * Enumerate basic-class candidates. `scenario` is either a builtin name such
 * as `Y2g(3)` or a scenario JSON object.
 *
 * # Safety
 * `scenario` must be a NUL-terminated string; `out` must be writable.
 */
enum SwcStatus swc_basic_classes_json(const char *scenario, char **out);

/**
 * Geography table over inclusive ranges, as JSON rows.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwcStatus swc_geography_scan_json(int64_t m_lo,
                                       int64_t m_hi,
                                       int64_t g_lo,
                                       int64_t g_hi,
                                       char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void swc_string_free(char *s);

/**
 * Message of the last failed call on this thread (empty after a success).
 * The pointer stays valid until the next call on this thread.
 */
const char *swc_last_error(void);

const char *swc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWCALC_H */
