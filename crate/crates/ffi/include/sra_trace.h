#ifndef SRA_TRACE_H
#define SRA_TRACE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four coincide with the CLI exit codes.
 */
typedef enum SraStatus {
  SRA_STATUS_OK = 0,
  SRA_STATUS_MISMATCH = 1,
  SRA_STATUS_USAGE = 2,
  SRA_STATUS_RESOURCE = 3,
  SRA_STATUS_NULL_POINTER = 4,
  /**
   * A panic was caught at the boundary.
   */
  SRA_STATUS_INTERNAL = 5,
} SraStatus;

/**
 * Degenerate family selector for [`sra_trace_new_family`].
 */
typedef enum SraFamily {
  /**
   * tr_z, κ = +1
   */
  SRA_FAMILY_TRACE = 0,
  /**
   * str_z, κ = -1
   */
  SRA_FAMILY_SUPERTRACE = 1,
  /**
   * str_{1/2}, κ = -1
   */
  SRA_FAMILY_SUPERTRACE_HALF = 2,
} SraFamily;

/**
 * Result of a κ-coincidence computation.
 */
typedef struct SraCertificate SraCertificate;

/**
 * A κ-trace fixed by its values on the group algebra.
 */
typedef struct SraTrace SraTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until
 * the next call into the library from the same thread.
 */
const char *sra_last_error(void);

/**
 * Library version as a static string.
 */
const char *sra_version(void);

/**
 * Frees a string returned through an out-parameter. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string produced by this library and not yet freed.
 */
void sra_string_free(char *s);

/**
 * κ-trace at ν (`"p/q"`) with free values `params` (`n_params` strings,
 * S_1..S_m for κ = 1 and S_0..S_m for κ = -1).
 *
 * # Safety
 * `nu` is a valid string, `params` points to `n_params` valid strings,
 * `out` is writable.
 */
enum SraStatus sra_trace_new(uint32_t n,
                             const char *nu,
                             int32_t kappa,
                             const char *const *params,
                             size_t n_params,
                             struct SraTrace **out);

/**
 * Degenerate family member at integer `z`; `tau` may be NULL for τ = 1.
 *
 * # Safety
 * `tau` is NULL or a valid string, `out` is writable.
 */
enum SraStatus sra_trace_new_family(uint32_t n,
                                    enum SraFamily family,
                                    int64_t z,
                                    const char *tau,
                                    struct SraTrace **out);

/**
 * # Safety
 * `t` is NULL or a handle from this library, not yet freed.
 */
void sra_trace_free(struct SraTrace *t);

/**
 * κ of the trace (1 or -1), 0 for NULL.
 *
 * # Safety
 * `t` is NULL or a live handle.
 */
int32_t sra_trace_kappa(const struct SraTrace *t);

/**
 * Group-algebra values as JSON.
 *
 * # Safety
 * `t` is a live handle, `out_json` is writable.
 */
enum SraStatus sra_trace_values_json(const struct SraTrace *t, char **out_json);

/**
 * Exact value sp(expr) as JSON `{"order": 4n, "coeffs": [...]}`.
 * `degree` is the cutoff of the solved trace space, 0 for automatic.
 *
 * # Safety
 * `t` is a live handle, `expr` a valid string, `out_json` writable.
 */
enum SraStatus sra_trace_eval(const struct SraTrace *t,
                              const char *expr,
                              uint32_t degree,
                              char **out_json);

/**
 * Moment table sp(𝔰^s Q_p), s ≤ `s_max`, as JSON.
 *
 * # Safety
 * `t` is a live handle, `out_json` writable.
 */
enum SraStatus sra_trace_moments(const struct SraTrace *t,
                                 uint32_t s_max,
                                 uint32_t brute_degree,
                                 char **out_json);

/**
 * Classification of ν for dihedral order n, as JSON.
 *
 * # Safety
 * `nu` is a valid string, `out_json` writable.
 */
enum SraStatus sra_classify(uint32_t n, const char *nu, char **out_json);

/**
 * Compares the annihilators of tr_z and str_z. `j_max` 0 selects the
 * default truncation, `tau` NULL selects τ = 1.
 *
 * # Safety
 * `tau` is NULL or a valid string, `out` writable.
 */
enum SraStatus sra_coincide(uint32_t n,
                            int64_t z,
                            uint32_t j_max,
                            const char *tau,
                            uint32_t brute_degree,
                            struct SraCertificate **out);

/**
 * 1 if the verdict is "equal", 0 if "differ", -1 for NULL.
 *
 * # Safety
 * `c` is NULL or a live handle.
 */
int32_t sra_certificate_equal(const struct SraCertificate *c);

/**
 * 1 if the verdict and every auxiliary check hold, 0 otherwise, -1 for NULL.
 *
 * # Safety
 * `c` is NULL or a live handle.
 */
int32_t sra_certificate_verified(const struct SraCertificate *c);

/**
 * # Safety
 * `c` is a live handle, `out_json` writable.
 */
enum SraStatus sra_certificate_json(const struct SraCertificate *c, char **out_json);

/**
 * # Safety
 * `c` is NULL or a handle from this library, not yet freed.
 */
void sra_certificate_free(struct SraCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SRA_TRACE_H */
