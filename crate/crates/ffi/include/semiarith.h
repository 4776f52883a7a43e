#ifndef SEMIARITH_H
#define SEMIARITH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The nonzero values below `SA_NULL_POINTER` match the exit
 * codes of the command-line tool.
 */
typedef enum {
  SA_OK = 0,
  SA_VERIFICATION_FAILED = 1,
  SA_INVALID_INPUT = 2,
  SA_DEGENERATE_TRACES = 3,
  SA_ITERATION_CAP = 4,
  SA_NULL_POINTER = 5,
  SA_BUFFER_TOO_SMALL = 6,
  SA_PANIC = 7,
} SaStatus;

/**
 * Verified data of one family member.
 */
typedef struct SaFamilyRecord SaFamilyRecord;

/**
 * A weighted point set in the upper half-plane.
 */
typedef struct SaPoints SaPoints;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *sa_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *sa_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sa_string_free(char *s);

/**
 * Builds and verifies the family member `n` (1..=30).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
SaStatus sa_family_build(uint32_t n, SaFamilyRecord **out);

/**
 * # Safety
 * `rec` must be null or a handle from [`sa_family_build`] not yet freed.
 */
void sa_family_free(SaFamilyRecord *rec);

/**
 * Numeric fields of a family record. Any out-pointer may be null.
 *
 * # Safety
 * `rec` must be a live handle; non-null out-pointers must be writable.
 */
SaStatus sa_family_values(const SaFamilyRecord *rec,
                          double *tau,
                          double *omega,
                          double *stretch_lb,
                          double *coarea,
                          uint32_t *arithmetic_dimension);

/**
 * Coefficients of the minimal polynomial of `tau`, leading term first.
 * Writes the number of coefficients to `len`; fails with
 * `SaBufferTooSmall` if `capacity` is too small and with `SaInvalidInput`
 * if a coefficient does not fit in 64 bits.
 *
 * # Safety
 * `rec` must be a live handle, `coeffs` writable for `capacity` values.
 */
SaStatus sa_family_tau_min_poly(const SaFamilyRecord *rec,
                                int64_t *coeffs,
                                size_t capacity,
                                size_t *len);

/**
 * The record as JSON; free the result with [`sa_string_free`].
 *
 * # Safety
 * `rec` must be a live handle and `out` writable.
 */
SaStatus sa_family_to_json(const SaFamilyRecord *rec, char **out);

/**
 * Invariants of a trace file given as JSON text, returned as a JSON report.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
SaStatus sa_invariants_json(const char *json, size_t depth, char **out);

/**
 * Creates a point set from `n` coordinates; `weights` may be null for
 * uniform weights.
 *
 * # Safety
 * `xs`, `ys` and a non-null `weights` must be readable for `n` values.
 */
SaStatus sa_points_new(const double *xs,
                       const double *ys,
                       const double *weights,
                       size_t n,
                       SaPoints **out);

/**
 * # Safety
 * `p` must be null or a handle from [`sa_points_new`] not yet freed.
 */
void sa_points_free(SaPoints *p);

/**
 * Center of mass to gradient norm below `tol`. `gradient_norm` may be null.
 *
 * # Safety
 * `points` must be a live handle; out-pointers writable.
 */
SaStatus sa_karcher_mean(const SaPoints *points,
                         double tol,
                         double *x,
                         double *y,
                         double *gradient_norm);

/**
 * House of a monic polynomial given leading coefficient first.
 *
 * # Safety
 * `coeffs` must be readable for `len` values and `out` writable.
 */
SaStatus sa_house(const int64_t *coeffs, size_t len, double tol, double *out);

/**
 * Mahler measure of a monic polynomial to relative tolerance `tol`.
 *
 * # Safety
 * `coeffs` must be readable for `len` values and `out` writable.
 */
SaStatus sa_mahler_measure(const int64_t *coeffs, size_t len, double tol, double *out);

/**
 * Side `y` and diagonal `z` of the trirectangle with side `x` and acute angle `phi`.
 *
 * # Safety
 * `y` and `z` must be writable.
 */
SaStatus sa_trirectangle(double x, double phi, double *y, double *z);

/**
 * Degree bound for the trace field. `margulis_eps` is ignored when
 * `cocompact` is false.
 *
 * # Safety
 * `out` must be writable.
 */
SaStatus sa_degree_bound(double mu,
                         uint32_t r,
                         double stretch,
                         double margulis_eps,
                         bool cocompact,
                         double *out);

/**
 * Yamada radius `arccosh(mu / 2 pi + 1)`.
 *
 * # Safety
 * `out` must be writable.
 */
SaStatus sa_yamada_radius(double mu, double *out);

/**
 * `log M(p) / (r L)` for a polynomial given leading coefficient first.
 *
 * # Safety
 * `coeffs` must be readable for `len` values and `out` writable.
 */
SaStatus sa_systole_bound_pipeline(const int64_t *coeffs,
                                   size_t len,
                                   uint32_t r,
                                   double stretch,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIARITH_H */
