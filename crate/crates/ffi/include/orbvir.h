#ifndef ORBVIR_H
#define ORBVIR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define ORBVIR_CASE_CURVE 0

#define ORBVIR_CASE_SURFACE 1

typedef enum OrbvirStatus {
  ORBVIR_STATUS_OK = 0,
  ORBVIR_STATUS_NULL_POINTER = 1,
  ORBVIR_STATUS_INVALID_UTF8 = 2,
  ORBVIR_STATUS_PARSE = 3,
  ORBVIR_STATUS_RANGE = 4,
  ORBVIR_STATUS_NOT_ADMISSIBLE = 5,
  ORBVIR_STATUS_INCONSISTENT = 6,
  ORBVIR_STATUS_UNSUPPORTED = 7,
  ORBVIR_STATUS_SHAPE = 8,
  ORBVIR_STATUS_EMPTY_MODULI = 9,
  ORBVIR_STATUS_SINGULAR = 10,
  ORBVIR_STATUS_DEGENERATE = 11,
  ORBVIR_STATUS_INTERNAL = 12,
  ORBVIR_STATUS_INVALID_ARGUMENT = 13,
  ORBVIR_STATUS_PANIC = 14,
} OrbvirStatus;

/**
 * Opaque monodromy profile.
 */
typedef struct OrbvirProfile OrbvirProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *orbvir_last_error(void);

/**
 * Library version as a static string.
 */
const char *orbvir_version(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void orbvir_string_free(char *s);

/**
 * Parses a profile such as `"N=3;n=3,0"`.
 *
 * # Safety
 * `literal` is a NUL-terminated string and `out` is writable.
 */
enum OrbvirStatus orbvir_profile_parse(const char *literal, struct OrbvirProfile **out);

/**
 * Builds a profile of order `n` from `len` sector counts.
 *
 * # Safety
 * `counts` is valid for `len` reads and `out` is writable.
 */
enum OrbvirStatus orbvir_profile_new(uint32_t n,
                                     const uint32_t *counts,
                                     size_t len,
                                     struct OrbvirProfile **out);

/**
 * # Safety
 * `p` is null or came from this library and was not yet freed.
 */
void orbvir_profile_free(struct OrbvirProfile *p);

/**
 * Number of stacky points.
 *
 * # Safety
 * `p` is a live profile and `out` is writable.
 */
enum OrbvirStatus orbvir_profile_points(const struct OrbvirProfile *p, size_t *out);

/**
 * Genus of the cyclic cover.
 *
 * # Safety
 * `p` is a live profile and `out` is writable.
 */
enum OrbvirStatus orbvir_profile_genus(const struct OrbvirProfile *p, uint64_t *out);

/**
 * Eigenbundle ranks `r_1..r_{N-1}`. Writes at most `cap` values and the
 * full count to `len`; a short buffer yields `Shape`.
 *
 * # Safety
 * `p` is a live profile, `out` is valid for `cap` writes, `len` is writable.
 */
enum OrbvirStatus orbvir_profile_ranks(const struct OrbvirProfile *p,
                                       int64_t *out,
                                       size_t cap,
                                       size_t *len);

/**
 * Evaluates an invariant given the distinguished values `gamma`
 * (comma-separated rationals). The result is a rational such as `"1/3"`.
 *
 * # Safety
 * Arrays valid for their lengths, `gamma` NUL-terminated, `out` writable.
 */
enum OrbvirStatus orbvir_invariant(const struct OrbvirProfile *p,
                                   uint32_t case_,
                                   const uint32_t *k,
                                   size_t k_len,
                                   const uint32_t *l,
                                   size_t l_len,
                                   const char *gamma,
                                   char **out);

/**
 * The invariant as a linear form in `c_1..c_S`, e.g. `"384*c1 + 128*c2"`.
 *
 * # Safety
 * Arrays valid for their lengths, `out` writable.
 */
enum OrbvirStatus orbvir_invariant_form(const struct OrbvirProfile *p,
                                        uint32_t case_,
                                        const uint32_t *k,
                                        size_t k_len,
                                        const uint32_t *l,
                                        size_t l_len,
                                        char **out);

/**
 * Solves for `c`; the result is comma-separated.
 *
 * # Safety
 * `p` is live, `gamma` NUL-terminated, `out` writable.
 */
enum OrbvirStatus orbvir_solve_c(const struct OrbvirProfile *p,
                                 uint32_t case_,
                                 const char *gamma,
                                 char **out);

/**
 * `str(μ²)` for `ℙ(a,b)` and the Euler/Chern side, each as a rational.
 *
 * # Safety
 * `lhs` and `rhs` are writable.
 */
enum OrbvirStatus orbvir_stringy(uint32_t a, uint32_t b, char **lhs, char **rhs);

/**
 * Checks that a model literal such as `"P(1,1,N=3)"` parses; writes its
 * dimension.
 *
 * # Safety
 * `literal` NUL-terminated, `dim` writable.
 */
enum OrbvirStatus orbvir_model_dimension(const char *literal, uint32_t *dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBVIR_H */
