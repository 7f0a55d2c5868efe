#ifndef SCHROEDER_LAB_H
#define SCHROEDER_LAB_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlEngine {
  SL_ENGINE_EXACT = 0,
  SL_ENGINE_FASTMOD = 1,
} SlEngine;

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_ARGUMENT = 2,
  SL_STATUS_DOMAIN = 3,
  SL_STATUS_PRECONDITION = 4,
  SL_STATUS_UNSUPPORTED = 5,
  SL_STATUS_RESOURCE = 6,
  SL_STATUS_INTERNAL = 7,
} SlStatus;

/**
 * Opaque exact integer.
 */
typedef struct SlInteger SlInteger;

/**
 * Opaque list of check results with summary counts.
 */
typedef struct SlReport SlReport;

/**
 * Inclusive range; ignored when `present` is false.
 */
typedef struct SlRange {
  bool present;
  uint64_t lo;
  uint64_t hi;
} SlRange;

/**
 * Scan parameters. `primes` may be null when `primes_len` is 0.
 */
typedef struct SlScanParams {
  struct SlRange n;
  struct SlRange alpha;
  struct SlRange k;
  const uint64_t *primes;
  size_t primes_len;
  enum SlEngine engine;
  uint32_t jobs;
} SlScanParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *sl_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *sl_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sl_string_free(char *s);

/**
 * Exact Schröder number `S_n`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SlStatus sl_schroeder(uint64_t n, struct SlInteger **out);

/**
 * Little Schröder number `s_n = S_n / 2` (`n >= 1`).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SlStatus sl_little_schroeder(uint64_t n, struct SlInteger **out);

/**
 * Catalan number `C_k`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SlStatus sl_catalan(uint64_t k, struct SlInteger **out);

/**
 * Narayana number `N(n, k)`, zero outside `1 <= k <= n`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SlStatus sl_narayana(uint64_t n, uint64_t k, struct SlInteger **out);

/**
 * Euler number `E_n` of `2 / (e^x + e^-x)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SlStatus sl_euler(uint64_t n, struct SlInteger **out);

/**
 * Decimal representation; caller frees with [`sl_string_free`]. Null on a null handle.
 *
 * # Safety
 * `h` must be null or a live handle from this library.
 */
char *sl_integer_to_string(const struct SlInteger *h);

/**
 * # Safety
 * `h` must be null or a live handle from this library.
 */
void sl_integer_free(struct SlInteger *h);

/**
 * `S_n mod 2^m` for `1 <= m <= 64` on the word kernel.
 *
 * # Safety
 * `out` must be a valid pointer to a writable `u64`.
 */
enum SlStatus sl_schroeder_mod_2m(uint64_t n, uint32_t m, uint64_t *out);

/**
 * Run one named check (same names as the CLI). Parameters a check does not
 * use are ignored; for `equivalence-iff`, `n` is the upper index bound and
 * for `c2alpha`, `k` is the lower binomial index.
 *
 * # Safety
 * `check` must be a nul-terminated string; `out` must be writable.
 */
enum SlStatus sl_verify(const char *check,
                        uint64_t n,
                        uint64_t alpha,
                        uint64_t k,
                        uint64_t p,
                        struct SlReport **out);

/**
 * Scan a named check over parameter ranges.
 *
 * # Safety
 * `check` must be a nul-terminated string, `params` must point to a valid
 * `SlScanParams` whose `primes` holds `primes_len` values, `out` must be writable.
 */
enum SlStatus sl_scan(const char *check, const struct SlScanParams *params, struct SlReport **out);

/**
 * # Safety
 * `h` must be null or a live report handle.
 */
size_t sl_report_total(const struct SlReport *h);

/**
 * # Safety
 * `h` must be null or a live report handle.
 */
size_t sl_report_passed(const struct SlReport *h);

/**
 * # Safety
 * `h` must be null or a live report handle.
 */
size_t sl_report_failed(const struct SlReport *h);

/**
 * 1 if result `i` passed, 0 if it failed, -1 if `i` is out of range or `h` is null.
 *
 * # Safety
 * `h` must be null or a live report handle.
 */
int32_t sl_report_result_pass(const struct SlReport *h, size_t i);

/**
 * One JSON object per result, newline separated. Caller frees the string.
 *
 * # Safety
 * `h` must be null or a live report handle.
 */
char *sl_report_to_jsonl(const struct SlReport *h);

/**
 * CSV with the shared header. Caller frees the string.
 *
 * # Safety
 * `h` must be null or a live report handle.
 */
char *sl_report_to_csv(const struct SlReport *h);

/**
 * # Safety
 * `h` must be null or a live report handle.
 */
void sl_report_free(struct SlReport *h);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SCHROEDER_LAB_H */
