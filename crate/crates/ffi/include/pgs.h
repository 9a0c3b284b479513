#ifndef PGS_H
#define PGS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `PGS_STATUS_OK` is zero.
 */
typedef enum PgsStatus {
  PGS_STATUS_OK = 0,
  PGS_STATUS_NULL_POINTER = 1,
  PGS_STATUS_INVALID_ALPHABET = 2,
  PGS_STATUS_UNKNOWN_SYMBOL = 3,
  PGS_STATUS_EMPTY_PATTERN = 4,
  PGS_STATUS_PARTITION_MISMATCH = 5,
  PGS_STATUS_BUFFER_TOO_SMALL = 6,
  PGS_STATUS_INTERNAL = 7,
} PgsStatus;

/**
 * A constant/parameter partition of the symbol codes.
 */
typedef struct PgsAlphabet PgsAlphabet;

/**
 * A preprocessed pattern, reusable across texts and threads.
 */
typedef struct PgsMatcher PgsMatcher;

/**
 * Called once per match with its offset, in ascending order.
 */
typedef void (*PgsMatchCallback)(size_t position, void *user_data);

/**
 * Work counters of one search, preprocessing included.
 */
typedef struct PgsMetrics {
  uint64_t match_calls;
  uint64_t loop_iterations;
  uint64_t count_decrements;
  uint64_t peak_aux_words;
} PgsMetrics;

/**
 * One prefix period and its reach.
 */
typedef struct PgsPeriod {
  size_t period;
  size_t reach;
} PgsPeriod;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *pgs_last_error(void);

/**
 * Static description of a status code.
 */
const char *pgs_status_str(enum PgsStatus status);

/**
 * Creates an alphabet from explicit constant and parameter codes.
 *
 * # Safety
 * `constants` and `params` must point to `n_constants` and `n_params`
 * readable codes (or be null with a zero count). `out` must be writable.
 */
enum PgsStatus pgs_alphabet_new(const uint32_t *constants,
                                size_t n_constants,
                                const uint32_t *params,
                                size_t n_params,
                                struct PgsAlphabet **out);

/**
 * Creates a byte alphabet: the given bytes are parameters, the other 256
 * minus `n_params` bytes are constants.
 *
 * # Safety
 * `params` must point to `n_params` readable bytes (or be null with a zero
 * count). `out` must be writable.
 */
enum PgsStatus pgs_alphabet_new_bytes(const uint8_t *params,
                                      size_t n_params,
                                      struct PgsAlphabet **out);

/**
 * Number of parameter symbols in the alphabet, or 0 for null.
 *
 * # Safety
 * `alphabet` must be null or a live handle.
 */
size_t pgs_alphabet_param_count(const struct PgsAlphabet *alphabet);

/**
 * # Safety
 * `alphabet` must be null or a handle from `pgs_alphabet_new*` not yet freed.
 */
void pgs_alphabet_free(struct PgsAlphabet *alphabet);

/**
 * Preprocesses a pattern. The matcher keeps its own reference to the
 * alphabet, which may be freed afterwards.
 *
 * # Safety
 * `alphabet` must be a live handle, `pattern` must point to `len` codes and
 * `out` must be writable.
 */
enum PgsStatus pgs_matcher_new(const struct PgsAlphabet *alphabet,
                               const uint32_t *pattern,
                               size_t len,
                               struct PgsMatcher **out);

/**
 * # Safety
 * As [`pgs_matcher_new`], with `pattern` pointing to `len` bytes.
 */
enum PgsStatus pgs_matcher_new_bytes(const struct PgsAlphabet *alphabet,
                                     const uint8_t *pattern,
                                     size_t len,
                                     struct PgsMatcher **out);

/**
 * Reports every offset where the pattern p-matches `text` through
 * `callback`, which may be null. `metrics` may be null.
 *
 * # Safety
 * `matcher` must be a live handle and `text` must point to `len` codes.
 * `callback` must not unwind.
 */
enum PgsStatus pgs_matcher_find(const struct PgsMatcher *matcher,
                                const uint32_t *text,
                                size_t len,
                                PgsMatchCallback callback,
                                void *user_data,
                                struct PgsMetrics *metrics);

/**
 * # Safety
 * As [`pgs_matcher_find`], with `text` pointing to `len` bytes.
 */
enum PgsStatus pgs_matcher_find_bytes(const struct PgsMatcher *matcher,
                                      const uint8_t *text,
                                      size_t len,
                                      PgsMatchCallback callback,
                                      void *user_data,
                                      struct PgsMetrics *metrics);

/**
 * Copies the prefix-period table into `out`. `*len` receives the table
 * length; if it exceeds `capacity`, nothing is copied and
 * `PGS_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `matcher` must be a live handle, `out` must have room for `capacity`
 * entries (or be null with zero capacity) and `len` must be writable.
 */
enum PgsStatus pgs_matcher_prefix_periods(const struct PgsMatcher *matcher,
                                          struct PgsPeriod *out,
                                          size_t capacity,
                                          size_t *len);

/**
 * # Safety
 * `matcher` must be null or a handle from `pgs_matcher_new*` not yet freed.
 */
void pgs_matcher_free(struct PgsMatcher *matcher);

/**
 * Sets `*result` to whether `x` and `y` p-match under `alphabet`.
 *
 * # Safety
 * `alphabet` must be a live handle, `x` and `y` must point to `x_len` and
 * `y_len` codes and `result` must be writable.
 */
enum PgsStatus pgs_pmatch(const struct PgsAlphabet *alphabet,
                          const uint32_t *x,
                          size_t x_len,
                          const uint32_t *y,
                          size_t y_len,
                          bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PGS_H */
