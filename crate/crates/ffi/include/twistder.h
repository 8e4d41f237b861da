#ifndef TWISTDER_H
#define TWISTDER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TwdStatus {
  /**
   * Success; for reports, every check passed.
   */
  TWD_STATUS_OK = 0,
  /**
   * A report was produced but some check failed.
   */
  TWD_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed input or an input the operation cannot accept.
   */
  TWD_STATUS_INPUT_ERROR = 2,
  TWD_STATUS_NULL_POINTER = 3,
  TWD_STATUS_INVALID_UTF8 = 4,
  /**
   * An internal panic was caught.
   */
  TWD_STATUS_PANIC = 5,
} TwdStatus;

/**
 * Opaque parsed problem file.
 */
typedef struct TwdProblem TwdProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a problem file. On success `*out` receives a handle to free with
 * [`twd_problem_free`].
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is a valid pointer.
 */
enum TwdStatus twd_problem_from_str(const char *text, struct TwdProblem **out);

/**
 * # Safety
 * `p` is null or a handle from [`twd_problem_from_str`] not yet freed.
 */
void twd_problem_free(struct TwdProblem *p);

/**
 * Runs `lie`, `validate`, `twist`, `extend` or `crosscheck` and writes the
 * report text to `*report`.
 *
 * # Safety
 * `p` is a live handle; `command` a nul-terminated string; `report` valid.
 */
enum TwdStatus twd_problem_run(const struct TwdProblem *p, const char *command, char **report);

/**
 * Runs a built-in demo.
 *
 * # Safety
 * `name` is a nul-terminated string; `report` is valid.
 */
enum TwdStatus twd_demo(const char *name, char **report);

/**
 * Runs `n` seeded random conjugation cocycles.
 *
 * # Safety
 * `report` is a valid pointer.
 */
enum TwdStatus twd_fuzz(size_t n, uint64_t seed, char **report);

/**
 * Dimension of the Lie algebra of derivations of the `[algebra]` section.
 *
 * # Safety
 * `p` is a live handle; `out` is valid.
 */
enum TwdStatus twd_lie_dimension(const struct TwdProblem *p, size_t *out);

/**
 * Dimension of the space of derivations of the twisted form extending
 * `d/dt`; `-1` when the space is empty.
 *
 * # Safety
 * `p` is a live handle; `out` is valid.
 */
enum TwdStatus twd_extension_dimension(const struct TwdProblem *p, int64_t *out);

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call into this library from the same thread.
 */
const char *twd_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void twd_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *twd_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTDER_H */
