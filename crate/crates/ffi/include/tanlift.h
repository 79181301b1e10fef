#ifndef TANLIFT_H
#define TANLIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Report encoding.
 */
typedef enum TlFormat {
  TL_FORMAT_TEXT = 0,
  TL_FORMAT_JSON = 1,
} TlFormat;

/**
 * Outcome of a call.
 */
typedef enum TlStatus {
  /**
   * Ran and every verdict passed.
   */
  TL_STATUS_OK = 0,
  /**
   * Ran, but at least one verdict failed. The report says which.
   */
  TL_STATUS_FAILED = 1,
  TL_STATUS_SYNTAX = 2,
  TL_STATUS_NAME = 3,
  TL_STATUS_TYPE = 4,
  TL_STATUS_DOMAIN = 5,
  TL_STATUS_JACOBI = 6,
  TL_STATUS_NON_SINGULAR_POINT = 7,
  TL_STATUS_INTERNAL = 8,
  TL_STATUS_NULL_ARGUMENT = 9,
  TL_STATUS_INVALID_UTF8 = 10,
  TL_STATUS_PANIC = 11,
} TlStatus;

/**
 * Opaque interpreter session; declarations persist across evaluations.
 */
typedef struct TlSession TlSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session with default sampling settings and the given seed.
 */
struct TlSession *tl_session_new(uint64_t seed);

/**
 * Creates a session; zero for `trials`, `dim` or `degree` keeps the default.
 */
struct TlSession *tl_session_new_with(uint64_t seed, size_t trials, size_t dim, uint32_t degree);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must come from `tl_session_new*` and not be freed twice.
 */
void tl_session_free(struct TlSession *session);

/**
 * Runs script text in a session. `*report` receives the report (partial on
 * error), or null when nothing ran; release it with `tl_string_free`.
 *
 * # Safety
 * `session` must be live, `source` a NUL-terminated string, and `report`
 * null or writable.
 */
enum TlStatus tl_session_eval(struct TlSession *session,
                              const char *source,
                              enum TlFormat format,
                              char **report);

/**
 * Runs a verification suite, or `all`, with the same output as `tanlift verify`.
 *
 * # Safety
 * `suite` must be a NUL-terminated string and `report` null or writable.
 */
enum TlStatus tl_verify(const char *suite,
                        uint64_t seed,
                        size_t trials,
                        enum TlFormat format,
                        char **report);

/**
 * Message for the last error on this thread; empty after a successful call.
 * The pointer stays valid until the next call on the same thread.
 */
const char *tl_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void tl_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *tl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANLIFT_H */
