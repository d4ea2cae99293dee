#ifndef GOODRED_H
#define GOODRED_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GoodredStatus {
  GOODRED_STATUS_OK = 0,
  GOODRED_STATUS_NULL_POINTER = 1,
  GOODRED_STATUS_PARSE = 2,
  GOODRED_STATUS_INVALID_ARGUMENT = 3,
  GOODRED_STATUS_BUDGET = 4,
  GOODRED_STATUS_INTERNAL = 5,
  GOODRED_STATUS_UTF8 = 6,
} GoodredStatus;

/**
 * A normalized rational map. Opaque to C.
 */
typedef struct GoodredMap GoodredMap;

/**
 * Verdicts at one prime.
 */
typedef struct GoodredReport {
  bool sgr;
  bool cgr;
  bool separable;
  bool nonconstant;
  bool branch_nonsingular;
  bool ram_nonsingular;
  bool theorem1_consistent;
  uint32_t degree;
  uint32_t reduced_degree;
} GoodredReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *goodred_last_error(void);

/**
 * Parses a map such as `"(x^2+x)/(x+2)"`. On success `*out` owns a new
 * handle to release with `goodred_map_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GoodredStatus goodred_map_parse(const char *text, struct GoodredMap **out);

/**
 * # Safety
 * `map` must be NULL or a handle from this library not yet freed.
 */
void goodred_map_free(struct GoodredMap *map);

/**
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum GoodredStatus goodred_map_degree(const struct GoodredMap *map, uint32_t *out);

/**
 * The map in the syntax `goodred_map_parse` accepts, or NULL.
 *
 * # Safety
 * `map` must be NULL or a live handle.
 */
char *goodred_map_to_string(const struct GoodredMap *map);

/**
 * `*out = outer ∘ inner`, a new handle.
 *
 * # Safety
 * `outer` and `inner` must be live handles and `out` a valid pointer.
 */
enum GoodredStatus goodred_map_compose(const struct GoodredMap *outer,
                                       const struct GoodredMap *inner,
                                       struct GoodredMap **out);

/**
 * Verdicts at the prime `p`.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum GoodredStatus goodred_analyze(const struct GoodredMap *map,
                                   uint64_t p,
                                   struct GoodredReport *out);

/**
 * JSON object with `sgr_bad`, `cgr_bad` and `inseparable` prime lists.
 * Returns `Budget` if factorization ran out, with the partial lists still
 * written to `*out`.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum GoodredStatus goodred_bad_primes_json(const struct GoodredMap *map, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void goodred_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GOODRED_H */
