#ifndef MIMZV_H
#define MIMZV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MimzvProduct {
  MIMZV_PRODUCT_STUFFLE = 0,
  MIMZV_PRODUCT_STAR = 1,
  MIMZV_PRODUCT_SHUFFLE = 2,
  MIMZV_PRODUCT_INTERPOLATED = 3,
} MimzvProduct;

typedef enum MimzvStatus {
  MIMZV_STATUS_OK = 0,
  MIMZV_STATUS_NULL_POINTER = 1,
  MIMZV_STATUS_INVALID_UTF8 = 2,
  MIMZV_STATUS_PARSE = 3,
  MIMZV_STATUS_DOMAIN = 4,
  MIMZV_STATUS_PANIC = 5,
} MimzvStatus;

/**
 * Opaque linear combination of words with rational coefficients.
 */
typedef struct MimzvLinComb MimzvLinComb;

/**
 * Opaque assignment of sequences to markers.
 */
typedef struct MimzvTAssignment MimzvTAssignment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *mimzv_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mimzv_string_free(char *s);

/**
 * Parses a word such as `"z2 t z1"` (or `"1"` for the unit) into a
 * combination with coefficient one.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MimzvStatus mimzv_lincomb_parse(const char *text, struct MimzvLinComb **out);

/**
 * # Safety
 * `x` must come from this library and not have been freed. NULL is ignored.
 */
void mimzv_lincomb_free(struct MimzvLinComb *x);

/**
 * Canonical text form, e.g. `"z2 z3 + z3 z2 + z5 - 2*t z5"`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum MimzvStatus mimzv_lincomb_to_string(const struct MimzvLinComb *x, char **out);

/**
 * Number of terms with non-zero coefficient.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum MimzvStatus mimzv_lincomb_len(const struct MimzvLinComb *x, uintptr_t *out);

/**
 * `out = a + scale * b` with `scale` a rational such as `"-3/2"`.
 *
 * # Safety
 * `a`, `b` must be live handles; `scale` a NUL-terminated string; `out`
 * writable.
 */
enum MimzvStatus mimzv_lincomb_add_scaled(const struct MimzvLinComb *a,
                                          const struct MimzvLinComb *b,
                                          const char *scale,
                                          struct MimzvLinComb **out);

/**
 * The interpolation operator `S` for the marker `t`.
 *
 * # Safety
 * `x` must be a live handle; `out` writable.
 */
enum MimzvStatus mimzv_s_operator(const struct MimzvLinComb *x, struct MimzvLinComb **out);

/**
 * Product of two combinations. The interpolated product uses the marker
 * `t` and rejects inputs that already contain it.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
enum MimzvStatus mimzv_product(const struct MimzvLinComb *a,
                               const struct MimzvLinComb *b,
                               enum MimzvProduct kind,
                               struct MimzvLinComb **out);

/**
 * Parses a `[marker=]spec` assignment such as `"const:1/2"` or
 * `"t1=evenodd:1,0"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` writable.
 */
enum MimzvStatus mimzv_tassignment_parse(const char *spec, struct MimzvTAssignment **out);

/**
 * Adds or replaces one marker's sequence in an existing assignment.
 *
 * # Safety
 * `t` must be a live handle; `spec` a NUL-terminated string.
 */
enum MimzvStatus mimzv_tassignment_add(struct MimzvTAssignment *t, const char *spec);

/**
 * # Safety
 * `t` must come from this library and not have been freed. NULL is ignored.
 */
void mimzv_tassignment_free(struct MimzvTAssignment *t);

/**
 * Exact truncated value of a combination (strict chains), as `"p/q"`.
 *
 * # Safety
 * `x`, `t` must be live handles; `out` writable.
 */
enum MimzvStatus mimzv_eval_lincomb(const struct MimzvLinComb *x,
                                    uint64_t n,
                                    const struct MimzvTAssignment *t,
                                    char **out);

/**
 * Exact truncated multi-interpolated value of an index such as `"2,1"`,
 * as `"p/q"`.
 *
 * # Safety
 * `index` must be a NUL-terminated string; `t` a live handle; `out`
 * writable.
 */
enum MimzvStatus mimzv_eval_index_exact(const char *index,
                                        uint64_t n,
                                        const struct MimzvTAssignment *t,
                                        char **out);

/**
 * Non-truncated multi-interpolated value of an admissible index to within
 * `eps`. Writes the value, its tail bound, and the truncation used; the
 * last two may be NULL.
 *
 * # Safety
 * `index` must be a NUL-terminated string; `t` a live handle; `value`
 * writable; `tail_bound`, `n_used` writable or NULL.
 */
enum MimzvStatus mimzv_eval_index_float(const char *index,
                                        const struct MimzvTAssignment *t,
                                        double eps,
                                        double *value,
                                        double *tail_bound,
                                        uint64_t *n_used);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIMZV_H */
