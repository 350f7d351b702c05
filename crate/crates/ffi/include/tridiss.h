#ifndef TRIDISS_H
#define TRIDISS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TridissStatus {
  TRIDISS_STATUS_OK = 0,
  TRIDISS_STATUS_NULL_ARGUMENT = 1,
  TRIDISS_STATUS_INVALID_UTF8 = 2,
  TRIDISS_STATUS_PARSE = 3,
  TRIDISS_STATUS_INVALID = 4,
  TRIDISS_STATUS_SOLVE = 5,
  TRIDISS_STATUS_OUT_OF_RANGE = 6,
  TRIDISS_STATUS_PANIC = 7,
} TridissStatus;

/**
 * A validated latin bitrade.
 */
typedef struct TridissBitrade TridissBitrade;

/**
 * A dissection at its minimal integer scale.
 */
typedef struct TridissDissection TridissDissection;

/**
 * The result of an enumeration run.
 */
typedef struct TridissStore TridissStore;

typedef struct TridissTriangle {
  /**
   * 0 for an up-triangle, 1 for a down-triangle.
   */
  uint8_t orientation;
  int64_t x;
  int64_t y;
  int64_t side;
} TridissTriangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread; empty after success.
 * The pointer stays valid until the next call on this thread.
 */
const char *tridiss_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void tridiss_string_free(char *s);

/**
 * Parses one bitrade in either text layout.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum TridissStatus tridiss_bitrade_parse(const char *text, struct TridissBitrade **out);

/**
 * Converts graph `index` of a planar_code stream into a bitrade.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes and `out` be writable.
 */
enum TridissStatus tridiss_bitrade_from_planar_code(const uint8_t *bytes,
                                                    size_t len,
                                                    size_t index,
                                                    struct TridissBitrade **out);

/**
 * # Safety
 * `b` must be null or a handle from this library, not yet freed.
 */
void tridiss_bitrade_free(struct TridissBitrade *b);

/**
 * Number of triples in each half.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_bitrade_size(const struct TridissBitrade *b, size_t *out);

/**
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_bitrade_genus(const struct TridissBitrade *b, size_t *out);

/**
 * Writes triple `index` of T* (in sorted order) as row, column, symbol.
 *
 * # Safety
 * `b` must be a live handle and `out` point to three writable `u32`.
 */
enum TridissStatus tridiss_bitrade_star_triple(const struct TridissBitrade *b,
                                               size_t index,
                                               uint32_t *out);

/**
 * A new handle for `swap(b)`.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_bitrade_swap(const struct TridissBitrade *b,
                                        struct TridissBitrade **out);

/**
 * Solves the bitrade anchored at `(row, col, sym)`.
 *
 * # Safety
 * `b` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_dissection_solve(const struct TridissBitrade *b,
                                            uint32_t row,
                                            uint32_t col,
                                            uint32_t sym,
                                            struct TridissDissection **out);

/**
 * Decodes and validates a signature.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum TridissStatus tridiss_dissection_from_signature(const char *text,
                                                     struct TridissDissection **out);

/**
 * # Safety
 * `d` must be null or a handle from this library, not yet freed.
 */
void tridiss_dissection_free(struct TridissDissection *d);

/**
 * Triangle count, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t tridiss_dissection_size(const struct TridissDissection *d);

/**
 * Side of the outer triangle in grid units, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
int64_t tridiss_dissection_scale(const struct TridissDissection *d);

/**
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_dissection_triangle(const struct TridissDissection *d,
                                               size_t index,
                                               struct TridissTriangle *out);

/**
 * Writes the automorphism order, and 0 or 1 for the separated and
 * perfect flags. Any output pointer may be null.
 *
 * # Safety
 * `d` must be a live handle; non-null outputs must be writable.
 */
enum TridissStatus tridiss_dissection_classify(const struct TridissDissection *d,
                                               size_t *automorphisms,
                                               uint8_t *separated,
                                               uint8_t *perfect);

/**
 * The canonical signature, to be freed with [`tridiss_string_free`].
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_dissection_signature(const struct TridissDissection *d, char **out);

/**
 * An SVG (`tikz == 0`) or TikZ figure, to be freed with
 * [`tridiss_string_free`].
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum TridissStatus tridiss_dissection_render(const struct TridissDissection *d,
                                             uint8_t tikz,
                                             char **out);

/**
 * Enumerates every dissection of size at most `max_size` from the
 * internal triangulation generator.
 *
 * # Safety
 * `out` must be writable.
 */
enum TridissStatus tridiss_enumerate(size_t max_size, size_t workers, struct TridissStore **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void tridiss_store_free(struct TridissStore *s);

/**
 * Number of distinct dissections of size `n`, counting only separated
 * ones when `separated_only` is nonzero. Returns 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t tridiss_store_count(const struct TridissStore *s, size_t n, uint8_t separated_only);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIDISS_H */
