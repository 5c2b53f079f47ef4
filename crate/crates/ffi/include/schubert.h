#ifndef SCHUBERT_H
#define SCHUBERT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SchubertStatus {
  SCHUBERT_STATUS_OK = 0,
  SCHUBERT_STATUS_NULL_POINTER = 1,
  SCHUBERT_STATUS_INVALID_UTF8 = 2,
  SCHUBERT_STATUS_PARSE = 3,
  SCHUBERT_STATUS_PRECONDITION = 4,
  SCHUBERT_STATUS_RESOURCE = 5,
  /**
   * A coefficient did not fit the requested integer type.
   */
  SCHUBERT_STATUS_OVERFLOW = 6,
  SCHUBERT_STATUS_PANIC = 7,
} SchubertStatus;

typedef struct SchubertExpansion SchubertExpansion;

typedef struct SchubertPerm SchubertPerm;

typedef struct SchubertPoly SchubertPoly;

typedef struct SchubertTree SchubertTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *schubert_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void schubert_string_free(char *s);

/**
 * Parses one-line notation such as `4317625` or `123469857,10`.
 *
 * # Safety
 * `text` must be a valid C string and `out` a writable pointer.
 */
enum SchubertStatus schubert_perm_parse(const char *text, struct SchubertPerm **out);

/**
 * # Safety
 * `perm` must be null or a pointer from this library, not yet freed.
 */
void schubert_perm_free(struct SchubertPerm *perm);

/**
 * # Safety
 * `perm` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_perm_length(const struct SchubertPerm *perm, size_t *out);

/**
 * Canonical text with at least `width` entries (0 for no padding).
 *
 * # Safety
 * `perm` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_perm_to_string(const struct SchubertPerm *perm,
                                            size_t width,
                                            char **out);

/**
 * K-march toward the pivot rows `rows[0..len]`, strictly increasing.
 *
 * # Safety
 * `perm` must be a live handle, `rows` must point to `len` values and `out`
 * must be writable.
 */
enum SchubertStatus schubert_perm_march(const struct SchubertPerm *perm,
                                        const size_t *rows,
                                        size_t len,
                                        struct SchubertPerm **out);

/**
 * # Safety
 * `perm` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_grothendieck(const struct SchubertPerm *perm,
                                          struct SchubertPoly **out);

/**
 * Sets every variable beyond `x_t` to zero.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_poly_truncate(const struct SchubertPoly *poly,
                                           size_t t,
                                           struct SchubertPoly **out);

/**
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_poly_to_string(const struct SchubertPoly *poly, char **out);

/**
 * # Safety
 * `poly` must be null or a pointer from this library, not yet freed.
 */
void schubert_poly_free(struct SchubertPoly *poly);

/**
 * `G_sigma * G_rho` in the Grothendieck basis.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum SchubertStatus schubert_structure_constants(const struct SchubertPerm *sigma,
                                                 const struct SchubertPerm *rho,
                                                 struct SchubertExpansion **out);

/**
 * Structure constants of a truncation Schubert problem read off its tree.
 * Returns `Precondition` when `(sigma, alpha, n, t)` is not such a problem.
 * `node_ceiling` of 0 selects the default.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum SchubertStatus schubert_truncation_product(const struct SchubertPerm *sigma,
                                                const struct SchubertPerm *alpha,
                                                size_t n,
                                                size_t t,
                                                bool cohomology,
                                                size_t node_ceiling,
                                                struct SchubertExpansion **out);

/**
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_expansion_len(const struct SchubertExpansion *map, size_t *out);

/**
 * Coefficient of `perm`, zero when absent. Fails with `Overflow` outside
 * the `int64_t` range.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum SchubertStatus schubert_expansion_coefficient(const struct SchubertExpansion *map,
                                                   const struct SchubertPerm *perm,
                                                   int64_t *out);

/**
 * JSON object `{"perm": coefficient, ...}` with keys padded to `width`.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_expansion_to_json(const struct SchubertExpansion *map,
                                               size_t width,
                                               char **out);

/**
 * # Safety
 * `map` must be null or a pointer from this library, not yet freed.
 */
void schubert_expansion_free(struct SchubertExpansion *map);

/**
 * Marching tree of `perm` truncated at `t`. `node_ceiling` of 0 selects
 * the default.
 *
 * # Safety
 * `perm` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_tree_build(const struct SchubertPerm *perm,
                                        size_t t,
                                        bool cohomology,
                                        size_t node_ceiling,
                                        struct SchubertTree **out);

/**
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_tree_node_count(const struct SchubertTree *tree, size_t *out);

/**
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_tree_to_json(const struct SchubertTree *tree, char **out);

/**
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum SchubertStatus schubert_tree_to_dot(const struct SchubertTree *tree, char **out);

/**
 * # Safety
 * `tree` must be null or a pointer from this library, not yet freed.
 */
void schubert_tree_free(struct SchubertTree *tree);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBERT_H */
