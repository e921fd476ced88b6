#ifndef KNOTOID_H
#define KNOTOID_H

/* Generated by cbindgen from knotoid-ffi; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum KnotoidStatus {
  KNOTOID_STATUS_OK = 0,
  KNOTOID_STATUS_NULL_POINTER = 1,
  KNOTOID_STATUS_INVALID_UTF8 = 2,
  KNOTOID_STATUS_SYNTAX = 3,
  KNOTOID_STATUS_INVALID_DIAGRAM = 4,
  KNOTOID_STATUS_NOT_A_KNOTOID = 5,
  KNOTOID_STATUS_NOT_PLANAR = 6,
  KNOTOID_STATUS_TOO_LARGE = 7,
  KNOTOID_STATUS_OVERFLOW = 8,
  KNOTOID_STATUS_FAILED = 9,
  KNOTOID_STATUS_PANIC = 10,
} KnotoidStatus;

/**
 * Text-valued quantities of a diagram.
 */
typedef enum KnotoidText {
  KNOTOID_TEXT_PD = 0,
  KNOTOID_TEXT_CANONICAL_CODE = 1,
  KNOTOID_TEXT_BRACKET = 2,
  KNOTOID_TEXT_NORMALIZED_BRACKET = 3,
  KNOTOID_TEXT_EXTENDED_BRACKET = 4,
  KNOTOID_TEXT_PLANAR_BRACKET = 5,
  KNOTOID_TEXT_HOMFLY = 6,
  KNOTOID_TEXT_PRESENTATION = 7,
} KnotoidText;

/**
 * Diagram-valued operations.
 */
typedef enum KnotoidTransform {
  KNOTOID_TRANSFORM_MIRROR = 0,
  KNOTOID_TRANSFORM_REVERSE = 1,
  KNOTOID_TRANSFORM_SYMMETRY = 2,
  KNOTOID_TRANSFORM_CLOSURE_UNDER = 3,
  KNOTOID_TRANSFORM_CLOSURE_OVER = 4,
  KNOTOID_TRANSFORM_ON_SPHERE = 5,
} KnotoidTransform;

typedef enum KnotoidVerdict {
  KNOTOID_VERDICT_INCONCLUSIVE = 0,
  KNOTOID_VERDICT_EQUIVALENT = 1,
  KNOTOID_VERDICT_DISTINCT = 2,
} KnotoidVerdict;

typedef struct KnotoidDiagram KnotoidDiagram;

/**
 * Parses PD text into a new diagram.
 *
 * # Safety
 * `pd` must be a nul-terminated string; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_parse(const char *pd, struct KnotoidDiagram **out);

/**
 * # Safety
 * `d` must come from this library and not be used afterwards. Null is ignored.
 */
void knotoid_diagram_free(struct KnotoidDiagram *d);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void knotoid_string_free(char *s);

/**
 * Message of the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *knotoid_last_error(void);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_crossings(const struct KnotoidDiagram *d, size_t *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_writhe(const struct KnotoidDiagram *d, int64_t *out);

/**
 * 1 for a knotoid diagram, 0 for a link diagram.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_is_knotoid(const struct KnotoidDiagram *d, int32_t *out);

/**
 * Writes a newly allocated string; free it with `knotoid_string_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_text(const struct KnotoidDiagram *d,
                                        enum KnotoidText what,
                                        char **out);

/**
 * Writes a new handle; free it with `knotoid_diagram_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_transform(const struct KnotoidDiagram *d,
                                             enum KnotoidTransform what,
                                             struct KnotoidDiagram **out);

/**
 * Product of two diagrams, as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum KnotoidStatus knotoid_diagram_product(const struct KnotoidDiagram *a,
                                           const struct KnotoidDiagram *b,
                                           struct KnotoidDiagram **out);

/**
 * Number of Fox `n`-colorings.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum KnotoidStatus knotoid_count_colorings(const struct KnotoidDiagram *d,
                                           uint64_t n,
                                           uint64_t *out);

/**
 * Bounded Reidemeister search. Zero limits select the defaults.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum KnotoidStatus knotoid_equivalent(const struct KnotoidDiagram *a,
                                      const struct KnotoidDiagram *b,
                                      size_t max_crossings,
                                      size_t max_nodes,
                                      enum KnotoidVerdict *out);

#endif  /* KNOTOID_H */
