#ifndef QHARDY_H
#define QHARDY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QhStatus {
  QH_STATUS_OK = 0,
  QH_STATUS_NULL_POINTER = 1,
  QH_STATUS_INVALID_UTF8 = 2,
  QH_STATUS_INVALID_ARGUMENT = 3,
  QH_STATUS_COMPUTATION_FAILED = 4,
  QH_STATUS_PANIC = 5,
} QhStatus;

typedef enum QhModel {
  QH_MODEL_POLYDISC = 0,
  QH_MODEL_BALL = 1,
} QhModel;

// Opaque group handle.
typedef struct QhGroup QhGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build a group from a JSON description such as `{"family":"symmetric","d":3}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum QhStatus qh_group_from_json(const char *json, struct QhGroup **out);

// # Safety
// `g` must come from [`qh_group_from_json`] and not be used afterwards.
void qh_group_free(struct QhGroup *g);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum QhStatus qh_group_order(const struct QhGroup *g, uintptr_t *out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum QhStatus qh_group_dimension(const struct QhGroup *g, uintptr_t *out);

// Number of one-dimensional characters.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum QhStatus qh_group_character_count(const struct QhGroup *g, uintptr_t *out);

// Summary of the group as JSON; free the result with [`qh_string_free`].
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum QhStatus qh_group_describe_json(const struct QhGroup *g, char **out);

// Generating polynomial of character `character` as polynomial JSON.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum QhStatus qh_generating_polynomial_json(const struct QhGroup *g,
                                            uintptr_t character,
                                            char **out);

// Reproducing kernel of the isotypic subspace at `(z, w)`. Points are
// `2·d` doubles (interleaved real and imaginary parts); `out` receives two.
//
// # Safety
// Pointers must be valid for the stated lengths.
enum QhStatus qh_subspace_kernel(const struct QhGroup *g,
                                 uintptr_t character,
                                 enum QhModel model,
                                 const double *z,
                                 const double *w,
                                 double *out);

// Kernel of the quotient space at `(θ(z), θ(w))`; same layout as
// [`qh_subspace_kernel`].
//
// # Safety
// Pointers must be valid for the stated lengths.
enum QhStatus qh_quotient_kernel(const struct QhGroup *g,
                                 uintptr_t character,
                                 enum QhModel model,
                                 const double *z,
                                 const double *w,
                                 double *out);

// # Safety
// `s` must come from this library and not be used afterwards.
void qh_string_free(char *s);

// Message of the last failure on this thread, or NULL. Valid until the
// next failing call on the same thread.
const char *qh_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHARDY_H */
