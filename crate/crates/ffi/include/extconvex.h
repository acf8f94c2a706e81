#ifndef EXTCONVEX_H
#define EXTCONVEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Proper (`x ↦ a x`) or improper (hat) dual element.
 */
typedef enum ExcDualKind {
  EXC_DUAL_KIND_PROPER = 0,
  EXC_DUAL_KIND_HAT = 1,
} ExcDualKind;

typedef enum ExcKind {
  EXC_KIND_FINITE = 0,
  EXC_KIND_POS_INF = 1,
  EXC_KIND_NEG_INF = 2,
} ExcKind;

/**
 * Result of every fallible call.
 */
typedef enum ExcStatus {
  EXC_STATUS_OK = 0,
  EXC_STATUS_NULL_POINTER = 1,
  EXC_STATUS_INVALID_ARGUMENT = 2,
  EXC_STATUS_PARSE = 3,
  /**
   * The input is well formed but outside the operation's domain, e.g. a
   * non-convex function or `z*` outside the dual cone.
   */
  EXC_STATUS_DOMAIN = 4,
  EXC_STATUS_PANIC = 5,
} ExcStatus;

/**
 * Opaque function into the inf-extended reals.
 */
typedef struct ExcFunction ExcFunction;

/**
 * Opaque closed convex set stable under `+C`.
 */
typedef struct ExcSet ExcSet;

/**
 * Opaque polyhedral set-valued function.
 */
typedef struct ExcSetValued ExcSetValued;

/**
 * An extended real. `value` is meaningful only for `Finite`.
 */
typedef struct ExcExtReal {
  enum ExcKind kind;
  double value;
} ExcExtReal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *exc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void exc_string_free(char *s);

/**
 * Inf-addition: `+∞` dominates.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ExcStatus exc_isum(struct ExcExtReal a, struct ExcExtReal b, struct ExcExtReal *out);

/**
 * Sup-addition: `−∞` dominates.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ExcStatus exc_ssum(struct ExcExtReal a, struct ExcExtReal b, struct ExcExtReal *out);

/**
 * Inf-difference `min{t : a ≤ b ⊞▵ t}`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ExcStatus exc_idif(struct ExcExtReal a, struct ExcExtReal b, struct ExcExtReal *out);

/**
 * Sup-difference `max{t : b ⊞▿ t ≤ a}`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ExcStatus exc_sdif(struct ExcExtReal a, struct ExcExtReal b, struct ExcExtReal *out);

/**
 * Parses a function from JSON (the CLI's input format).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ExcStatus exc_function_from_json(const char *json, struct ExcFunction **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. Null is ignored.
 */
void exc_function_free(struct ExcFunction *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_function_to_json(const struct ExcFunction *f, char **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_function_eval(const struct ExcFunction *f, double x, struct ExcExtReal *out);

/**
 * `g*(ξ, r) = sup_x {ξ_r(x) ⊖ g(x)}`, a value in the sup-extended reals.
 *
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_conjugate(const struct ExcFunction *f,
                             enum ExcDualKind kind,
                             double slope,
                             double r,
                             struct ExcExtReal *out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_biconjugate(const struct ExcFunction *f, struct ExcFunction **out);

/**
 * Infimal convolution of two closed convex functions.
 *
 * # Safety
 * `f`, `g` must be live handles; `out` must be valid for writes.
 */
enum ExcStatus exc_infconv(const struct ExcFunction *f,
                           const struct ExcFunction *g,
                           struct ExcFunction **out);

/**
 * Directional derivative `g'(x0, x)` of a convex function.
 *
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_dirderiv(const struct ExcFunction *f,
                            double x0,
                            double x,
                            struct ExcExtReal *out);

/**
 * Parses an upper set `{"poly": ..., "cone": ...}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ExcStatus exc_set_from_json(const char *json, struct ExcSet **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed. Null is ignored.
 */
void exc_set_free(struct ExcSet *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_set_to_json(const struct ExcSet *s, char **out);

/**
 * `A ⊖ B = {z : B + z ⊆ A}`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
enum ExcStatus exc_set_diff(const struct ExcSet *a, const struct ExcSet *b, struct ExcSet **out);

/**
 * `inf {−z*·z : z ∈ A}`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_set_support(const struct ExcSet *a,
                               double z1,
                               double z2,
                               struct ExcExtReal *out);

/**
 * # Safety
 * `a`, `out` must be valid.
 */
enum ExcStatus exc_set_is_empty(const struct ExcSet *a, bool *out);

/**
 * Parses a set-valued function `{"h": [...], "cone": ...}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ExcStatus exc_setvalued_from_json(const char *json, struct ExcSetValued **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void exc_setvalued_free(struct ExcSetValued *g);

/**
 * The value `g(x)`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_setvalued_slice(const struct ExcSetValued *g, double x, struct ExcSet **out);

/**
 * The scalarization `x ↦ inf {−z*·z : z ∈ g(x)}`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_scalarize(const struct ExcSetValued *g,
                             double z1,
                             double z2,
                             struct ExcFunction **out);

/**
 * The conjugate `g*(ξ, r, z*)`; `z*` must lie in the dual cone.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_sv_conjugate(const struct ExcSetValued *g,
                                enum ExcDualKind kind,
                                double slope,
                                double r,
                                double z1,
                                double z2,
                                struct ExcSet **out);

/**
 * The biconjugate `g**(x)`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ExcStatus exc_sv_biconjugate(const struct ExcSetValued *g, double x, struct ExcSet **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTCONVEX_H */
