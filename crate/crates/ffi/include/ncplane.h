#ifndef NCPLANE_H
#define NCPLANE_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_UTF8 = 2,
  NC_STATUS_PARSE = 3,
  NC_STATUS_INVALID_ARGUMENT = 4,
  NC_STATUS_NUMERIC = 5,
  NC_STATUS_OVERFLOW = 6,
  NC_STATUS_BUFFER_TOO_SMALL = 7,
  NC_STATUS_PANIC = 8,
} NcStatus;

/**
 * Canonical commutator selector for [`nc_commutator_error`].
 */
typedef enum NcCommutator {
  NC_COMMUTATOR_Q1Q2 = 0,
  NC_COMMUTATOR_P1P2 = 1,
  NC_COMMUTATOR_Q1P1 = 2,
  NC_COMMUTATOR_Q1P2 = 3,
  NC_COMMUTATOR_Q2P1 = 4,
  NC_COMMUTATOR_Q2P2 = 5,
} NcCommutator;

/**
 * Opaque polynomial observable.
 */
typedef struct NcObservable NcObservable;

/**
 * Opaque sampled wavefunction.
 */
typedef struct NcWavefunction NcWavefunction;

/**
 * Exact rational `num / den` with `den > 0`.
 */
typedef struct NcRational {
  int64_t num;
  int64_t den;
} NcRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nc_version(void);

/**
 * Description of the last call's failure on this thread; empty after a
 * successful call. The pointer stays valid until the next call into the
 * library.
 */
const char *nc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void nc_string_free(char *s);

/**
 * Parses `src`. On a parse error, `error_offset` (if non-null) receives the
 * byte offset of the offending token.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum NcStatus nc_observable_parse(const char *src, struct NcObservable **out, size_t *error_offset);

/**
 * # Safety
 * `f` must be null or a handle from this library, not yet freed.
 */
void nc_observable_free(struct NcObservable *f);

/**
 * Canonical text of `f`; release with [`nc_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum NcStatus nc_observable_format(const struct NcObservable *f, char **out);

/**
 * Evaluates `f` at `point = {q1, q2, p1, p2}`.
 *
 * # Safety
 * `point` must hold four doubles; `out` must be writable.
 */
enum NcStatus nc_observable_evaluate(const struct NcObservable *f,
                                     const double *point,
                                     double theta,
                                     double hbar,
                                     double *out);

/**
 * Deformed bracket `{f, g}` with `{q1, q2} = θ`.
 *
 * # Safety
 * `f`, `g` must be live handles; `out` must be writable.
 */
enum NcStatus nc_poisson_bracket(const struct NcObservable *f,
                                 const struct NcObservable *g,
                                 struct NcObservable **out);

/**
 * Undeformed bracket `{f, g}`.
 *
 * # Safety
 * As [`nc_poisson_bracket`].
 */
enum NcStatus nc_standard_bracket(const struct NcObservable *f,
                                  const struct NcObservable *g,
                                  struct NcObservable **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum NcStatus nc_bopp_shift(const struct NcObservable *f, struct NcObservable **out);

/**
 * Components of the Hamiltonian vector field along `q1, q2, p1, p2`,
 * written to `out[0..4]`.
 *
 * # Safety
 * `f` must be a live handle; `out` must have room for four handles.
 */
enum NcStatus nc_hamiltonian_vector_field(const struct NcObservable *f, struct NcObservable **out);

/**
 * Cocycle `(z1, z2)` of two algebra elements `{A1, A2, B1, B2, C, D}`.
 *
 * # Safety
 * `e1`, `e2` must hold six rationals; `z1`, `z2` must be writable.
 */
enum NcStatus nc_cocycle(const struct NcRational *e1,
                         const struct NcRational *e2,
                         struct NcRational *z1,
                         struct NcRational *z2);

/**
 * Group product of `{a1, a2, b1, b2, c, d}` coordinates.
 *
 * # Safety
 * `g1`, `g2` must hold six rationals; `out` must have room for six.
 */
enum NcStatus nc_group_multiply(const struct NcRational *g1,
                                const struct NcRational *g2,
                                struct NcRational *out);

/**
 * Group commutator `g1 g2 g1⁻¹ g2⁻¹`.
 *
 * # Safety
 * As [`nc_group_multiply`].
 */
enum NcStatus nc_group_commutator(const struct NcRational *g1,
                                  const struct NcRational *g2,
                                  struct NcRational *out);

/**
 * Normalized Gaussian on an `n × n` grid over `[-l, l)²`.
 *
 * # Safety
 * `q0`, `k0` must hold two doubles each; `out` must be writable.
 */
enum NcStatus nc_wavefunction_gaussian(size_t n,
                                       double l,
                                       double theta,
                                       double hbar,
                                       const double *q0,
                                       const double *k0,
                                       double sigma,
                                       struct NcWavefunction **out);

/**
 * # Safety
 * `w` must be null or a handle from this library, not yet freed.
 */
void nc_wavefunction_free(struct NcWavefunction *w);

/**
 * Number of amplitudes (`n²`), or 0 for a null handle.
 *
 * # Safety
 * `w` must be null or a live handle.
 */
size_t nc_wavefunction_len(const struct NcWavefunction *w);

/**
 * Copies amplitudes, row-major `[i1 * n + i2]`, into `re` and `im`.
 *
 * # Safety
 * `re` and `im` must each have room for `len` doubles.
 */
enum NcStatus nc_wavefunction_amplitudes(const struct NcWavefunction *w,
                                         double *re,
                                         double *im,
                                         size_t len);

/**
 * `⟨a, b⟩` on the shared grid.
 *
 * # Safety
 * `a`, `b` must be live handles; `re`, `im` must be writable.
 */
enum NcStatus nc_wavefunction_inner(const struct NcWavefunction *a,
                                    const struct NcWavefunction *b,
                                    double *re,
                                    double *im);

/**
 * `U(a)ψ = ψ(q - a)`.
 *
 * # Safety
 * `w` must be a live handle, `a` must hold two doubles, `out` writable.
 */
enum NcStatus nc_apply_u(const struct NcWavefunction *w,
                         const double *a,
                         struct NcWavefunction **out);

/**
 * `V(b)ψ = e^{ib·q} ψ(q - s(b))`.
 *
 * # Safety
 * As [`nc_apply_u`].
 */
enum NcStatus nc_apply_v(const struct NcWavefunction *w,
                         const double *b,
                         struct NcWavefunction **out);

/**
 * `W(c, d)ψ = e^{-i(cħ + dθ)} ψ`.
 *
 * # Safety
 * `w` must be a live handle, `out` writable.
 */
enum NcStatus nc_apply_w(const struct NcWavefunction *w,
                         double c,
                         double d,
                         struct NcWavefunction **out);

/**
 * Noncommutative position operator along axis 1 or 2.
 *
 * # Safety
 * `w` must be a live handle, `out` writable.
 */
enum NcStatus nc_apply_position(const struct NcWavefunction *w,
                                uint32_t axis_index,
                                struct NcWavefunction **out);

/**
 * Momentum operator `-iħ∂` along axis 1 or 2.
 *
 * # Safety
 * `w` must be a live handle, `out` writable.
 */
enum NcStatus nc_apply_momentum(const struct NcWavefunction *w,
                                uint32_t axis_index,
                                struct NcWavefunction **out);

/**
 * Error of a canonical commutator on `w` against its predicted constant.
 *
 * # Safety
 * `w` must be a live handle, `error` writable.
 */
enum NcStatus nc_commutator_error(const struct NcWavefunction *w,
                                  enum NcCommutator kind,
                                  double *error);

/**
 * Runs the full verification suite. `passed` receives the overall result;
 * if `report_json` is non-null it receives the JSON report, to be released
 * with [`nc_string_free`]. A failing check is not an error status.
 *
 * # Safety
 * `passed` must be writable; `report_json` must be null or writable.
 */
enum NcStatus nc_verify_all(double theta,
                            double hbar,
                            size_t grid_n,
                            double box_l,
                            uint64_t seed,
                            bool *passed,
                            char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCPLANE_H */
