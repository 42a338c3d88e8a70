#ifndef HYPERRAD_H
#define HYPERRAD_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible entry point. `HR_STATUS_OK` is zero.
 */
typedef enum HrStatus {
  HR_STATUS_OK = 0,
  HR_STATUS_NULL_POINTER = 1,
  HR_STATUS_INVALID_ARGUMENT = 2,
  HR_STATUS_SINGULAR_SYSTEM = 3,
  HR_STATUS_NON_UNIQUE_STEADY_STATE = 4,
  HR_STATUS_INTEGRATION_FAILURE = 5,
  HR_STATUS_CUTOFF_EXHAUSTED = 6,
  HR_STATUS_REFERENCE_DARK = 7,
  HR_STATUS_SEMICLASSICAL_SINGULARITY = 8,
  HR_STATUS_CONFIG = 9,
  HR_STATUS_IO = 10,
  HR_STATUS_PANIC = 11,
} HrStatus;

/**
 * Settable scalar fields of [`HrParams`].
 */
typedef enum HrParam {
  HR_PARAM_G = 0,
  HR_PARAM_KAPPA = 1,
  HR_PARAM_GAMMA = 2,
  HR_PARAM_ETA = 3,
  HR_PARAM_DELTA_C = 4,
  HR_PARAM_DELTA_A = 5,
  HR_PARAM_PHI_Z = 6,
} HrParam;

/**
 * Radiance regimes in increasing order of `R`.
 */
typedef enum HrRadianceClass {
  HR_RADIANCE_CLASS_EXTREMELY_SUBRADIANT = 0,
  HR_RADIANCE_CLASS_SUBRADIANT = 1,
  HR_RADIANCE_CLASS_UNCORRELATED = 2,
  HR_RADIANCE_CLASS_ENHANCED = 3,
  HR_RADIANCE_CLASS_SUPERRADIANT = 4,
  HR_RADIANCE_CLASS_HYPERRADIANT = 5,
} HrRadianceClass;

/**
 * Opaque system parameters.
 */
typedef struct HrParams HrParams;

/**
 * Opaque evaluated radiance point.
 */
typedef struct HrPoint HrPoint;

/**
 * Opaque converged steady state.
 */
typedef struct HrSteady HrSteady;

/**
 * Scalar observables of a steady state. `g2_zero` is NaN when the cavity is
 * (numerically) empty.
 */
typedef struct HrSteadySummary {
  double mean_photon;
  double coherent_amp_re;
  double coherent_amp_im;
  double atomic_excitation;
  double g2_zero;
  size_t cutoff_used;
  double residual;
  /**
   * Side length of the density matrix.
   */
  size_t dim;
} HrSteadySummary;

/**
 * Scalar content of an [`HrPoint`]. Absent observables are NaN.
 */
typedef struct HrPointSummary {
  double r;
  enum HrRadianceClass regime;
  double n1;
  double n2;
  double g2;
  double quantumness;
  double semiclassical_intensity;
  size_t cutoff_used;
  double residual;
} HrPointSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *hr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hr_version(void);

/**
 * New two-atom resonant parameter set (`κ = 1`, `δ = Δ = 0`).
 * Returns NULL if any value is invalid; see [`hr_last_error_message`].
 */
struct HrParams *hr_params_new(double g, double gamma, double eta, double phi_z);

/**
 * # Safety
 * `params` must be NULL or a handle from [`hr_params_new`] not yet freed.
 */
void hr_params_free(struct HrParams *params);

/**
 * Sets one field; the handle is left unchanged if the result is invalid.
 *
 * # Safety
 * `params` must be a live handle from [`hr_params_new`].
 */
enum HrStatus hr_params_set(struct HrParams *params, enum HrParam field, double value);

/**
 * # Safety
 * `params` must be a live handle; `value` must be writable.
 */
enum HrStatus hr_params_get(const struct HrParams *params, enum HrParam field, double *value);

/**
 * Number of atoms (1 or 2).
 *
 * # Safety
 * `params` must be a live handle.
 */
enum HrStatus hr_params_set_atoms(struct HrParams *params, size_t n_atoms);

/**
 * Converged steady state of `params`. `max_cutoff = 0` selects the default cap.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable. On success `*out`
 * receives a handle to release with [`hr_steady_free`].
 */
enum HrStatus hr_steady_compute(const struct HrParams *params,
                                double rel_tol,
                                size_t max_cutoff,
                                struct HrSteady **out);

/**
 * # Safety
 * `steady` must be NULL or a handle from [`hr_steady_compute`] not yet freed.
 */
void hr_steady_free(struct HrSteady *steady);

/**
 * # Safety
 * `steady` must be a live handle; `out` must be writable.
 */
enum HrStatus hr_steady_summary(const struct HrSteady *steady, struct HrSteadySummary *out);

/**
 * Copies ρ in row-major order into `re` and `im`, each of length `len`,
 * which must equal `dim²`.
 *
 * # Safety
 * `steady` must be a live handle; `re` and `im` must each point to `len`
 * writable doubles.
 */
enum HrStatus hr_steady_density(const struct HrSteady *steady, double *re, double *im, size_t len);

/**
 * Lowercase token of a class, e.g. `"hyperradiant"`; static storage.
 */
const char *hr_radiance_class_name(enum HrRadianceClass class_);

/**
 * # Safety
 * `out` must be writable.
 */
enum HrStatus hr_classify(double r, double band, enum HrRadianceClass *out);

/**
 * Mean-field cavity amplitude of `params`.
 *
 * # Safety
 * `params` must be a live handle; `re` and `im` must be writable.
 */
enum HrStatus hr_semiclassical_field(const struct HrParams *params, double *re, double *im);

/**
 * Evaluates the radiance witness for a two-atom `params`.
 * `max_cutoff = 0` selects the default cap.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable. On success `*out`
 * receives a handle to release with [`hr_point_free`].
 */
enum HrStatus hr_point_compute(const struct HrParams *params,
                               double rel_tol,
                               size_t max_cutoff,
                               double class_band,
                               struct HrPoint **out);

/**
 * # Safety
 * `point` must be NULL or a handle from [`hr_point_compute`] not yet freed.
 */
void hr_point_free(struct HrPoint *point);

/**
 * # Safety
 * `point` must be a live handle; `out` must be writable.
 */
enum HrStatus hr_point_summary(const struct HrPoint *point, struct HrPointSummary *out);

/**
 * Runs the sweep described by configuration text and writes CSV to `out_path`.
 * `workers = 0` uses one thread per core.
 *
 * # Safety
 * `config_text` and `out_path` must be NUL-terminated strings.
 */
enum HrStatus hr_sweep_config_to_csv(const char *config_text, const char *out_path, size_t workers);

/**
 * Runs a named figure preset (e.g. `"fig5"`) and writes CSV to `out_path`.
 *
 * # Safety
 * `name` and `out_path` must be NUL-terminated strings.
 */
enum HrStatus hr_figure_to_csv(const char *name, const char *out_path, size_t workers);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERRAD_H */
