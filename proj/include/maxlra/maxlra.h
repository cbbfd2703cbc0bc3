/* C interface to the max-norm low-rank approximation library.
 *
 * Every function that can fail returns a maxlra_status; MAXLRA_OK means
 * success. On failure the out-parameters are left untouched and
 * maxlra_last_error() returns a message for the calling thread. Handles are
 * opaque; destroy functions accept NULL.
 */
#ifndef MAXLRA_H
#define MAXLRA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum maxlra_status {
  MAXLRA_OK = 0,
  MAXLRA_ERR_INVALID_ARGUMENT = 1,
  MAXLRA_ERR_SHAPE_MISMATCH = 2,
  MAXLRA_ERR_INVALID_RANK = 3,
  MAXLRA_ERR_RANK_DEFICIENT = 4,
  MAXLRA_ERR_NO_CONVERGENCE = 5,
  MAXLRA_ERR_NOT_ORTHONORMAL = 6,
  MAXLRA_ERR_ZERO_MATRIX = 7,
  MAXLRA_ERR_INVALID_EPS = 8,
  MAXLRA_ERR_INVALID_BAND = 9,
  MAXLRA_ERR_NOT_POWER_OF_TWO = 10,
  MAXLRA_ERR_INVALID_BRACKET = 11,
  MAXLRA_ERR_EMPTY_INPUT = 12,
  MAXLRA_ERR_IO = 13,
  MAXLRA_ERR_UNKNOWN = 99
} maxlra_status;

const char* maxlra_version(void);
const char* maxlra_status_name(maxlra_status status);
/* Message from the most recent failing call on this thread ("" if none). */
const char* maxlra_last_error(void);

/* ---- dense matrices ---------------------------------------------------- */

typedef struct maxlra_matrix maxlra_matrix;

/* data is row-major rows*cols, or NULL for all zeros. */
maxlra_status maxlra_matrix_create(size_t rows, size_t cols,
                                   const double* data, maxlra_matrix** out);
void maxlra_matrix_destroy(maxlra_matrix* m);
size_t maxlra_matrix_rows(const maxlra_matrix* m);
size_t maxlra_matrix_cols(const maxlra_matrix* m);
maxlra_status maxlra_matrix_get(const maxlra_matrix* m, size_t i, size_t j,
                                double* out);
/* out must hold rows*cols doubles; written row-major. */
maxlra_status maxlra_matrix_copy_data(const maxlra_matrix* m, double* out);

/* Plain-text format: "rows cols" header line, then one line per row. */
maxlra_status maxlra_matrix_read(const char* path, maxlra_matrix** out);
maxlra_status maxlra_matrix_write(const maxlra_matrix* m, const char* path);

/* class_name: identity | hadamard | uniform | banded | stiefel-product.
 * band applies to banded, factor_rank and normalize to stiefel-product;
 * the rest ignore them. */
maxlra_status maxlra_generate(const char* class_name, size_t n, size_t band,
                              size_t factor_rank, uint64_t seed,
                              int normalize, maxlra_matrix** out);

maxlra_status maxlra_max_norm(const maxlra_matrix* m, double* out);
maxlra_status maxlra_fro_norm(const maxlra_matrix* m, double* out);
maxlra_status maxlra_spectral_norm(const maxlra_matrix* m, double tol,
                                   double* out);

/* ---- diagnostics and a-priori bounds ----------------------------------- */

typedef struct maxlra_diagnostics {
  size_t rows;
  size_t cols;
  size_t rank; /* numerical rank at rank_tol */
  double max_norm;
  double spectral_norm;
  double fro_norm;
  double spikiness;
  double mu_col;
  double mu_row;
} maxlra_diagnostics;

typedef struct maxlra_bounds {
  double ultimate;  /* max_norm, valid at every rank >= 1 */
  double cross;     /* 0 when r >= min(rows, cols) */
  double jl_value;  /* random-projection bound (the thm4 CSV column) */
  double jl_eps;
  int jl_valid;
  double hw_value;  /* sub-Gaussian sketch bound (the thm8 CSV column) */
  double hw_eps;
  int hw_valid;
  double hw_constant;
  double alon_rank;
  size_t udell_rank;
} maxlra_bounds;

maxlra_status maxlra_diagnose(const maxlra_matrix* m, double rank_tol,
                              maxlra_diagnostics* out);
/* diag_out may be NULL when only the bounds are wanted. */
maxlra_status maxlra_bound_report(const maxlra_matrix* m, size_t r,
                                  double hw_constant, double eps_for_ranks,
                                  double rank_tol,
                                  maxlra_diagnostics* diag_out,
                                  maxlra_bounds* bounds_out);

/* ---- alternating projections and distance estimation ------------------- */

typedef struct maxlra_ap_config {
  double eps;
  size_t max_iter;
  double feas_tol;
  size_t stall_window;
  double stall_tol;
  size_t oversample;
  size_t power_iters;
  uint64_t seed;
} maxlra_ap_config;

/* Fills in the library defaults. */
void maxlra_ap_config_init(maxlra_ap_config* cfg);

enum {
  MAXLRA_STOP_CONVERGED = 0,
  MAXLRA_STOP_STALLED = 1,
  MAXLRA_STOP_MAX_ITER = 2
};

typedef struct maxlra_ap_report {
  int feasible;
  size_t iterations;
  double final_error;
  int stop_reason;
} maxlra_ap_report;

/* history (optional): the max-norm error of each iterate, starting at Y0.
 * Pass history = NULL to skip it; *history_len receives min(entries,
 * history_cap). y_out (optional) receives the final iterate. */
maxlra_status maxlra_ap_run(const maxlra_matrix* x, size_t r,
                            const maxlra_ap_config* cfg,
                            maxlra_ap_report* report, double* history,
                            size_t history_cap, size_t* history_len,
                            maxlra_matrix** y_out);

typedef struct maxlra_distance {
  double eps_minus;
  double eps_plus;
  double certificate_error;
  size_t probes;
} maxlra_distance;

/* Bisects the feasibility threshold over [lo, hi]; hi < 0 starts from
 * max_norm(x). cfg may be NULL for defaults; certificate_out (optional)
 * receives the best rank-<=r witness found. */
maxlra_status maxlra_estimate_distance(const maxlra_matrix* x, size_t r,
                                       double lo, double hi, double bs_tol,
                                       size_t restarts,
                                       const maxlra_ap_config* cfg,
                                       maxlra_distance* out,
                                       maxlra_matrix** certificate_out);

/* ---- a-priori constructions -------------------------------------------- */

typedef struct maxlra_construct_report {
  double achieved_error;
  double theoretical_bound;
  double bound_eps;
  int bound_valid;
  size_t trials_used;
  size_t best_trial;
  uint64_t best_seed;
  size_t rank;
} maxlra_construct_report;

/* method: "jl" (orthonormalized Gaussian projection) or "hw" (i.i.d.
 * sub-Gaussian sketch). dist applies to "hw": "rademacher" (default when
 * NULL) or "gaussian". y_out (optional) receives the approximant. */
maxlra_status maxlra_construct(const maxlra_matrix* x, const char* method,
                               size_t r, size_t trials, const char* dist,
                               uint64_t seed,
                               maxlra_construct_report* report,
                               maxlra_matrix** y_out);

/* ---- experiment sweeps -------------------------------------------------- */

/* Runs the sweep described by the JSON config file and writes results.csv,
 * the manifest, and any requested plots. out_dir overrides the config's
 * output_dir when non-NULL. *partial_out (optional) is set to 1 when some
 * cells failed and were skipped. */
maxlra_status maxlra_sweep_run(const char* config_path, const char* out_dir,
                               int* partial_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MAXLRA_H */
