#include "maxlra/maxlra.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "maxlra/apsolve.hpp"
#include "maxlra/construct.hpp"
#include "maxlra/dense.hpp"
#include "maxlra/diagnostics.hpp"
#include "maxlra/errors.hpp"
#include "maxlra/genmat.hpp"
#include "maxlra/linalg.hpp"
#include "maxlra/matio.hpp"
#include "maxlra/rng.hpp"
#include "maxlra/sweep.hpp"
#include "maxlra/version.hpp"

struct maxlra_matrix {
  maxlra::DenseMatrix m;
};

namespace {

thread_local std::string g_last_error;

// The C status values mirror the C++ error codes one to one.
maxlra_status status_from(maxlra::ErrorCode code) {
  const int v = static_cast<int>(code);
  if (v >= 1 && v <= 13) return static_cast<maxlra_status>(v);
  return MAXLRA_ERR_UNKNOWN;
}

template <typename F>
maxlra_status guarded(F&& f) {
  try {
    f();
    return MAXLRA_OK;
  } catch (const maxlra::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MAXLRA_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unidentified failure";
    return MAXLRA_ERR_UNKNOWN;
  }
}

maxlra_status null_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return MAXLRA_ERR_INVALID_ARGUMENT;
}

maxlra::ApConfig to_ap_config(const maxlra_ap_config* cfg) {
  if (cfg == nullptr) return maxlra::ApConfig{};
  maxlra::ApConfig out;
  out.eps = cfg->eps;
  out.max_iter = cfg->max_iter;
  out.feas_tol = cfg->feas_tol;
  out.stall_window = cfg->stall_window;
  out.stall_tol = cfg->stall_tol;
  out.oversample = cfg->oversample;
  out.power_iters = cfg->power_iters;
  out.seed = cfg->seed;
  return out;
}

int to_stop_code(maxlra::StopReason reason) {
  switch (reason) {
    case maxlra::StopReason::Converged:
      return MAXLRA_STOP_CONVERGED;
    case maxlra::StopReason::Stalled:
      return MAXLRA_STOP_STALLED;
    case maxlra::StopReason::MaxIter:
      return MAXLRA_STOP_MAX_ITER;
  }
  return MAXLRA_STOP_MAX_ITER;
}

maxlra_diagnostics to_c_diag(const maxlra::MatrixDiagnostics& d) {
  maxlra_diagnostics out{};
  out.rows = d.rows;
  out.cols = d.cols;
  out.rank = d.rank;
  out.max_norm = d.max_norm;
  out.spectral_norm = d.spectral_norm;
  out.fro_norm = d.fro_norm;
  out.spikiness = d.spikiness;
  out.mu_col = d.mu_col;
  out.mu_row = d.mu_row;
  return out;
}

}  // namespace

extern "C" {

const char* maxlra_version(void) {
  static const std::string v(maxlra::kVersion);
  return v.c_str();
}

const char* maxlra_status_name(maxlra_status status) {
  switch (status) {
    case MAXLRA_OK:
      return "ok";
    case MAXLRA_ERR_UNKNOWN:
      return "unknown";
    default:
      return maxlra::error_code_name(
          static_cast<maxlra::ErrorCode>(static_cast<int>(status)));
  }
}

const char* maxlra_last_error(void) { return g_last_error.c_str(); }

maxlra_status maxlra_matrix_create(size_t rows, size_t cols,
                                   const double* data, maxlra_matrix** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    if (data == nullptr) {
      *out = new maxlra_matrix{maxlra::DenseMatrix(rows, cols)};
    } else {
      *out = new maxlra_matrix{maxlra::DenseMatrix(
          rows, cols, std::vector<double>(data, data + rows * cols))};
    }
  });
}

void maxlra_matrix_destroy(maxlra_matrix* m) { delete m; }

size_t maxlra_matrix_rows(const maxlra_matrix* m) {
  return m == nullptr ? 0 : m->m.rows();
}

size_t maxlra_matrix_cols(const maxlra_matrix* m) {
  return m == nullptr ? 0 : m->m.cols();
}

maxlra_status maxlra_matrix_get(const maxlra_matrix* m, size_t i, size_t j,
                                double* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    maxlra::require(i < m->m.rows() && j < m->m.cols(),
                    maxlra::ErrorCode::InvalidArgument,
                    "entry index out of range");
    *out = m->m(i, j);
  });
}

maxlra_status maxlra_matrix_copy_data(const maxlra_matrix* m, double* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto values = m->m.values();
    std::copy(values.begin(), values.end(), out);
  });
}

maxlra_status maxlra_matrix_read(const char* path, maxlra_matrix** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded(
      [&] { *out = new maxlra_matrix{maxlra::read_matrix_file(path)}; });
}

maxlra_status maxlra_matrix_write(const maxlra_matrix* m, const char* path) {
  if (m == nullptr) return null_arg("matrix");
  if (path == nullptr) return null_arg("path");
  return guarded([&] { maxlra::write_matrix_file(m->m, path); });
}

maxlra_status maxlra_generate(const char* class_name, size_t n, size_t band,
                              size_t factor_rank, uint64_t seed,
                              int normalize, maxlra_matrix** out) {
  if (class_name == nullptr) return null_arg("class_name");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    maxlra::MatrixSpec spec;
    spec.cls = maxlra::matrix_class_from_name(class_name);
    spec.n = n;
    spec.band = band;
    spec.factor_rank = factor_rank;
    spec.seed = seed;
    spec.normalize = normalize != 0;
    *out = new maxlra_matrix{maxlra::generate(spec)};
  });
}

maxlra_status maxlra_max_norm(const maxlra_matrix* m, double* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = maxlra::max_norm(m->m); });
}

maxlra_status maxlra_fro_norm(const maxlra_matrix* m, double* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = maxlra::fro_norm(m->m); });
}

maxlra_status maxlra_spectral_norm(const maxlra_matrix* m, double tol,
                                   double* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = maxlra::spectral_norm(m->m, tol); });
}

maxlra_status maxlra_diagnose(const maxlra_matrix* m, double rank_tol,
                              maxlra_diagnostics* out) {
  if (m == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = to_c_diag(maxlra::diagnose(m->m, rank_tol)); });
}

maxlra_status maxlra_bound_report(const maxlra_matrix* m, size_t r,
                                  double hw_constant, double eps_for_ranks,
                                  double rank_tol,
                                  maxlra_diagnostics* diag_out,
                                  maxlra_bounds* bounds_out) {
  if (m == nullptr) return null_arg("matrix");
  if (bounds_out == nullptr) return null_arg("bounds_out");
  return guarded([&] {
    const maxlra::DiagnosticReport rep = maxlra::diagnostic_report(
        m->m, r, hw_constant, eps_for_ranks, rank_tol);
    if (diag_out != nullptr) *diag_out = to_c_diag(rep.diag);
    maxlra_bounds b{};
    b.ultimate = rep.bounds.ultimate;
    b.cross = rep.bounds.cross;
    b.jl_value = rep.bounds.jl.value;
    b.jl_eps = rep.bounds.jl.eps;
    b.jl_valid = rep.bounds.jl.valid ? 1 : 0;
    b.hw_value = rep.bounds.hw.value;
    b.hw_eps = rep.bounds.hw.eps;
    b.hw_valid = rep.bounds.hw.valid ? 1 : 0;
    b.hw_constant = rep.bounds.hw_constant;
    b.alon_rank = rep.bounds.alon_rank;
    b.udell_rank = rep.bounds.udell_rank;
    *bounds_out = b;
  });
}

void maxlra_ap_config_init(maxlra_ap_config* cfg) {
  if (cfg == nullptr) return;
  const maxlra::ApConfig d;
  cfg->eps = d.eps;
  cfg->max_iter = d.max_iter;
  cfg->feas_tol = d.feas_tol;
  cfg->stall_window = d.stall_window;
  cfg->stall_tol = d.stall_tol;
  cfg->oversample = d.oversample;
  cfg->power_iters = d.power_iters;
  cfg->seed = d.seed;
}

maxlra_status maxlra_ap_run(const maxlra_matrix* x, size_t r,
                            const maxlra_ap_config* cfg,
                            maxlra_ap_report* report, double* history,
                            size_t history_cap, size_t* history_len,
                            maxlra_matrix** y_out) {
  if (x == nullptr) return null_arg("matrix");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    const maxlra::ApRun run = maxlra::ap_run(x->m, r, to_ap_config(cfg));
    report->feasible = run.report.feasible ? 1 : 0;
    report->iterations = run.report.iterations;
    report->final_error = run.report.final_error;
    report->stop_reason = to_stop_code(run.report.stop_reason);
    if (history != nullptr) {
      const size_t n =
          std::min(history_cap, run.report.error_history.size());
      std::copy_n(run.report.error_history.begin(), n, history);
      if (history_len != nullptr) *history_len = n;
    } else if (history_len != nullptr) {
      *history_len = run.report.error_history.size();
    }
    if (y_out != nullptr) {
      *y_out = new maxlra_matrix{run.y.reconstruct()};
    }
  });
}

maxlra_status maxlra_estimate_distance(const maxlra_matrix* x, size_t r,
                                       double lo, double hi, double bs_tol,
                                       size_t restarts,
                                       const maxlra_ap_config* cfg,
                                       maxlra_distance* out,
                                       maxlra_matrix** certificate_out) {
  if (x == nullptr) return null_arg("matrix");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const maxlra::DistanceEstimate est = maxlra::estimate_distance(
        x->m, r, lo, hi, bs_tol, restarts, to_ap_config(cfg));
    out->eps_minus = est.eps_minus;
    out->eps_plus = est.eps_plus;
    out->certificate_error = est.certificate_error;
    out->probes = est.probes.size();
    if (certificate_out != nullptr) {
      *certificate_out = new maxlra_matrix{est.certificate.reconstruct()};
    }
  });
}

maxlra_status maxlra_construct(const maxlra_matrix* x, const char* method,
                               size_t r, size_t trials, const char* dist,
                               uint64_t seed,
                               maxlra_construct_report* report,
                               maxlra_matrix** y_out) {
  if (x == nullptr) return null_arg("matrix");
  if (method == nullptr) return null_arg("method");
  if (report == nullptr) return null_arg("report");
  return guarded([&] {
    const std::string m(method);
    maxlra::XiDist xi = maxlra::XiDist::Rademacher;
    if (dist != nullptr) {
      const std::string d(dist);
      if (d == "gaussian") {
        xi = maxlra::XiDist::Gaussian;
      } else {
        maxlra::require(d == "rademacher",
                        maxlra::ErrorCode::InvalidArgument,
                        "dist must be rademacher or gaussian");
      }
    }
    const maxlra::Rng rng(seed);
    maxlra::Approximant a = [&] {
      if (m == "jl") return maxlra::jl_approximant(x->m, r, trials, rng);
      maxlra::require(m == "hw", maxlra::ErrorCode::InvalidArgument,
                      "method must be jl or hw");
      return maxlra::hw_approximant(x->m, r, xi, trials, rng);
    }();
    report->achieved_error = a.report.achieved_error;
    report->theoretical_bound = a.report.theoretical_bound;
    report->bound_eps = a.report.bound_eps;
    report->bound_valid = a.report.bound_valid ? 1 : 0;
    report->trials_used = a.report.trials_used;
    report->best_trial = a.report.best_trial;
    report->best_seed = a.report.best_seed;
    report->rank = a.report.rank;
    if (y_out != nullptr) {
      *y_out = new maxlra_matrix{a.y.reconstruct()};
    }
  });
}

maxlra_status maxlra_sweep_run(const char* config_path, const char* out_dir,
                               int* partial_out) {
  if (config_path == nullptr) return null_arg("config_path");
  return guarded([&] {
    maxlra::SweepSpec spec = maxlra::sweep_spec_from_json_file(config_path);
    if (out_dir != nullptr) spec.output_dir = out_dir;
    const bool partial = maxlra::run_sweep_to_dir(spec);
    if (partial_out != nullptr) *partial_out = partial ? 1 : 0;
  });
}

}  // extern "C"
