// Command-line front end. Talks to the library exclusively through the C
// interface in maxlra.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxlra/maxlra.h"

namespace {

int die(maxlra_status status) {
  std::fprintf(stderr, "error (%s): %s\n", maxlra_status_name(status),
               maxlra_last_error());
  return 1;
}

// RAII for matrix handles so early returns cannot leak.
struct MatrixHandle {
  maxlra_matrix* m = nullptr;
  ~MatrixHandle() { maxlra_matrix_destroy(m); }
  maxlra_matrix** out() { return &m; }
};

const char* stop_reason_name(int code) {
  switch (code) {
    case MAXLRA_STOP_CONVERGED:
      return "converged";
    case MAXLRA_STOP_STALLED:
      return "stalled";
    default:
      return "max_iter";
  }
}

struct SolverFlags {
  maxlra_ap_config cfg;
  void attach(CLI::App* cmd) {
    maxlra_ap_config_init(&cfg);
    cmd->add_option("--max-iter", cfg.max_iter, "iteration cap per run");
    cmd->add_option("--feas-tol", cfg.feas_tol,
                    "relative slack on the feasibility test");
    cmd->add_option("--stall-window", cfg.stall_window,
                    "iterations per progress check");
    cmd->add_option("--stall-tol", cfg.stall_tol,
                    "minimal relative progress per window");
    cmd->add_option("--oversample", cfg.oversample,
                    "extra sketch columns for the rank projection");
    cmd->add_option("--power-iters", cfg.power_iters,
                    "power iterations for the rank projection");
    cmd->add_option("--seed", cfg.seed, "random seed");
  }
};

int cmd_gen(const std::string& cls, std::size_t n, std::size_t band,
            std::size_t factor_rank, std::uint64_t seed, bool normalize,
            const std::string& out_path) {
  MatrixHandle m;
  maxlra_status st =
      maxlra_generate(cls.c_str(), n, band == 0 ? n : band, factor_rank, seed,
                      normalize ? 1 : 0, m.out());
  if (st != MAXLRA_OK) return die(st);
  st = maxlra_matrix_write(m.m, out_path.c_str());
  if (st != MAXLRA_OK) return die(st);
  return 0;
}

int cmd_diag(const std::string& in_path, std::size_t r, double hw_constant,
             double eps_for_ranks, double rank_tol, bool csv) {
  MatrixHandle m;
  maxlra_status st = maxlra_matrix_read(in_path.c_str(), m.out());
  if (st != MAXLRA_OK) return die(st);

  maxlra_diagnostics d;
  maxlra_bounds b;
  st = maxlra_bound_report(m.m, r, hw_constant, eps_for_ranks, rank_tol, &d,
                           &b);
  if (st != MAXLRA_OK) return die(st);

  if (csv) {
    std::printf(
        "rows,cols,rank,max_norm,spectral_norm,fro_norm,spikiness,mu_col,"
        "mu_row,r,ultimate_bound,cross_bound,thm4_bound,thm4_eps,thm4_valid,"
        "thm8_bound,thm8_eps,thm8_valid,thm8_C,alon_rank,udell_rank\n");
    std::printf("%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%.17g,"
                "%.17g,%.17g,%.17g,%d,%.17g,%.17g,%d,%.17g,%.17g,%zu\n",
                d.rows, d.cols, d.rank, d.max_norm, d.spectral_norm,
                d.fro_norm, d.spikiness, d.mu_col, d.mu_row, r, b.ultimate,
                b.cross, b.jl_value, b.jl_eps, b.jl_valid, b.hw_value,
                b.hw_eps, b.hw_valid, b.hw_constant, b.alon_rank,
                b.udell_rank);
  } else {
    std::printf("shape           %zu x %zu\n", d.rows, d.cols);
    std::printf("numerical rank  %zu\n", d.rank);
    std::printf("max norm        %.17g\n", d.max_norm);
    std::printf("spectral norm   %.17g\n", d.spectral_norm);
    std::printf("frobenius norm  %.17g\n", d.fro_norm);
    std::printf("spikiness       %.17g\n", d.spikiness);
    std::printf("mu_col          %.17g\n", d.mu_col);
    std::printf("mu_row          %.17g\n", d.mu_row);
    std::printf("bounds at rank  %zu\n", r);
    std::printf("  ultimate      %.17g\n", b.ultimate);
    std::printf("  cross         %.17g\n", b.cross);
    std::printf("  thm4          %.17g (eps %.17g, %s)\n", b.jl_value,
                b.jl_eps, b.jl_valid ? "valid" : "outside guarantee");
    std::printf("  thm8          %.17g (eps %.17g, %s, C %.17g)\n",
                b.hw_value, b.hw_eps,
                b.hw_valid ? "valid" : "outside guarantee", b.hw_constant);
    std::printf("rank for eps    %.17g\n", eps_for_ranks);
    std::printf("  sign-bounded  %.17g\n", b.alon_rank);
    std::printf("  general       %zu\n", b.udell_rank);
  }
  return 0;
}

int cmd_construct(const std::string& in_path, const std::string& method,
                  std::size_t r, std::size_t trials, const std::string& dist,
                  std::uint64_t seed, const std::string& out_path) {
  MatrixHandle m;
  maxlra_status st = maxlra_matrix_read(in_path.c_str(), m.out());
  if (st != MAXLRA_OK) return die(st);

  maxlra_construct_report rep;
  MatrixHandle y;
  st = maxlra_construct(m.m, method.c_str(), r, trials, dist.c_str(), seed,
                        &rep, out_path.empty() ? nullptr : y.out());
  if (st != MAXLRA_OK) return die(st);

  if (!out_path.empty()) {
    st = maxlra_matrix_write(y.m, out_path.c_str());
    if (st != MAXLRA_OK) return die(st);
  }
  std::printf(
      "method,rank,trials_used,best_trial,best_seed,achieved_error,"
      "theoretical_bound,bound_eps,bound_valid\n");
  std::printf("%s,%zu,%zu,%zu,%llu,%.17g,%.17g,%.17g,%d\n", method.c_str(),
              rep.rank, rep.trials_used, rep.best_trial,
              static_cast<unsigned long long>(rep.best_seed),
              rep.achieved_error, rep.theoretical_bound, rep.bound_eps,
              rep.bound_valid);
  return 0;
}

int cmd_approx(const std::string& in_path, std::size_t r, double eps,
               const SolverFlags& solver, const std::string& out_path) {
  MatrixHandle m;
  maxlra_status st = maxlra_matrix_read(in_path.c_str(), m.out());
  if (st != MAXLRA_OK) return die(st);

  maxlra_ap_config cfg = solver.cfg;
  cfg.eps = eps;
  maxlra_ap_report rep;
  MatrixHandle y;
  st = maxlra_ap_run(m.m, r, &cfg, &rep, nullptr, 0, nullptr,
                     out_path.empty() ? nullptr : y.out());
  if (st != MAXLRA_OK) return die(st);

  if (!out_path.empty()) {
    st = maxlra_matrix_write(y.m, out_path.c_str());
    if (st != MAXLRA_OK) return die(st);
  }
  std::printf("feasible,iterations,final_error,stop_reason\n");
  std::printf("%d,%zu,%.17g,%s\n", rep.feasible, rep.iterations,
              rep.final_error, stop_reason_name(rep.stop_reason));
  return 0;
}

int cmd_distance(const std::string& in_path, std::size_t r, double lo,
                 double hi, double bs_tol, std::size_t restarts,
                 const SolverFlags& solver, const std::string& cert_path) {
  MatrixHandle m;
  maxlra_status st = maxlra_matrix_read(in_path.c_str(), m.out());
  if (st != MAXLRA_OK) return die(st);

  maxlra_distance est;
  MatrixHandle cert;
  st = maxlra_estimate_distance(m.m, r, lo, hi, bs_tol, restarts,
                                &solver.cfg, &est,
                                cert_path.empty() ? nullptr : cert.out());
  if (st != MAXLRA_OK) return die(st);

  if (!cert_path.empty()) {
    st = maxlra_matrix_write(cert.m, cert_path.c_str());
    if (st != MAXLRA_OK) return die(st);
  }
  std::printf("eps_minus,eps_plus,certificate_error,probes\n");
  std::printf("%.17g,%.17g,%.17g,%zu\n", est.eps_minus, est.eps_plus,
              est.certificate_error, est.probes);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  int partial = 0;
  const maxlra_status st = maxlra_sweep_run(
      config_path.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
      &partial);
  if (st != MAXLRA_OK) return die(st);
  if (partial != 0) {
    std::fprintf(stderr, "warning: some sweep cells failed; see manifest\n");
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-rank approximation in the maximum norm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() {
    return std::string(maxlra_version());
  });

  // gen
  auto* gen = app.add_subcommand("gen", "generate a test matrix");
  std::string gen_class;
  std::size_t gen_n = 0;
  std::size_t gen_band = 0;
  std::size_t gen_k = 1;
  std::uint64_t gen_seed = 0;
  bool gen_normalize = false;
  std::string gen_out;
  gen->add_option("--class", gen_class,
                  "identity|hadamard|uniform|banded|stiefel-product")
      ->required();
  gen->add_option("--n", gen_n, "matrix size")->required();
  gen->add_option("--band", gen_band, "band width (banded; default n)");
  gen->add_option("--factor-rank", gen_k, "factor rank (stiefel-product)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_flag("--normalize", gen_normalize,
                "scale to unit max norm (stiefel-product)");
  gen->add_option("--out", gen_out, "output matrix file")->required();

  // diag
  auto* diag = app.add_subcommand("diag", "diagnostics and a-priori bounds");
  std::string diag_in;
  std::size_t diag_r = 1;
  double diag_c = 1.0;
  double diag_eps = 0.5;
  double diag_rank_tol = 1e-10;
  bool diag_csv = false;
  diag->add_option("--in", diag_in, "input matrix file")->required();
  diag->add_option("--rank", diag_r, "rank the bounds refer to");
  diag->add_option("--hw-constant", diag_c, "calibration constant C");
  diag->add_option("--eps", diag_eps, "target eps for the rank formulas");
  diag->add_option("--rank-tol", diag_rank_tol,
                   "relative numerical rank cutoff");
  diag->add_flag("--csv", diag_csv, "emit one CSV row instead of text");

  // construct
  auto* con = app.add_subcommand("construct",
                                 "a-priori randomized approximant");
  std::string con_in;
  std::string con_method;
  std::size_t con_r = 1;
  std::size_t con_trials = 5;
  std::string con_dist = "rademacher";
  std::uint64_t con_seed = 0;
  std::string con_out;
  con->add_option("--in", con_in, "input matrix file")->required();
  con->add_option("--method", con_method, "jl|hw")->required();
  con->add_option("--rank", con_r, "target rank")->required();
  con->add_option("--trials", con_trials, "candidates to draw");
  con->add_option("--dist", con_dist, "rademacher|gaussian (hw only)");
  con->add_option("--seed", con_seed, "random seed");
  con->add_option("--out", con_out, "write the approximant here");

  // approx
  auto* ap = app.add_subcommand("approx", "one alternating-projections run");
  std::string ap_in;
  std::size_t ap_r = 1;
  double ap_eps = 0.0;
  std::string ap_out;
  SolverFlags ap_solver;
  ap->add_option("--in", ap_in, "input matrix file")->required();
  ap->add_option("--rank", ap_r, "target rank")->required();
  ap->add_option("--eps", ap_eps, "ball radius around the input")->required();
  ap_solver.attach(ap);
  ap->add_option("--out", ap_out, "write the final iterate here");

  // distance
  auto* dist = app.add_subcommand("distance",
                                  "bracket the rank-r max-norm distance");
  std::string dist_in;
  std::size_t dist_r = 1;
  double dist_lo = 0.0;
  double dist_hi = -1.0;
  double dist_bs_tol = 1e-3;
  std::size_t dist_restarts = 3;
  std::string dist_cert;
  SolverFlags dist_solver;
  dist->add_option("--in", dist_in, "input matrix file")->required();
  dist->add_option("--rank", dist_r, "target rank")->required();
  dist->add_option("--lo", dist_lo, "lower bracket end");
  dist->add_option("--hi", dist_hi, "upper bracket end (<0: max norm)");
  dist->add_option("--bs-tol", dist_bs_tol,
                   "bisection width, relative to the max norm");
  dist->add_option("--restarts", dist_restarts, "attempts per probe");
  dist_solver.attach(dist);
  dist->add_option("--cert", dist_cert, "write the best certificate here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a batch experiment");
  std::string sweep_config;
  std::string sweep_out;
  sweep->add_option("--config", sweep_config, "sweep config (JSON)")
      ->required();
  sweep->add_option("--out", sweep_out, "output directory override");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    return cmd_gen(gen_class, gen_n, gen_band, gen_k, gen_seed, gen_normalize,
                   gen_out);
  }
  if (diag->parsed()) {
    return cmd_diag(diag_in, diag_r, diag_c, diag_eps, diag_rank_tol,
                    diag_csv);
  }
  if (con->parsed()) {
    return cmd_construct(con_in, con_method, con_r, con_trials, con_dist,
                         con_seed, con_out);
  }
  if (ap->parsed()) {
    return cmd_approx(ap_in, ap_r, ap_eps, ap_solver, ap_out);
  }
  if (dist->parsed()) {
    return cmd_distance(dist_in, dist_r, dist_lo, dist_hi, dist_bs_tol,
                        dist_restarts, dist_solver, dist_cert);
  }
  if (sweep->parsed()) {
    return cmd_sweep(sweep_config, sweep_out);
  }
  return 1;
}
