#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxlra/apsolve.hpp"
#include "maxlra/genmat.hpp"

namespace maxlra {

enum class SweepAxis {
  Rank,
  Size,
  Band,
  FactorRank,
};

SweepAxis sweep_axis_from_name(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

enum class PlotStyle {
  LogLog,   // log x, log y
  SemiLog,  // linear x, log y
};

PlotStyle plot_style_from_name(std::string_view name);

struct PlotRequest {
  PlotStyle style = PlotStyle::LogLog;
  std::string file = "sweep.svg";
};

// One experiment family: a matrix class, an axis to vary, and the solver
// settings shared by every cell. master_seed pins all randomness.
struct SweepSpec {
  MatrixSpec family;
  SweepAxis axis = SweepAxis::Rank;
  std::vector<long> axis_values;
  std::size_t rank = 1;  // fixed target rank when the axis is not Rank
  std::size_t trials = 5;
  std::size_t restarts = 3;
  double bs_tol = 1e-3;
  double hw_constant = 1.0;
  double rank_tol = 1e-10;
  ApConfig solver;
  std::uint64_t master_seed = 0;
  std::string output_dir = ".";
  // The manifest always carries measured wall times; the CSV column reports
  // them only when this is set, so that by default two runs of the same spec
  // produce byte-identical CSV.
  bool record_wall_time = false;
  std::vector<PlotRequest> plots;
};

struct SweepRecord {
  long axis_value = 0;
  std::size_t trial_count = 0;
  double best = 0.0;
  double p10 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double ultimate_bound = 0.0;
  double cross_bound = 0.0;
  double jl_bound = 0.0;  // emitted as the thm4_bound column
  double hw_bound = 0.0;  // emitted as the thm8_bound column
  double hw_constant = 1.0;
  double wall_time_s = 0.0;
  std::vector<double> trial_eps;  // per-trial certified radii
  bool failed = false;
  std::string error;
};

struct Aggregate {
  double best = 0.0;
  double p10 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
};

// Percentiles with linear interpolation between order statistics;
// best is the minimum.
Aggregate aggregate(std::span<const double> values);

struct SweepResult {
  std::vector<SweepRecord> records;  // failed cells stay in, flagged
  std::string manifest;              // JSON sidecar content
  bool partial_failure = false;
};

SweepResult run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "axis,trial_count,best,p10,p25,median,ultimate_bound,cross_bound,"
    "thm4_bound,thm8_bound,thm8_C,wall_time_s";

// One CSV row per successful record (17 significant digits throughout) plus
// a "<stem>.manifest.json" sidecar next to the CSV.
void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& manifest, const std::string& csv_path);

// Round-trip reader for emit_csv output.
std::vector<SweepRecord> read_records_csv(const std::string& path);

// Self-contained SVG: median line, p10-p25 band, best markers, and the
// ultimate/cross/thm8 bound overlays.
void emit_plot(const std::vector<SweepRecord>& records, PlotStyle style,
               const std::string& path);

SweepSpec sweep_spec_from_json_text(const std::string& text);
SweepSpec sweep_spec_from_json_file(const std::string& path);

// run_sweep + results.csv + manifest + requested plots, all under
// spec.output_dir. Returns true when some cells failed.
bool run_sweep_to_dir(const SweepSpec& spec);

}  // namespace maxlra
