#include "maxlra/sweep.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "maxlra/diagnostics.hpp"
#include "maxlra/errors.hpp"
#include "maxlra/matio.hpp"
#include "maxlra/version.hpp"

namespace maxlra {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<std::string_view, SweepAxis>, 4> kAxisNames{{
    {"rank", SweepAxis::Rank},
    {"size", SweepAxis::Size},
    {"band", SweepAxis::Band},
    {"factor-rank", SweepAxis::FactorRank},
}};

std::string iso_utc_now() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool family_is_deterministic(MatrixClass cls) {
  return cls == MatrixClass::Identity || cls == MatrixClass::Hadamard;
}

struct CellSeeds {
  std::vector<std::uint64_t> matrix;
  std::vector<std::uint64_t> solver;
};

// One axis cell: `trials` independent distance estimates plus the bound
// columns. Randomness is pinned by (master_seed, cell index, trial index).
SweepRecord run_cell(const SweepSpec& spec, std::size_t cell_index,
                     long value, CellSeeds& seeds) {
  require(value >= 1, ErrorCode::InvalidArgument,
          "run_sweep: axis values must be positive");

  MatrixSpec ms = spec.family;
  std::size_t r = spec.rank;
  switch (spec.axis) {
    case SweepAxis::Rank:
      r = static_cast<std::size_t>(value);
      break;
    case SweepAxis::Size:
      ms.n = static_cast<std::size_t>(value);
      break;
    case SweepAxis::Band:
      ms.band = static_cast<std::size_t>(value);
      break;
    case SweepAxis::FactorRank:
      ms.factor_rank = static_cast<std::size_t>(value);
      break;
  }
  require(r >= 1, ErrorCode::InvalidRank, "run_sweep: rank must be positive");

  SweepRecord rec;
  rec.axis_value = value;
  rec.hw_constant = spec.hw_constant;

  const bool fixed_matrix = family_is_deterministic(ms.cls);
  double ultimate = 0.0;
  DenseMatrix first = identity_matrix(1);
  for (std::size_t t = 0; t < spec.trials; ++t) {
    MatrixSpec trial_ms = ms;
    if (!fixed_matrix) {
      trial_ms.seed = derive_seed(spec.master_seed, cell_index, 2 * t);
    }
    seeds.matrix.push_back(trial_ms.seed);
    const DenseMatrix x = generate(trial_ms);
    if (t == 0) first = x;
    ultimate = std::max(ultimate, max_norm(x));

    ApConfig solver = spec.solver;
    solver.seed = derive_seed(spec.master_seed, cell_index, 2 * t + 1);
    seeds.solver.push_back(solver.seed);
    const DistanceEstimate est = estimate_distance(
        x, r, 0.0, -1.0, spec.bs_tol, spec.restarts, solver);
    rec.trial_eps.push_back(est.eps_plus);
  }

  const Aggregate agg = aggregate(rec.trial_eps);
  rec.trial_count = spec.trials;
  rec.best = agg.best;
  rec.p10 = agg.p10;
  rec.p25 = agg.p25;
  rec.median = agg.median;

  // The spectrum-driven bounds come from the first trial's matrix; the
  // ultimate bound covers every trial (it is each trial's zero-certificate
  // radius, so eps_plus can never exceed it).
  const DiagnosticReport dr = diagnostic_report(first, r, spec.hw_constant,
                                                0.5, spec.rank_tol);
  rec.ultimate_bound = ultimate;
  rec.cross_bound = dr.bounds.cross;
  rec.jl_bound = dr.bounds.jl.value;
  rec.hw_bound = dr.bounds.hw.value;
  return rec;
}

void validate_spec(const SweepSpec& spec) {
  require(!spec.axis_values.empty(), ErrorCode::EmptyInput,
          "run_sweep: no axis values");
  for (std::size_t i = 1; i < spec.axis_values.size(); ++i) {
    require(spec.axis_values[i - 1] < spec.axis_values[i],
            ErrorCode::InvalidArgument,
            "run_sweep: axis values must be strictly increasing");
  }
  require(spec.trials >= 1, ErrorCode::InvalidArgument,
          "run_sweep: trials must be positive");
  require(spec.restarts >= 1, ErrorCode::InvalidArgument,
          "run_sweep: restarts must be positive");
  require(spec.rank >= 1, ErrorCode::InvalidRank,
          "run_sweep: rank must be positive");
  require(std::isfinite(spec.bs_tol) && spec.bs_tol > 0.0,
          ErrorCode::InvalidArgument, "run_sweep: bs_tol must be positive");
  require(std::isfinite(spec.hw_constant) && spec.hw_constant > 0.0,
          ErrorCode::InvalidArgument,
          "run_sweep: hw_constant must be positive");
  require(std::isfinite(spec.rank_tol) && spec.rank_tol > 0.0,
          ErrorCode::InvalidArgument, "run_sweep: rank_tol must be positive");
}

json spec_to_json(const SweepSpec& s) {
  json family{{"class", std::string(matrix_class_name(s.family.cls))},
              {"n", s.family.n},
              {"band", s.family.band},
              {"factor_rank", s.family.factor_rank},
              {"seed", s.family.seed},
              {"normalize", s.family.normalize}};
  json solver{{"max_iter", s.solver.max_iter},
              {"feas_tol", s.solver.feas_tol},
              {"stall_window", s.solver.stall_window},
              {"stall_tol", s.solver.stall_tol},
              {"oversample", s.solver.oversample},
              {"power_iters", s.solver.power_iters}};
  json plots = json::array();
  for (const PlotRequest& p : s.plots) {
    plots.push_back(
        {{"style", p.style == PlotStyle::LogLog ? "loglog" : "semilog"},
         {"file", p.file}});
  }
  return json{{"family", family},
              {"axis", std::string(sweep_axis_name(s.axis))},
              {"axis_values", s.axis_values},
              {"rank", s.rank},
              {"trials", s.trials},
              {"restarts", s.restarts},
              {"bs_tol", s.bs_tol},
              {"hw_constant", s.hw_constant},
              {"rank_tol", s.rank_tol},
              {"solver", solver},
              {"master_seed", s.master_seed},
              {"output_dir", s.output_dir},
              {"record_wall_time", s.record_wall_time},
              {"plots", plots}};
}

void check_keys(const json& j, const std::set<std::string>& known,
                const char* where) {
  for (const auto& item : j.items()) {
    require(known.count(item.key()) != 0, ErrorCode::InvalidArgument,
            std::string("sweep config: unknown key '") + item.key() +
                "' in " + where);
  }
}

// Short deterministic label for axis ticks.
std::string fmt_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Pixel coordinate, two decimals.
std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

SweepAxis sweep_axis_from_name(std::string_view name) {
  for (const auto& [n, a] : kAxisNames) {
    if (n == name) return a;
  }
  fail(ErrorCode::InvalidArgument,
       std::string("unknown sweep axis '") + std::string(name) +
           "' (expected rank|size|band|factor-rank)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
  for (const auto& [n, a] : kAxisNames) {
    if (a == axis) return n;
  }
  fail(ErrorCode::InvalidArgument, "unknown sweep axis");
}

PlotStyle plot_style_from_name(std::string_view name) {
  if (name == "loglog") return PlotStyle::LogLog;
  if (name == "semilog") return PlotStyle::SemiLog;
  fail(ErrorCode::InvalidArgument,
       std::string("unknown plot style '") + std::string(name) +
           "' (expected loglog|semilog)");
}

Aggregate aggregate(std::span<const double> values) {
  require(!values.empty(), ErrorCode::EmptyInput, "aggregate: no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto pct = [&v](double p) {
    const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
  };
  return Aggregate{v.front(), pct(10.0), pct(25.0), pct(50.0)};
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate_spec(spec);

  SweepResult result;
  json jrecords = json::array();
  const std::string started = iso_utc_now();
  const auto run_t0 = std::chrono::steady_clock::now();

  for (std::size_t i = 0; i < spec.axis_values.size(); ++i) {
    const long value = spec.axis_values[i];
    CellSeeds seeds;
    SweepRecord rec;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rec = run_cell(spec, i, value, seeds);
    } catch (const std::exception& ex) {
      rec = SweepRecord{};
      rec.axis_value = value;
      rec.failed = true;
      rec.error = ex.what();
      result.partial_failure = true;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    rec.wall_time_s = spec.record_wall_time ? elapsed : 0.0;

    json jr{{"axis_value", rec.axis_value},
            {"failed", rec.failed},
            {"matrix_seeds", seeds.matrix},
            {"solver_seeds", seeds.solver},
            {"wall_time_s", elapsed}};
    if (rec.failed) {
      jr["error"] = rec.error;
    } else {
      jr["trial_eps"] = rec.trial_eps;
      jr["bounds"] = json{{"ultimate", rec.ultimate_bound},
                          {"cross", rec.cross_bound},
                          {"thm4", rec.jl_bound},
                          {"thm8", rec.hw_bound},
                          {"thm8_C", rec.hw_constant},
                          {"matrix", "trial 0"}};
    }
    jrecords.push_back(std::move(jr));
    result.records.push_back(std::move(rec));
  }

  json manifest{{"version", std::string(kVersion)},
                {"spec", spec_to_json(spec)},
                {"records", jrecords},
                {"partial_failure", result.partial_failure},
                {"started_at", started},
                {"finished_at", iso_utc_now()},
                {"elapsed_s",
                 std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - run_t0)
                     .count()}};
  result.manifest = manifest.dump(2);
  result.manifest.push_back('\n');
  return result;
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& manifest, const std::string& csv_path) {
  require(!records.empty(), ErrorCode::EmptyInput, "emit_csv: no records");

  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const SweepRecord& r : records) {
    if (r.failed) continue;
    out += std::to_string(r.axis_value);
    out.push_back(',');
    out += std::to_string(r.trial_count);
    for (double v : {r.best, r.p10, r.p25, r.median, r.ultimate_bound,
                     r.cross_bound, r.jl_bound, r.hw_bound, r.hw_constant,
                     r.wall_time_s}) {
      out.push_back(',');
      out += to_string_17(v);
    }
    out.push_back('\n');
  }

  std::ofstream f(csv_path, std::ios::binary);
  require(f.good(), ErrorCode::IoError, "emit_csv: cannot open " + csv_path);
  f << out;
  f.flush();
  require(f.good(), ErrorCode::IoError, "emit_csv: write failed");

  std::string stem = csv_path;
  if (stem.size() >= 4 && stem.ends_with(".csv")) {
    stem.resize(stem.size() - 4);
  }
  const std::string mpath = stem + ".manifest.json";
  std::ofstream mf(mpath, std::ios::binary);
  require(mf.good(), ErrorCode::IoError, "emit_csv: cannot open " + mpath);
  mf << manifest;
  mf.flush();
  require(mf.good(), ErrorCode::IoError, "emit_csv: manifest write failed");
}

std::vector<SweepRecord> read_records_csv(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), ErrorCode::IoError, "cannot open " + path);
  std::string line;
  require(static_cast<bool>(std::getline(f, line)), ErrorCode::IoError,
          path + ": empty file");
  require(line == kCsvHeader, ErrorCode::IoError,
          path + ": unexpected CSV header");

  std::vector<SweepRecord> records;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    require(fields.size() == 12, ErrorCode::IoError,
            path + ": expected 12 fields per row");
    const auto num = [&path](const std::string& s) {
      try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        require(used == s.size(), ErrorCode::IoError, path + ": bad number");
        return v;
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail(ErrorCode::IoError, path + ": bad number '" + s + "'");
      }
    };
    SweepRecord r;
    r.axis_value = static_cast<long>(num(fields[0]));
    r.trial_count = static_cast<std::size_t>(num(fields[1]));
    r.best = num(fields[2]);
    r.p10 = num(fields[3]);
    r.p25 = num(fields[4]);
    r.median = num(fields[5]);
    r.ultimate_bound = num(fields[6]);
    r.cross_bound = num(fields[7]);
    r.jl_bound = num(fields[8]);
    r.hw_bound = num(fields[9]);
    r.hw_constant = num(fields[10]);
    r.wall_time_s = num(fields[11]);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

struct PlotFrame {
  double xmin, xmax, ymin, ymax;  // transformed units
  double px0, px1, py0, py1;      // pixel corners (py0 = bottom)
  bool logx = false;

  double px(double tx) const {
    return px0 + (tx - xmin) / (xmax - xmin) * (px1 - px0);
  }
  double py(double ty) const {
    return py0 - (ty - ymin) / (ymax - ymin) * (py0 - py1);
  }
};

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> t;
  const long klo = static_cast<long>(std::ceil(lo - 1e-9));
  const long khi = static_cast<long>(std::floor(hi + 1e-9));
  for (long k = klo; k <= khi; ++k) t.push_back(static_cast<double>(k));
  if (t.size() < 2) t = {lo, 0.5 * (lo + hi), hi};
  return t;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  const double ratio = span / 4.0 / step;
  if (ratio > 5.0) {
    step *= 10.0;
  } else if (ratio > 2.0) {
    step *= 5.0;
  } else if (ratio > 1.0) {
    step *= 2.0;
  }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span;
       v += step) {
    t.push_back(v);
  }
  if (t.size() < 2) t = {lo, hi};
  return t;
}

using Points = std::vector<std::pair<double, double>>;

void append_polyline(std::string& svg, const PlotFrame& fr, const Points& pts,
                     const char* color, const char* dash, double width) {
  if (pts.size() < 2) return;
  svg += "<polyline fill=\"none\" stroke=\"";
  svg += color;
  svg += "\" stroke-width=\"";
  svg += fmt_px(width);
  svg += "\"";
  if (dash != nullptr) {
    svg += " stroke-dasharray=\"";
    svg += dash;
    svg += "\"";
  }
  svg += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) svg.push_back(' ');
    svg += fmt_px(fr.px(pts[i].first));
    svg.push_back(',');
    svg += fmt_px(fr.py(pts[i].second));
  }
  svg += "\"/>\n";
}

}  // namespace

void emit_plot(const std::vector<SweepRecord>& records, PlotStyle style,
               const std::string& path) {
  require(!records.empty(), ErrorCode::EmptyInput, "emit_plot: no records");
  const bool logx = style == PlotStyle::LogLog;

  const auto tx = [logx](double x) { return logx ? std::log10(x) : x; };
  const auto ty = [](double y) { return std::log10(y); };
  const auto drawable = [logx](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && y > 0.0 &&
           (!logx || x > 0.0);
  };

  Points median, best, ultimate, cross, hw;
  Points band_lo, band_hi;
  for (const SweepRecord& r : records) {
    if (r.failed) continue;
    const double x = static_cast<double>(r.axis_value);
    if (drawable(x, r.median)) median.emplace_back(tx(x), ty(r.median));
    if (drawable(x, r.best)) best.emplace_back(tx(x), ty(r.best));
    if (drawable(x, r.ultimate_bound)) {
      ultimate.emplace_back(tx(x), ty(r.ultimate_bound));
    }
    if (drawable(x, r.cross_bound)) cross.emplace_back(tx(x), ty(r.cross_bound));
    if (drawable(x, r.hw_bound)) hw.emplace_back(tx(x), ty(r.hw_bound));
    if (drawable(x, r.p10) && drawable(x, r.p25)) {
      band_lo.emplace_back(tx(x), ty(r.p10));
      band_hi.emplace_back(tx(x), ty(r.p25));
    }
  }
  require(!median.empty() || !best.empty(), ErrorCode::EmptyInput,
          "emit_plot: no drawable points");

  PlotFrame fr{};
  fr.logx = logx;
  fr.xmin = fr.ymin = std::numeric_limits<double>::infinity();
  fr.xmax = fr.ymax = -std::numeric_limits<double>::infinity();
  for (const Points* s : {&median, &best, &ultimate, &cross, &hw, &band_lo,
                          &band_hi}) {
    for (const auto& [x, y] : *s) {
      fr.xmin = std::min(fr.xmin, x);
      fr.xmax = std::max(fr.xmax, x);
      fr.ymin = std::min(fr.ymin, y);
      fr.ymax = std::max(fr.ymax, y);
    }
  }
  if (fr.xmax - fr.xmin < 1e-12) {
    fr.xmin -= 0.5;
    fr.xmax += 0.5;
  }
  if (fr.ymax - fr.ymin < 1e-12) {
    fr.ymin -= 0.5;
    fr.ymax += 0.5;
  }
  const double xpad = 0.05 * (fr.xmax - fr.xmin);
  const double ypad = 0.08 * (fr.ymax - fr.ymin);
  fr.xmin -= xpad;
  fr.xmax += xpad;
  fr.ymin -= ypad;
  fr.ymax += ypad;

  const double width = 760.0;
  const double height = 500.0;
  fr.px0 = 70.0;
  fr.px1 = width - 170.0;
  fr.py0 = height - 55.0;
  fr.py1 = 22.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  svg += fmt_label(width);
  svg += "\" height=\"";
  svg += fmt_label(height);
  svg += "\" viewBox=\"0 0 ";
  svg += fmt_label(width);
  svg.push_back(' ');
  svg += fmt_label(height);
  svg += "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<g font-family=\"DejaVu Sans, sans-serif\" font-size=\"12\" "
         "fill=\"#303030\">\n";

  // frame
  svg += "<rect x=\"" + fmt_px(fr.px0) + "\" y=\"" + fmt_px(fr.py1) +
         "\" width=\"" + fmt_px(fr.px1 - fr.px0) + "\" height=\"" +
         fmt_px(fr.py0 - fr.py1) +
         "\" fill=\"none\" stroke=\"#505050\" stroke-width=\"1\"/>\n";

  // ticks
  const std::vector<double> xticks =
      logx ? log_ticks(fr.xmin, fr.xmax) : linear_ticks(fr.xmin, fr.xmax);
  for (double t : xticks) {
    const double x = fr.px(t);
    svg += "<line x1=\"" + fmt_px(x) + "\" y1=\"" + fmt_px(fr.py0) +
           "\" x2=\"" + fmt_px(x) + "\" y2=\"" + fmt_px(fr.py0 + 5.0) +
           "\" stroke=\"#505050\"/>\n";
    svg += "<line x1=\"" + fmt_px(x) + "\" y1=\"" + fmt_px(fr.py0) +
           "\" x2=\"" + fmt_px(x) + "\" y2=\"" + fmt_px(fr.py1) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>\n";
    const double label = logx ? std::pow(10.0, t) : t;
    svg += "<text x=\"" + fmt_px(x) + "\" y=\"" + fmt_px(fr.py0 + 19.0) +
           "\" text-anchor=\"middle\">" + fmt_label(label) + "</text>\n";
  }
  for (double t : log_ticks(fr.ymin, fr.ymax)) {
    const double y = fr.py(t);
    svg += "<line x1=\"" + fmt_px(fr.px0 - 5.0) + "\" y1=\"" + fmt_px(y) +
           "\" x2=\"" + fmt_px(fr.px0) + "\" y2=\"" + fmt_px(y) +
           "\" stroke=\"#505050\"/>\n";
    svg += "<line x1=\"" + fmt_px(fr.px0) + "\" y1=\"" + fmt_px(y) +
           "\" x2=\"" + fmt_px(fr.px1) + "\" y2=\"" + fmt_px(y) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>\n";
    svg += "<text x=\"" + fmt_px(fr.px0 - 9.0) + "\" y=\"" + fmt_px(y + 4.0) +
           "\" text-anchor=\"end\">" + fmt_label(std::pow(10.0, t)) +
           "</text>\n";
  }

  // band between p10 and p25
  if (band_lo.size() >= 2) {
    svg += "<polygon fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"none\" "
           "points=\"";
    for (std::size_t i = 0; i < band_hi.size(); ++i) {
      if (i > 0) svg.push_back(' ');
      svg += fmt_px(fr.px(band_hi[i].first));
      svg.push_back(',');
      svg += fmt_px(fr.py(band_hi[i].second));
    }
    for (std::size_t i = band_lo.size(); i-- > 0;) {
      svg.push_back(' ');
      svg += fmt_px(fr.px(band_lo[i].first));
      svg.push_back(',');
      svg += fmt_px(fr.py(band_lo[i].second));
    }
    svg += "\"/>\n";
  }

  append_polyline(svg, fr, ultimate, "#2ca02c", "7 4", 1.5);
  append_polyline(svg, fr, cross, "#9467bd", "4 4", 1.5);
  append_polyline(svg, fr, hw, "#ff7f0e", "2 3", 1.5);
  append_polyline(svg, fr, median, "#1f77b4", nullptr, 2.0);
  for (const auto& [x, y] : best) {
    svg += "<circle cx=\"" + fmt_px(fr.px(x)) + "\" cy=\"" +
           fmt_px(fr.py(y)) + "\" r=\"3.5\" fill=\"#d62728\"/>\n";
  }

  // axis labels
  svg += "<text x=\"" + fmt_px(0.5 * (fr.px0 + fr.px1)) + "\" y=\"" +
         fmt_px(fr.py0 + 40.0) + "\" text-anchor=\"middle\">axis value"
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt_px(0.5 * (fr.py0 + fr.py1)) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt_px(0.5 * (fr.py0 + fr.py1)) + ")\">max-norm error</text>\n";

  // legend
  struct LegendRow {
    const char* name;
    const char* color;
    const char* dash;
    bool marker;
    bool present;
  };
  const LegendRow rows[] = {
      {"median", "#1f77b4", nullptr, false, median.size() >= 2},
      {"p10-p25", "#1f77b4", nullptr, false, band_lo.size() >= 2},
      {"best", "#d62728", nullptr, true, !best.empty()},
      {"ultimate", "#2ca02c", "7 4", false, ultimate.size() >= 2},
      {"cross", "#9467bd", "4 4", false, cross.size() >= 2},
      {"thm8", "#ff7f0e", "2 3", false, hw.size() >= 2},
  };
  double ly = fr.py1 + 14.0;
  const double lx = fr.px1 + 16.0;
  for (const LegendRow& row : rows) {
    if (!row.present) continue;
    if (row.marker) {
      svg += "<circle cx=\"" + fmt_px(lx + 14.0) + "\" cy=\"" +
             fmt_px(ly - 4.0) + "\" r=\"3.5\" fill=\"" +
             std::string(row.color) + "\"/>\n";
    } else {
      svg += "<line x1=\"" + fmt_px(lx) + "\" y1=\"" + fmt_px(ly - 4.0) +
             "\" x2=\"" + fmt_px(lx + 28.0) + "\" y2=\"" + fmt_px(ly - 4.0) +
             "\" stroke=\"" + row.color + "\" stroke-width=\"2\"";
      if (row.dash != nullptr) {
        svg += " stroke-dasharray=\"";
        svg += row.dash;
        svg += "\"";
      }
      svg += "/>\n";
    }
    svg += "<text x=\"" + fmt_px(lx + 34.0) + "\" y=\"" + fmt_px(ly) +
           "\">" + row.name + "</text>\n";
    ly += 18.0;
  }

  svg += "</g>\n</svg>\n";

  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::IoError, "emit_plot: cannot open " + path);
  f << svg;
  f.flush();
  require(f.good(), ErrorCode::IoError, "emit_plot: write failed");
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    fail(ErrorCode::IoError, std::string("sweep config: ") + ex.what());
  }
  require(j.is_object(), ErrorCode::InvalidArgument,
          "sweep config: expected a JSON object");

  SweepSpec s;
  try {
    check_keys(j, {"family", "axis", "axis_values", "rank", "trials",
                   "restarts", "bs_tol", "hw_constant", "rank_tol", "solver",
                   "master_seed", "output_dir", "record_wall_time", "plots"},
               "the top-level object");
    require(j.contains("family") && j.contains("axis") &&
                j.contains("axis_values"),
            ErrorCode::InvalidArgument,
            "sweep config: family, axis, and axis_values are required");

    const json& jf = j.at("family");
    check_keys(jf, {"class", "n", "band", "factor_rank", "seed", "normalize"},
               "family");
    s.family.cls =
        matrix_class_from_name(jf.at("class").get<std::string>());
    s.family.n = jf.at("n").get<std::size_t>();
    s.family.band = jf.value("band", s.family.n);
    s.family.factor_rank = jf.value("factor_rank", std::size_t{1});
    s.family.seed = jf.value("seed", std::uint64_t{0});
    s.family.normalize = jf.value("normalize", false);

    s.axis = sweep_axis_from_name(j.at("axis").get<std::string>());
    s.axis_values = j.at("axis_values").get<std::vector<long>>();
    s.rank = j.value("rank", std::size_t{1});
    s.trials = j.value("trials", std::size_t{5});
    s.restarts = j.value("restarts", std::size_t{3});
    s.bs_tol = j.value("bs_tol", 1e-3);
    s.hw_constant = j.value("hw_constant", 1.0);
    s.rank_tol = j.value("rank_tol", 1e-10);
    s.master_seed = j.value("master_seed", std::uint64_t{0});
    s.output_dir = j.value("output_dir", std::string("."));
    s.record_wall_time = j.value("record_wall_time", false);

    if (j.contains("solver")) {
      const json& js = j.at("solver");
      check_keys(js, {"max_iter", "feas_tol", "stall_window", "stall_tol",
                      "oversample", "power_iters"},
                 "solver");
      s.solver.max_iter = js.value("max_iter", s.solver.max_iter);
      s.solver.feas_tol = js.value("feas_tol", s.solver.feas_tol);
      s.solver.stall_window = js.value("stall_window", s.solver.stall_window);
      s.solver.stall_tol = js.value("stall_tol", s.solver.stall_tol);
      s.solver.oversample = js.value("oversample", s.solver.oversample);
      s.solver.power_iters = js.value("power_iters", s.solver.power_iters);
    }
    if (j.contains("plots")) {
      for (const json& jp : j.at("plots")) {
        check_keys(jp, {"style", "file"}, "plots");
        PlotRequest p;
        p.style = plot_style_from_name(jp.value("style", "loglog"));
        p.file = jp.value("file", std::string("sweep.svg"));
        s.plots.push_back(std::move(p));
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorCode::InvalidArgument,
         std::string("sweep config: ") + ex.what());
  }

  validate_spec(s);
  return s;
}

SweepSpec sweep_spec_from_json_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return sweep_spec_from_json_text(buf.str());
}

bool run_sweep_to_dir(const SweepSpec& spec) {
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  require(!ec, ErrorCode::IoError,
          "cannot create output directory " + spec.output_dir);

  const SweepResult result = run_sweep(spec);
  const std::filesystem::path dir(spec.output_dir);
  emit_csv(result.records, result.manifest, (dir / "results.csv").string());
  for (const PlotRequest& p : spec.plots) {
    emit_plot(result.records, p.style, (dir / p.file).string());
  }
  return result.partial_failure;
}

}  // namespace maxlra
