#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdrt/analytic.hpp"
#include "cdrt/montecarlo.hpp"
#include "cdrt/schemes.hpp"

// Parameter sweeps and the EST-vs-rate-threshold optimum search.

namespace cdrt::exp {

enum class SweepAxis { RHO_DB, D_S1, D_SR, RTH, A1_FIXED };
enum class RunMode { MC, ANALYTIC, BOTH };

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::RHO_DB: return "rho_db";
    case SweepAxis::D_S1: return "d_s1";
    case SweepAxis::D_SR: return "d_sr";
    case SweepAxis::RTH: return "rth";
    case SweepAxis::A1_FIXED: return "a1_fixed";
  }
  return "?";
}

inline SweepAxis axis_from_string(const std::string& s) {
  if (s == "rho_db") return SweepAxis::RHO_DB;
  if (s == "d_s1") return SweepAxis::D_S1;
  if (s == "d_sr") return SweepAxis::D_SR;
  if (s == "rth") return SweepAxis::RTH;
  if (s == "a1_fixed") return SweepAxis::A1_FIXED;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::RHO_DB;
  std::vector<double> grid;
  std::vector<SchemeKind> schemes;
  SystemParams fixed;
  long n_trials = 1'000'000;
  std::uint64_t seed = 1;
  RunMode mode = RunMode::BOTH;
  int threads = 1;
};

struct SweepRow {
  double axis_value = 0.0;
  SchemeKind scheme = SchemeKind::DPU;
  RunMode method = RunMode::MC;  // MC or ANALYTIC per row
  std::array<double, 3> op{0.0, 0.0, 0.0};
  std::array<double, 3> se{0.0, 0.0, 0.0};
  bool has_se = false;
  double est = 0.0;
};

inline SystemParams apply_axis(SystemParams p, SweepAxis axis, double v) {
  switch (axis) {
    case SweepAxis::RHO_DB:
      p.rho_s_db = v;
      p.rho_r_db = v;
      break;
    case SweepAxis::D_S1: p.d_s1 = v; break;
    case SweepAxis::D_SR: p.d_sr = v; break;
    case SweepAxis::RTH:
      p.rth_x1 = v;
      p.rth_x2 = v;
      p.rth_x3 = v;
      break;
    case SweepAxis::A1_FIXED: p.a1_fixed = v; break;
  }
  return p;
}

inline void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");
  if (!std::is_sorted(spec.grid.begin(), spec.grid.end(),
                      [](double a, double b) { return a <= b; }))
    throw std::invalid_argument("sweep: grid must be strictly increasing");
  if (spec.schemes.empty()) throw std::invalid_argument("sweep: schemes must be non-empty");
  if (spec.mode == RunMode::ANALYTIC)
    for (SchemeKind s : spec.schemes)
      if (scheme_is_benchmark(s))
        throw std::invalid_argument("sweep: no closed forms exist for benchmark schemes");
  if (spec.n_trials < 1) throw std::invalid_argument("sweep: n_trials must be >= 1");
}

/// One row per (axis value, scheme, method).  Single-antenna schemes run with
/// n_antennas forced to 1; all schemes at one axis value share the seed
/// (common random numbers).
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows;
  for (double v : spec.grid) {
    const SystemParams base = apply_axis(spec.fixed, spec.axis, v);
    for (SchemeKind scheme : spec.schemes) {
      SystemParams p = base;
      if (scheme_is_single_antenna(scheme)) p.n_antennas = 1;
      const DerivedThresholds t = derive_thresholds(p);
      const std::array<double, 3> rth{p.rth_x1, p.rth_x2, p.rth_x3};

      if (spec.mode != RunMode::ANALYTIC) {
        const mc::McResult r = mc::estimate_op(scheme, p, spec.n_trials, spec.seed, spec.threads);
        SweepRow row;
        row.axis_value = v;
        row.scheme = scheme;
        row.method = RunMode::MC;
        for (int s = 0; s < 3; ++s) {
          row.op[s] = r.op[s].p_hat;
          row.se[s] = r.op[s].std_err;
        }
        row.has_se = true;
        row.est = mc::effective_sum_throughput(row.op, rth).psi;
        rows.push_back(row);
      }
      if (spec.mode != RunMode::MC && !scheme_is_benchmark(scheme)) {
        SweepRow row;
        row.axis_value = v;
        row.scheme = scheme;
        row.method = RunMode::ANALYTIC;
        row.op[0] = analytic::op_closed(scheme, analytic::Signal::X1, p, t).p;
        row.op[1] = analytic::op_closed(scheme, analytic::Signal::X2, p, t).p;
        row.op[2] = analytic::op_closed(scheme, analytic::Signal::X3, p, t).p;
        row.has_se = false;
        row.est = mc::effective_sum_throughput(row.op, rth).psi;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

// ---- Scalar maximization: coarse grid + golden-section refinement ----

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

struct MaximizeResult {
  Maximum best;
  std::vector<Maximum> maxima;  // all local maxima, best first
  bool degenerate = false;      // no interior maximum found
};

inline Maximum golden_section_max(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

inline MaximizeResult maximize_scalar(const std::function<double(double)>& f, double lo,
                                      double hi, int grid_points = 200, double tol = 1e-6) {
  if (!(hi > lo)) throw std::invalid_argument("maximize_scalar: empty interval");
  if (grid_points < 3) grid_points = 3;
  std::vector<double> xs(grid_points), ys(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    xs[i] = lo + (hi - lo) * i / (grid_points - 1);
    ys[i] = f(xs[i]);
  }

  MaximizeResult res;
  for (int i = 1; i + 1 < grid_points; ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] > ys[i + 1]) {
      res.maxima.push_back(golden_section_max(f, xs[i - 1], xs[i + 1], tol * (hi - lo)));
    }
  }
  if (res.maxima.empty()) {
    res.degenerate = true;
    const auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
    if (*mx - *mn <= 1e-12 * std::max(1.0, std::abs(*mx))) {
      res.best = {0.5 * (lo + hi), f(0.5 * (lo + hi))};  // flat objective
    } else {
      const std::size_t i = ys[0] >= ys.back() ? 0 : ys.size() - 1;
      res.best = {xs[i], ys[i]};
    }
    return res;
  }
  std::sort(res.maxima.begin(), res.maxima.end(),
            [](const Maximum& a, const Maximum& b) { return a.value > b.value; });
  res.best = res.maxima.front();
  return res;
}

/// Closed-form EST (MC for benchmarks) as a function of a common rate
/// threshold applied to all three signals.
inline double est_of_rth(SchemeKind scheme, SystemParams p, double rth,
                         long mc_trials = 200'000, std::uint64_t seed = 7) {
  p.rth_x1 = p.rth_x2 = p.rth_x3 = rth;
  if (scheme_is_single_antenna(scheme)) p.n_antennas = 1;
  const DerivedThresholds t = derive_thresholds(p);
  std::array<double, 3> ops;
  if (scheme_is_benchmark(scheme)) {
    const mc::McResult r = mc::estimate_op(scheme, p, mc_trials, seed);
    for (int s = 0; s < 3; ++s) ops[s] = r.op[s].p_hat;
  } else {
    ops[0] = analytic::op_closed(scheme, analytic::Signal::X1, p, t).p;
    ops[1] = analytic::op_closed(scheme, analytic::Signal::X2, p, t).p;
    ops[2] = analytic::op_closed(scheme, analytic::Signal::X3, p, t).p;
  }
  return mc::effective_sum_throughput(ops, {rth, rth, rth}).psi;
}

struct RthOptimum {
  double rth_star = 0.0;
  double est_star = 0.0;
  std::vector<Maximum> maxima;
  bool degenerate = false;
};

inline RthOptimum find_optimal_rth(SchemeKind scheme, const SystemParams& params, double lo,
                                   double hi, int grid_points = 200) {
  const MaximizeResult r = maximize_scalar(
      [&](double rth) { return est_of_rth(scheme, params, rth); }, lo, hi, grid_points);
  return {r.best.x, r.best.value, r.maxima, r.degenerate};
}

}  // namespace cdrt::exp
