#pragma once

#include <stdexcept>
#include <string>

#include "cdrt/experiments.hpp"

namespace cdrt::exp {

namespace detail {
inline std::vector<double> linspace(double lo, double hi, double step) {
  std::vector<double> g;
  for (double v = lo; v <= hi + 1e-9; v += step) g.push_back(v);
  return g;
}
}  // namespace detail

/// Built-in sweep specs reproducing the standard figure axes.  Trials, seed
/// and threads can be overridden afterwards.
inline SweepSpec preset_spec(const std::string& name) {
  SweepSpec s;  // default parameter set
  const std::vector<SchemeKind> main3{SchemeKind::DPU, SchemeKind::DPR, SchemeKind::MDPR};
  const std::vector<SchemeKind> all6{SchemeKind::DPU,  SchemeKind::DPR,  SchemeKind::MDPR,
                                     SchemeKind::BEN1, SchemeKind::BEN2, SchemeKind::BEN3};
  if (name == "fig2") {
    s.axis = SweepAxis::RHO_DB;
    s.grid = detail::linspace(0, 40, 5);
    s.schemes = all6;
    s.mode = RunMode::BOTH;
  } else if (name == "fig3") {
    s.axis = SweepAxis::D_SR;
    s.grid = {10, 15, 20};
    s.schemes = main3;
    s.mode = RunMode::BOTH;
    s.fixed.rho_s_db = s.fixed.rho_r_db = 20;
  } else if (name == "fig4") {
    s.axis = SweepAxis::RHO_DB;
    s.grid = detail::linspace(0, 40, 5);
    s.schemes = main3;
    s.mode = RunMode::BOTH;
    s.fixed.rth_x1 = s.fixed.rth_x2 = s.fixed.rth_x3 = 0.5;
  } else if (name == "fig5") {
    s.axis = SweepAxis::RTH;
    s.grid = detail::linspace(0.05, 2.0, 0.05);
    s.schemes = main3;
    s.mode = RunMode::ANALYTIC;
    s.fixed.rho_s_db = s.fixed.rho_r_db = 23;
  } else if (name == "fig6") {
    s.axis = SweepAxis::RHO_DB;
    s.grid = detail::linspace(0, 40, 5);
    s.schemes = {SchemeKind::DPU, SchemeKind::DPR, SchemeKind::BEN1, SchemeKind::BEN2};
    s.mode = RunMode::BOTH;
    s.fixed.a1_fixed = 0.2;
  } else if (name == "fig7") {
    s.axis = SweepAxis::A1_FIXED;
    s.grid = detail::linspace(0.05, 0.95, 0.05);
    s.schemes = {SchemeKind::BEN1, SchemeKind::BEN2};
    s.mode = RunMode::MC;
    s.fixed.rho_s_db = s.fixed.rho_r_db = 35;
  } else {
    throw std::invalid_argument("unknown preset: " + name + " (expected fig2..fig7)");
  }
  return s;
}

}  // namespace cdrt::exp
