#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>

namespace cdrt::quad {

// 15-point Kronrod extension of 7-point Gauss, on [-1, 1].
namespace detail {
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};
}  // namespace detail

struct Estimate {
  double value;
  double error;
};

template <std::invocable<double> F>
Estimate gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resg = 0.0, resk = 0.0;
  const double fc = f(c);
  resk += detail::kWgk[7] * fc;
  resg += detail::kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * detail::kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += detail::kWgk[j] * fsum;
    if (j % 2 == 1) resg += detail::kWg[j / 2] * fsum;
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

/// Adaptive bisection to absolute tolerance.  Throws if the interval budget
/// is exhausted before the error bound is met.
template <std::invocable<double> F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 48) {
  struct Seg {
    double a, b;
    int depth;
  };
  // Explicit stack; worst case max_depth segments deep.
  constexpr int kMaxSegs = 4096;
  Seg stack[kMaxSegs];
  int top = 0;
  stack[top++] = {a, b, 0};
  double total = 0.0;
  long evals = 0;
  while (top > 0) {
    const Seg s = stack[--top];
    const Estimate e = gk15(f, s.a, s.b);
    ++evals;
    if (e.error <= abs_tol * 0.5 * (s.b - s.a) / (b - a) || e.error <= 1e-16 * std::abs(e.value)) {
      total += e.value;
      continue;
    }
    if (s.depth >= max_depth || top + 2 > kMaxSegs || evals > 200000)
      throw std::runtime_error("quadrature: tolerance not met within iteration budget");
    const double m = 0.5 * (s.a + s.b);
    stack[top++] = {s.a, m, s.depth + 1};
    stack[top++] = {m, s.b, s.depth + 1};
  }
  return total;
}

/// Like integrate, but with panels clustered geometrically at the left edge
/// so boundary layers of any width down to (b-a) 2^-48 are sampled instead
/// of slipping between the Kronrod nodes.
template <std::invocable<double> F>
double integrate_layered(F&& f, double a, double b, double abs_tol = 1e-12) {
  constexpr int kPanels = 48;
  const double sub_tol = abs_tol / (kPanels + 1);
  double total = 0.0;
  double prev = a;
  for (int k = kPanels; k >= 1; --k) {
    const double cut = a + (b - a) * std::ldexp(1.0, -k);
    total += integrate(f, prev, cut, sub_tol);
    prev = cut;
  }
  return total + integrate(f, prev, b, sub_tol);
}

/// Integral over [a, inf) via the substitution x = a + scale t/(1-t), with
/// edge-layered panels on both ends of the unit interval.  `scale` should be
/// the characteristic decay length of f past a.
template <std::invocable<double> F>
double integrate_semi_infinite(F&& f, double a, double abs_tol = 1e-12, double scale = 1.0) {
  auto g = [&f, a, scale](double t) {
    const double om = 1.0 - t;
    if (om <= 0.0 || t <= 0.0) return 0.0;
    const double x = a + scale * t / om;
    return f(x) * scale / (om * om);
  };
  const double left = integrate_layered(g, 0.0, 0.5, 0.5 * abs_tol);
  auto g_mirror = [&g](double s) { return g(1.0 - s); };
  const double right = integrate_layered(g_mirror, 0.0, 0.5, 0.5 * abs_tol);
  return left + right;
}

}  // namespace cdrt::quad
