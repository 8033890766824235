#pragma once

#include <cmath>
#include <stdexcept>

// Scalar special functions needed by the closed-form outage expressions:
// the modified Bessel function K1 (with K0 as an internal helper), the
// map phi1(x) = sqrt(x) K1(sqrt(x)), and the Erlang survival function.

namespace cdrt::sf {

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// Power series for I0/I1, adequate for |x| <= 2.
inline double bessel_i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

inline double bessel_i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < 40; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

struct K0K1 {
  double k0;
  double k1;
};

// Series branch, x in (0, 2].  A&S 9.6.11 / 9.6.13.
inline K0K1 bessel_k_series(double x) {
  const double lhalf = std::log(0.5 * x);
  const double q = 0.25 * x * x;

  double term = 1.0, sum0 = 0.0, hk = 0.0;
  for (int k = 1; k < 40; ++k) {
    term *= q / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    sum0 += term * hk;
    if (term * hk < 1e-18 * (sum0 + 1.0)) break;
  }
  const double k0 = -(lhalf + kEulerGamma) * bessel_i0_series(x) + sum0;

  // sum over [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!), psi(1) = -gamma
  double psum = 0.0;
  double fterm = 1.0;  // q^k / (k! (k+1)!)
  double psi_a = -kEulerGamma, psi_b = 1.0 - kEulerGamma;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      fterm *= q / (static_cast<double>(k) * (k + 1));
      psi_a += 1.0 / k;
      psi_b += 1.0 / (k + 1);
    }
    const double t = fterm * (psi_a + psi_b);
    psum += t;
    if (std::abs(t) < 1e-18 * std::abs(psum)) break;
  }
  const double k1 = lhalf * bessel_i1_series(x) + 1.0 / x - 0.25 * x * psum;
  return {k0, k1};
}

// Steed's continued fraction (CF2), x >= 2.  Full double accuracy.
inline K0K1 bessel_k_cf2(double x) {
  constexpr double eps = 1e-16;
  const double a1 = 0.25;  // 0.25 - mu^2 with mu = 0
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

inline K0K1 bessel_k01(double x) {
  return x <= 2.0 ? bessel_k_series(x) : bessel_k_cf2(x);
}

inline double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
  return bessel_k01(x).k0;
}

}  // namespace detail

/// Modified Bessel function of the second kind, order 1.
inline double bessel_k1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
  return detail::bessel_k01(x).k1;
}

/// phi1(x) = sqrt(x) K1(sqrt(x)), continuously extended to phi1(0) = 1.
inline double phi1(double x) {
  if (!(x >= 0.0)) throw std::domain_error("phi1: requires x >= 0");
  if (x == 0.0) return 1.0;
  const double z = std::sqrt(x);
  return z * bessel_k1(z);
}

/// Survival function of an Erlang(n_terms, psi) variable at y:
/// exp(-psi y) sum_{m=0}^{n-1} (psi y)^m / m!, i.e. Q(n, psi y).
inline double erlang_sf(int n_terms, double psi, double y) {
  if (n_terms < 1) throw std::domain_error("erlang_sf: requires n_terms >= 1");
  if (!(psi > 0.0)) throw std::domain_error("erlang_sf: requires psi > 0");
  if (!(y >= 0.0)) throw std::domain_error("erlang_sf: requires y >= 0");
  const double z = psi * y;
  // Folding exp(-z) into the recurrence keeps every partial term bounded.
  double term = std::exp(-z);
  double sum = term;
  for (int m = 1; m < n_terms; ++m) {
    term *= z / m;
    sum += term;
  }
  if (sum > 1.0) sum = 1.0;
  if (sum < 0.0) sum = 0.0;
  return sum;
}

}  // namespace cdrt::sf
