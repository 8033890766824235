#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cdrt/special_functions.hpp"
#include "oracles.hpp"

using cdrt::sf::bessel_k1;
using cdrt::sf::erlang_sf;
using cdrt::sf::phi1;

TEST_CASE("bessel_k1 matches the integral-representation oracle on [1e-6, 50]") {
  // Log-spaced grid straddling the series/continued-fraction seam at x = 2.
  std::vector<double> xs;
  for (double lx = std::log(1e-6); lx <= std::log(50.0) + 1e-12; lx += 0.1)
    xs.push_back(std::exp(lx));
  xs.insert(xs.end(), {1.999, 2.0, 2.001, 50.0});
  for (double x : xs) {
    const double ref = oracle::bessel_k1(x);
    CHECK(std::abs(bessel_k1(x) - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("bessel_k1 small-argument limit x K1(x) -> 1") {
  CHECK(1e-8 * bessel_k1(1e-8) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(1e-6 * bessel_k1(1e-6) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("bessel_k1 at x = 50 matches the asymptotic series") {
  const double x = 50.0;
  const double asym = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * (1.0 + 3.0 / (8.0 * x));
  CHECK(bessel_k1(x) == doctest::Approx(asym).epsilon(1e-3));
}

TEST_CASE("bessel_k1 rejects non-positive arguments") {
  CHECK_THROWS_AS(bessel_k1(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k1(std::nan("")), std::domain_error);
}

TEST_CASE("K1 equals -dK0/dx by central finite differences on [0.5, 10]") {
  for (double x = 0.5; x <= 10.0; x += 0.25) {
    const double h = 1e-6 * x;
    const double fd =
        -(cdrt::sf::detail::bessel_k0(x + h) - cdrt::sf::detail::bessel_k0(x - h)) / (2.0 * h);
    CHECK(std::abs(fd - bessel_k1(x)) <= 1e-6 * bessel_k1(x));
  }
}

TEST_CASE("phi1 basics") {
  CHECK(phi1(0.0) == 1.0);
  CHECK(phi1(4.0) == doctest::Approx(2.0 * bessel_k1(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(phi1(-1e-9), std::domain_error);
}

TEST_CASE("phi1 is decreasing and stays in (0, 1]") {
  double prev = phi1(0.0);
  CHECK(prev == 1.0);
  for (double x = 0.01; x <= 400.0; x *= 1.3) {
    const double v = phi1(x);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("erlang_sf equals regularized upper incomplete gamma Q(n, psi y)") {
  CHECK(std::abs(erlang_sf(10, 1.0, 10.0) - oracle::gamma_q(10.0, 10.0)) <= 1e-12);
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> upsi(0.05, 300.0), uy(0.0, 5.0);
  std::uniform_int_distribution<int> un(1, 32);
  for (int i = 0; i < 400; ++i) {
    const int n = un(gen);
    const double psi = upsi(gen), y = uy(gen);
    CHECK(std::abs(erlang_sf(n, psi, y) - oracle::gamma_q(n, psi * y)) <= 1e-12);
  }
}

TEST_CASE("erlang_sf closed-form corners") {
  CHECK(erlang_sf(1, 2.5, 1.3) == doctest::Approx(std::exp(-2.5 * 1.3)).epsilon(1e-15));
  CHECK(erlang_sf(7, 0.9, 0.0) == 1.0);
  CHECK_THROWS_AS(erlang_sf(0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(erlang_sf(1, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(erlang_sf(1, 1.0, -0.1), std::domain_error);
}

TEST_CASE("erlang_sf is non-increasing in y") {
  for (int n : {1, 3, 10}) {
    double prev = erlang_sf(n, 2.0, 0.0);
    for (double y = 0.1; y <= 20.0; y += 0.1) {
      const double v = erlang_sf(n, 2.0, y);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("erlang_sf matches the empirical tail of a sum of n Exp(psi) draws") {
  const int n = 4;
  const double psi = 3.0;
  const std::size_t samples = 100000;
  std::mt19937_64 gen(7);
  std::exponential_distribution<double> ex(psi);
  std::vector<double> sums(samples);
  for (auto& s : sums) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += ex(gen);
    s = acc;
  }
  const double band = oracle::dkw_band(samples, 0.01);
  const double d =
      oracle::ks_statistic(sums, [&](double y) { return 1.0 - erlang_sf(n, psi, y); });
  CHECK(d <= band);
}
