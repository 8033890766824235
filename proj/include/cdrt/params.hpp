#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdrt {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Full experiment configuration.  Distances in meters, gains linear,
/// rate thresholds in nats/s/Hz, transmit SNRs in dB.
struct SystemParams {
  double d_s1 = 10.0;
  double d_sr = 15.0;
  double d_r1 = 15.0;
  double d_r2 = 10.0;
  double alpha = 2.0;
  int n_antennas = 10;
  double rho_s_db = 20.0;
  double rho_r_db = 20.0;
  double g0 = 1.0;     // mainlobe gain
  double eta = 0.7;    // sidelobe attenuation
  double rth_x1 = 0.2;
  double rth_x2 = 0.2;
  double rth_x3 = 0.2;
  double a1_fixed = 0.2;  // FPA coefficient (Ben1/Ben2)
  bool ben2_beam_toward_relay = false;  // default beam target is U1

  double rho_s() const { return db_to_linear(rho_s_db); }
  double rho_r() const { return db_to_linear(rho_r_db); }

  // Average channel gains lambda = d^-alpha and their inverses.
  double lambda_s1() const { return std::pow(d_s1, -alpha); }
  double lambda_sr() const { return std::pow(d_sr, -alpha); }
  double lambda_r1() const { return std::pow(d_r1, -alpha); }
  double lambda_r2() const { return std::pow(d_r2, -alpha); }
  double psi_s1() const { return 1.0 / lambda_s1(); }
  double psi_sr() const { return 1.0 / lambda_sr(); }
  double psi_r1() const { return 1.0 / lambda_r1(); }
  double psi_r2() const { return 1.0 / lambda_r2(); }
};

inline void validate(const SystemParams& p) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SystemParams: " + msg); };
  if (!(p.d_s1 > 0.0)) fail("d_s1 must be > 0");
  if (!(p.d_sr > 0.0)) fail("d_sr must be > 0");
  if (!(p.d_r1 > 0.0)) fail("d_r1 must be > 0");
  if (!(p.d_r2 > 0.0)) fail("d_r2 must be > 0");
  if (!(p.alpha >= 0.0)) fail("alpha must be >= 0");
  if (p.n_antennas < 1) fail("n_antennas must be >= 1");
  if (!(p.g0 > 0.0)) fail("g0 must be > 0");
  if (!(p.eta > 0.0 && p.eta < 1.0)) fail("eta must be in (0,1)");
  if (!(p.rth_x1 > 0.0)) fail("rth_x1 must be > 0");
  if (!(p.rth_x2 > 0.0)) fail("rth_x2 must be > 0");
  if (!(p.rth_x3 > 0.0)) fail("rth_x3 must be > 0");
  if (!(p.a1_fixed > 0.0 && p.a1_fixed < 1.0)) fail("a1_fixed must be in (0,1)");
  if (!std::isfinite(p.rho_s_db) || !std::isfinite(p.rho_r_db)) fail("rho must be finite");
}

/// SNR thresholds and the power-allocation constants every formula consumes.
struct DerivedThresholds {
  double theta1;  // exp(2 Rth_x1) - 1
  double theta2;  // exp(2 Rth_x2) - 1
  double theta3;  // exp(2 Rth_x3) - 1
  double theta;   // 1 / (1 + theta2), cap on a1
  double tau1;    // theta2 / rho_s, minimum gain for NOMA service
  double tau2;    // (exp(4 Rth_x2) - 1) / rho_s, OMA quarter-slot threshold
};

inline DerivedThresholds derive_thresholds(const SystemParams& p) {
  validate(p);
  DerivedThresholds t;
  t.theta1 = std::expm1(2.0 * p.rth_x1);
  t.theta2 = std::expm1(2.0 * p.rth_x2);
  t.theta3 = std::expm1(2.0 * p.rth_x3);
  t.theta = 1.0 / (1.0 + t.theta2);
  t.tau1 = t.theta2 / p.rho_s();
  t.tau2 = std::expm1(4.0 * p.rth_x2) / p.rho_s();
  return t;
}

}  // namespace cdrt
