#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "cdrt/channel.hpp"
#include "cdrt/params.hpp"

// Per-trial ground truth: given one fading realization, decide outage of
// x1, x2, x3 under each scheme of the comparison set.  All rate checks are
// done on the raw SNR inequalities; a rate of R nats over a half slot needs
// SNR >= exp(2R)-1, over a quarter slot exp(4R)-1.

namespace cdrt {

enum class SchemeKind { DPU, DPR, MDPR, BEN1, BEN2, BEN3 };

inline const char* to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::DPU: return "DPU";
    case SchemeKind::DPR: return "DPR";
    case SchemeKind::MDPR: return "MDPR";
    case SchemeKind::BEN1: return "Ben1";
    case SchemeKind::BEN2: return "Ben2";
    case SchemeKind::BEN3: return "Ben3";
  }
  return "?";
}

inline SchemeKind scheme_from_string(const std::string& s) {
  if (s == "DPU" || s == "dpu") return SchemeKind::DPU;
  if (s == "DPR" || s == "dpr") return SchemeKind::DPR;
  if (s == "MDPR" || s == "mdpr") return SchemeKind::MDPR;
  if (s == "Ben1" || s == "ben1" || s == "BEN1") return SchemeKind::BEN1;
  if (s == "Ben2" || s == "ben2" || s == "BEN2") return SchemeKind::BEN2;
  if (s == "Ben3" || s == "ben3" || s == "BEN3") return SchemeKind::BEN3;
  throw std::invalid_argument("unknown scheme: " + s);
}

inline bool scheme_is_benchmark(SchemeKind s) {
  return s == SchemeKind::BEN1 || s == SchemeKind::BEN2 || s == SchemeKind::BEN3;
}

inline bool scheme_is_single_antenna(SchemeKind s) {
  return s == SchemeKind::DPU || s == SchemeKind::DPR || s == SchemeKind::BEN1;
}

struct OutageFlags {
  bool out_x1 = false;
  bool out_x2 = false;
  bool out_x3 = false;
};

enum class Branch { SYSTEM_DOWN, NOMA, OMA_DECODED_X2, OMA_UNDECODED_X2 };

struct TrialBranch {
  Branch branch = Branch::NOMA;
  std::optional<double> a1_used;  // present iff branch == NOMA under a DPA scheme
};

struct TrialOutcome {
  OutageFlags flags;
  TrialBranch branch;
};

/// Boundary of constraint a1 <= theta (1 - tau1/gain); absent when the
/// system cannot work normally (gain <= tau1).
inline std::optional<double> dpa_coefficient(double gain, const DerivedThresholds& t) {
  if (!(gain > 0.0)) throw std::domain_error("dpa_coefficient: requires gain > 0");
  if (gain <= t.tau1) return std::nullopt;
  return t.theta * (1.0 - t.tau1 / gain);
}

namespace detail {

// SIC step 1: x2 decodable from the superposition at effective gain `g`.
inline bool decodes_x2(double a1, double rho, double g, double theta2) {
  return (1.0 - a1) * rho * g >= theta2 * (1.0 + a1 * rho * g);
}

inline void require_single_antenna(const SystemParams& p, const char* who) {
  if (p.n_antennas != 1)
    throw std::invalid_argument(std::string(who) + ": defined for n_antennas == 1");
}

inline TrialOutcome all_outage() {
  return {{true, true, true}, {Branch::SYSTEM_DOWN, std::nullopt}};
}

}  // namespace detail

/// DPA keyed to the S-U1 gain Y1; U1's x2 decode holds by construction.
inline TrialOutcome evaluate_dpu(const SystemParams& p, const DerivedThresholds& t,
                                 const ChannelRealization& ch) {
  detail::require_single_antenna(p, "evaluate_dpu");
  const double rho_s = p.rho_s(), rho_r = p.rho_r();
  const double y1 = ch.norm2_s1;  // |h_s1|^2
  const double x1 = ch.norm2_sr;  // |h_sr|^2
  const auto a1 = dpa_coefficient(y1, t);
  if (!a1) return detail::all_outage();

  TrialOutcome out;
  out.branch = {Branch::NOMA, a1};
  out.flags.out_x1 = *a1 * rho_s * y1 < t.theta1;
  const bool relay_decodes = detail::decodes_x2(*a1, rho_s, x1, t.theta2);
  out.flags.out_x2 = !(relay_decodes && rho_r * std::norm(ch.h_r2) >= t.theta2);
  out.flags.out_x3 = rho_s * y1 < t.theta3;
  return out;
}

/// DPA keyed to the S-R gain X1; the relay's x2 decode holds by construction.
inline TrialOutcome evaluate_dpr(const SystemParams& p, const DerivedThresholds& t,
                                 const ChannelRealization& ch) {
  detail::require_single_antenna(p, "evaluate_dpr");
  const double rho_s = p.rho_s(), rho_r = p.rho_r();
  const double y1 = ch.norm2_s1;
  const double x1 = ch.norm2_sr;
  const auto a1 = dpa_coefficient(x1, t);
  if (!a1) return detail::all_outage();

  TrialOutcome out;
  out.branch = {Branch::NOMA, a1};
  const bool u1_decodes_x2 = detail::decodes_x2(*a1, rho_s, y1, t.theta2);
  out.flags.out_x1 = !(u1_decodes_x2 && *a1 * rho_s * y1 >= t.theta1);
  out.flags.out_x2 = rho_r * std::norm(ch.h_r2) < t.theta2;
  out.flags.out_x3 = !(u1_decodes_x2 && rho_s * y1 >= t.theta3);
  return out;
}

/// Multi-antenna scheme: MRT toward U1, DPA keyed to the beamformed S-R gain,
/// OMA fallback with quarter pre-log when that gain cannot support NOMA.
inline TrialOutcome evaluate_mdpr(const SystemParams& p, const DerivedThresholds& t,
                                  const ChannelRealization& ch) {
  const double rho_s = p.rho_s(), rho_r = p.rho_r();
  const double g0 = p.g0;
  const double z = ch.norm2_s1;
  const double gr2 = std::norm(ch.h_r2);

  TrialOutcome out;
  const auto a1 = dpa_coefficient(ch.y_sr, t);
  if (a1) {
    out.branch = {Branch::NOMA, a1};
    const bool u1_decodes_x2 = detail::decodes_x2(*a1, rho_s, z, t.theta2);
    out.flags.out_x1 = !(u1_decodes_x2 && *a1 * rho_s * z >= t.theta1);
    out.flags.out_x2 = g0 * rho_r * gr2 < t.theta2;
    out.flags.out_x3 = !(u1_decodes_x2 && g0 * rho_s * z >= t.theta3);
    return out;
  }

  // OMA fallback: t1 split in two quarter slots, x1 beamformed toward U1 and
  // x2 toward R.
  const double quarter_thr_x1 = std::expm1(4.0 * p.rth_x1);
  const double quarter_thr_x2 = std::expm1(4.0 * p.rth_x2);
  out.flags.out_x1 = rho_s * z < quarter_thr_x1;
  out.flags.out_x2 = !(rho_s * ch.norm2_sr >= quarter_thr_x2 && g0 * rho_r * gr2 >= t.theta2);
  const bool u1_heard_x2 = ch.y_s1 > t.tau2;
  if (u1_heard_x2) {
    out.branch = {Branch::OMA_DECODED_X2, std::nullopt};
    out.flags.out_x3 = g0 * rho_s * z < t.theta3;
  } else {
    out.branch = {Branch::OMA_UNDECODED_X2, std::nullopt};
    const double sinr = g0 * rho_s * z / (p.eta * g0 * rho_r * std::norm(ch.h_r1) + 1.0);
    out.flags.out_x3 = sinr < t.theta3;
  }
  return out;
}

namespace detail {

// Shared FPA NOMA event logic.  `gain_u1` and `gain_r` are the effective
// channel gains at U1 and R in t1; t2 gains carry the directional factors.
inline TrialOutcome evaluate_fpa(const SystemParams& p, const DerivedThresholds& t,
                                 double gain_u1, double gain_r, double gr1, double gr2,
                                 double gain_t2_u1, double g0_t2, double eta_t2) {
  const double rho_s = p.rho_s(), rho_r = p.rho_r();
  const double a1 = p.a1_fixed;

  TrialOutcome out;
  out.branch = {Branch::NOMA, std::nullopt};
  const bool u1_decodes_x2 = decodes_x2(a1, rho_s, gain_u1, t.theta2);
  const bool relay_decodes = decodes_x2(a1, rho_s, gain_r, t.theta2);
  out.flags.out_x1 = !(u1_decodes_x2 && a1 * rho_s * gain_u1 >= t.theta1);
  out.flags.out_x2 = !(relay_decodes && g0_t2 * rho_r * gr2 >= t.theta2);
  if (u1_decodes_x2) {
    out.flags.out_x3 = g0_t2 * rho_s * gain_t2_u1 < t.theta3;
  } else {
    // Relay interference is present only if R transmits and U1 cannot cancel.
    const double interf = relay_decodes ? eta_t2 * g0_t2 * rho_r * gr1 : 0.0;
    out.flags.out_x3 = g0_t2 * rho_s * gain_t2_u1 / (interf + 1.0) < t.theta3;
  }
  return out;
}

}  // namespace detail

/// Single-antenna FPA baseline.
inline TrialOutcome evaluate_ben1(const SystemParams& p, const DerivedThresholds& t,
                                  const ChannelRealization& ch) {
  detail::require_single_antenna(p, "evaluate_ben1");
  return detail::evaluate_fpa(p, t, ch.norm2_s1, ch.norm2_sr, std::norm(ch.h_r1),
                              std::norm(ch.h_r2), ch.norm2_s1,
                              /*g0_t2=*/1.0, /*eta_t2=*/1.0);
}

/// FPA with MRT (toward U1 by default; toward R when the config override is
/// selected) and directional relay antenna in t2.
inline TrialOutcome evaluate_ben2(const SystemParams& p, const DerivedThresholds& t,
                                  const ChannelRealization& ch) {
  const bool toward_relay = p.ben2_beam_toward_relay;
  const double gain_u1 = toward_relay ? ch.y_s1 : ch.norm2_s1;
  const double gain_r = toward_relay ? ch.norm2_sr : ch.y_sr;
  return detail::evaluate_fpa(p, t, gain_u1, gain_r, std::norm(ch.h_r1),
                              std::norm(ch.h_r2), gain_u1, p.g0, p.eta);
}

/// MRT toward R with DPA keyed to the beamformed S-U1 gain; same no-service
/// rule and event logic as DPU on the swapped gains.
inline TrialOutcome evaluate_ben3(const SystemParams& p, const DerivedThresholds& t,
                                  const ChannelRealization& ch) {
  const double rho_s = p.rho_s(), rho_r = p.rho_r();
  const auto a1 = dpa_coefficient(ch.y_s1, t);
  if (!a1) return detail::all_outage();

  TrialOutcome out;
  out.branch = {Branch::NOMA, a1};
  out.flags.out_x1 = *a1 * rho_s * ch.y_s1 < t.theta1;
  const bool relay_decodes = detail::decodes_x2(*a1, rho_s, ch.norm2_sr, t.theta2);
  out.flags.out_x2 = !(relay_decodes && p.g0 * rho_r * std::norm(ch.h_r2) >= t.theta2);
  out.flags.out_x3 = p.g0 * rho_s * ch.y_s1 < t.theta3;
  return out;
}

inline TrialOutcome evaluate_trial(SchemeKind scheme, const SystemParams& p,
                                   const DerivedThresholds& t, const ChannelRealization& ch) {
  switch (scheme) {
    case SchemeKind::DPU: return evaluate_dpu(p, t, ch);
    case SchemeKind::DPR: return evaluate_dpr(p, t, ch);
    case SchemeKind::MDPR: return evaluate_mdpr(p, t, ch);
    case SchemeKind::BEN1: return evaluate_ben1(p, t, ch);
    case SchemeKind::BEN2: return evaluate_ben2(p, t, ch);
    case SchemeKind::BEN3: return evaluate_ben3(p, t, ch);
  }
  throw std::logic_error("evaluate_trial: bad scheme");
}

}  // namespace cdrt
