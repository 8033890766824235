#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cdrt/channel.hpp"
#include "cdrt/schemes.hpp"

namespace cdrt::mc {

struct OpEstimate {
  double p_hat = 0.0;
  long n_trials = 0;
  double std_err = 0.0;        // rule-of-three bound 3/n when p_hat is 0 or 1
  bool under_resolved = false;  // deep tail (p_hat < 1e-4): too few hits to trust
};

struct BranchCounts {
  long system_down = 0;
  long noma = 0;
  long oma_decoded_x2 = 0;
  long oma_undecoded_x2 = 0;

  long total() const { return system_down + noma + oma_decoded_x2 + oma_undecoded_x2; }

  BranchCounts& operator+=(const BranchCounts& o) {
    system_down += o.system_down;
    noma += o.noma;
    oma_decoded_x2 += o.oma_decoded_x2;
    oma_undecoded_x2 += o.oma_undecoded_x2;
    return *this;
  }
};

struct McResult {
  std::array<OpEstimate, 3> op;  // x1, x2, x3
  BranchCounts branches;
  long n_trials = 0;
};

namespace detail {

struct Tally {
  std::array<long, 3> outages{0, 0, 0};
  BranchCounts branches;
};

inline void run_range(SchemeKind scheme, const SystemParams& p, const DerivedThresholds& t,
                      std::uint64_t seed, long begin, long end, Tally& tally) {
  for (long i = begin; i < end; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const ChannelRealization ch = draw_channels(p, rng);
    const TrialOutcome out = evaluate_trial(scheme, p, t, ch);
    tally.outages[0] += out.flags.out_x1;
    tally.outages[1] += out.flags.out_x2;
    tally.outages[2] += out.flags.out_x3;
    switch (out.branch.branch) {
      case Branch::SYSTEM_DOWN: ++tally.branches.system_down; break;
      case Branch::NOMA: ++tally.branches.noma; break;
      case Branch::OMA_DECODED_X2: ++tally.branches.oma_decoded_x2; break;
      case Branch::OMA_UNDECODED_X2: ++tally.branches.oma_undecoded_x2; break;
    }
  }
}

inline OpEstimate make_estimate(long outages, long n) {
  OpEstimate e;
  e.n_trials = n;
  e.p_hat = static_cast<double>(outages) / n;
  if (outages == 0 || outages == n)
    e.std_err = 3.0 / n;
  else
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
  e.under_resolved = e.p_hat < 1e-4;
  return e;
}

}  // namespace detail

/// Monte Carlo outage estimation over `n_trials` independent draws.  The
/// counter-based substreams make the result identical for any thread count.
inline McResult estimate_op(SchemeKind scheme, const SystemParams& p, long n_trials,
                            std::uint64_t seed, int n_threads = 1) {
  if (n_trials < 1) throw std::invalid_argument("estimate_op: n_trials must be >= 1");
  if (n_threads < 1) n_threads = 1;
  const DerivedThresholds t = derive_thresholds(p);
  if (scheme_is_single_antenna(scheme) && p.n_antennas != 1)
    throw std::invalid_argument("estimate_op: single-antenna scheme needs n_antennas == 1");

  std::vector<detail::Tally> tallies(n_threads);
  if (n_threads == 1 || n_trials < 4 * n_threads) {
    detail::run_range(scheme, p, t, seed, 0, n_trials, tallies[0]);
  } else {
    std::vector<std::thread> workers;
    const long chunk = (n_trials + n_threads - 1) / n_threads;
    for (int k = 0; k < n_threads; ++k) {
      const long begin = k * chunk;
      const long end = std::min<long>(n_trials, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, k, begin, end] {
        detail::run_range(scheme, p, t, seed, begin, end, tallies[k]);
      });
    }
    for (auto& w : workers) w.join();
  }

  detail::Tally total;
  for (const auto& tl : tallies) {
    for (int s = 0; s < 3; ++s) total.outages[s] += tl.outages[s];
    total.branches += tl.branches;
  }

  McResult r;
  r.n_trials = n_trials;
  for (int s = 0; s < 3; ++s) r.op[s] = detail::make_estimate(total.outages[s], n_trials);
  r.branches = total.branches;
  return r;
}

/// Effective sum throughput Psi = sum_i Rth_i (1 - Pout_i), nats/s/Hz.
struct EstValue {
  double psi = 0.0;
  std::array<double, 3> contributions{0.0, 0.0, 0.0};
};

inline EstValue effective_sum_throughput(const std::array<double, 3>& ops,
                                         const std::array<double, 3>& thresholds) {
  EstValue v;
  for (int i = 0; i < 3; ++i) {
    if (!(ops[i] >= 0.0 && ops[i] <= 1.0))
      throw std::domain_error("effective_sum_throughput: probability outside [0,1]");
    v.contributions[i] = thresholds[i] * (1.0 - ops[i]);
    v.psi += v.contributions[i];
  }
  return v;
}

}  // namespace cdrt::mc
