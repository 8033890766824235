#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdrt/params.hpp"
#include "cdrt/rng.hpp"

namespace cdrt {

using cvec = std::vector<std::complex<double>>;

/// One quasi-static fading draw for all four links, with the beamforming
/// statistics the schemes consume.
struct ChannelRealization {
  cvec h_s1;                  // S -> U1, length N
  cvec h_sr;                  // S -> R, length N
  std::complex<double> h_r1;  // R -> U1
  std::complex<double> h_r2;  // R -> U2
  double norm2_s1 = 0.0;
  double norm2_sr = 0.0;
  double y_sr = 0.0;  // |h_sr . w|^2 with w = MRT toward U1
  double y_s1 = 0.0;  // |h_s1 . w'|^2 with w' = MRT toward R
};

/// |target . beam^H|^2 / ||beam||^2: power gain of `target` projected on the
/// MRT direction of `beam_source`.
inline double mrt_projection(std::span<const std::complex<double>> beam_source,
                             std::span<const std::complex<double>> target) {
  if (beam_source.size() != target.size())
    throw std::invalid_argument("mrt_projection: size mismatch");
  std::complex<double> dot{0.0, 0.0};
  double norm2 = 0.0;
  for (std::size_t i = 0; i < beam_source.size(); ++i) {
    dot += target[i] * std::conj(beam_source[i]);
    norm2 += std::norm(beam_source[i]);
  }
  if (norm2 == 0.0)
    throw std::invalid_argument("mrt_projection: zero beam vector");
  return std::norm(dot) / norm2;
}

/// Draws one realization: entries i.i.d. CN(0, lambda_pq).  The consumption
/// order of the stream is fixed, so a given (seed, trial) is reproducible.
inline ChannelRealization draw_channels(const SystemParams& p, TrialRng& rng) {
  const int n = p.n_antennas;
  ChannelRealization ch;
  ch.h_s1.resize(n);
  ch.h_sr.resize(n);

  auto draw = [&rng](double lambda) {
    const double s = std::sqrt(0.5 * lambda);
    return std::complex<double>(s * rng.next_normal(), s * rng.next_normal());
  };

  for (int i = 0; i < n; ++i) ch.h_s1[i] = draw(p.lambda_s1());
  for (int i = 0; i < n; ++i) ch.h_sr[i] = draw(p.lambda_sr());
  ch.h_r1 = draw(p.lambda_r1());
  ch.h_r2 = draw(p.lambda_r2());

  for (int i = 0; i < n; ++i) {
    ch.norm2_s1 += std::norm(ch.h_s1[i]);
    ch.norm2_sr += std::norm(ch.h_sr[i]);
  }
  ch.y_sr = mrt_projection(ch.h_s1, ch.h_sr);
  ch.y_s1 = mrt_projection(ch.h_sr, ch.h_s1);
  return ch;
}

}  // namespace cdrt
