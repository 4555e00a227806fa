#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "quasitrace/dynamics/truncation.hpp"

namespace quasitrace::dynamics {

/// Amplitudes over sites [-N, N] at a given time.
struct WavePacket {
  int N = 0;
  double time = 0.0;
  std::vector<std::complex<double>> amplitudes;  // index n + N

  std::complex<double> at(std::int64_t n) const { return amplitudes.at(static_cast<std::size_t>(n + N)); }
  double norm_sq() const noexcept;
  std::vector<double> probabilities() const;
};

/// e^{-itH} delta_1 = sum_j e^{-i t E_j} phi_j(n) phi_j(1). Throws
/// std::invalid_argument for t < 0 or a system with N < 1.
WavePacket evolve(const EigenSystem& sys, double t);

/// sum_{|n| <= floor L} p(n) + (L - floor L)(p(-floor L - 1) + p(floor L + 1))
/// for site values p indexed by n + N. Throws std::out_of_range if L + 1 > N
/// and std::invalid_argument if L < 0.
double windowed_sum(std::span<const double> site_values, int N, double L);

/// windowed_sum of |psi(n)|^2.
double windowed_norm(const WavePacket& psi, double L);

}  // namespace quasitrace::dynamics
