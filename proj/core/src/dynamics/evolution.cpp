#include "quasitrace/dynamics/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quasitrace::dynamics {

double WavePacket::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

std::vector<double> WavePacket::probabilities() const {
  std::vector<double> p(amplitudes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes[i]);
  return p;
}

WavePacket evolve(const EigenSystem& sys, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("evolve: t must be finite and >= 0");
  if (sys.N() < 1) throw std::invalid_argument("evolve: empty eigensystem");
  const std::size_t m = sys.size();
  WavePacket psi;
  psi.N = sys.N();
  psi.time = t;
  psi.amplitudes.assign(m, {0.0, 0.0});
  for (std::size_t j = 0; j < m; ++j) {
    const double* phi = sys.column(j);
    const double c1 = sys.phi(j, 1);
    if (c1 == 0.0) continue;
    const double angle = -t * sys.eigenvalues()[j];
    const std::complex<double> w = std::complex<double>(std::cos(angle), std::sin(angle)) * c1;
    for (std::size_t i = 0; i < m; ++i) psi.amplitudes[i] += w * phi[i];
  }
  return psi;
}

double windowed_sum(std::span<const double> site_values, int N, double L) {
  if (!(L >= 0.0) || !std::isfinite(L)) throw std::invalid_argument("windowed_sum: L must be finite and >= 0");
  if (L + 1.0 > N) {
    throw std::out_of_range("windowed_sum: window radius " + std::to_string(L) +
                            " exceeds the truncation N = " + std::to_string(N));
  }
  if (site_values.size() != static_cast<std::size_t>(2 * N + 1)) {
    throw std::invalid_argument("windowed_sum: expected 2N + 1 site values");
  }
  const double whole = std::floor(L);
  const auto r = static_cast<std::int64_t>(whole);
  auto at = [&](std::int64_t n) { return site_values[static_cast<std::size_t>(n + N)]; };
  double s = 0.0;
  for (std::int64_t n = -r; n <= r; ++n) s += at(n);
  const double frac = L - whole;
  if (frac > 0.0) s += frac * (at(-r - 1) + at(r + 1));
  return s;
}

double windowed_norm(const WavePacket& psi, double L) {
  const auto p = psi.probabilities();
  return windowed_sum(p, psi.N, L);
}

}  // namespace quasitrace::dynamics
