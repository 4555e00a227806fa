#pragma once

#include <vector>

namespace quasitrace::spectrum {

/// Working precision for band edges. Bands at level 19 for lambda = 40 are a
/// few 1e-17 wide, below double and long double resolution near E ~ 40.
using Real = __float128;

struct TraceValue {
  Real x{};   // x_k(E, lambda, 0)
  Real dx{};  // d/dE x_k
};

/// x_k and its derivative at phase 0 through the trace map
/// x_{k+1} = x_k x_{k-1} - x_{k-2}, seeded by the closed forms
///   x_0 = E - lambda,  x_1 = E^2 - lambda E - 2,  x_2 = a^2 b - 2a - b
/// with a = E - lambda, b = E (the products over s_0 = 1, s_1 = 10, s_2 = 101).
template <class R>
TraceValue trace_map(int k, R energy, R lambda) {
  const R a = energy - lambda;
  const R b = energy;
  R x0 = a, d0 = 1;
  R x1 = b * a - 2, d1 = a + b;
  R x2 = a * a * b - 2 * a - b, d2 = 2 * a * b + a * a - 3;
  if (k == 0) return {x0, d0};
  if (k == 1) return {x1, d1};
  for (int i = 3; i <= k; ++i) {
    const R x3 = x2 * x1 - x0;
    const R d3 = d2 * x1 + x2 * d1 - d0;
    x0 = x1;
    d0 = d1;
    x1 = x2;
    d1 = d2;
    x2 = x3;
    d2 = d3;
  }
  return {x2, d2};
}

/// x_0..x_{k_max} and derivatives at one energy.
template <class R>
void trace_map_levels(int k_max, R energy, R lambda, std::vector<TraceValue>& out) {
  out.clear();
  const R a = energy - lambda;
  const R b = energy;
  out.push_back({a, 1});
  if (k_max >= 1) out.push_back({b * a - 2, a + b});
  if (k_max >= 2) out.push_back({a * a * b - 2 * a - b, 2 * a * b + a * a - 3});
  for (int i = 3; i <= k_max; ++i) {
    const auto& p1 = out[static_cast<std::size_t>(i - 1)];
    const auto& p2 = out[static_cast<std::size_t>(i - 2)];
    const auto& p3 = out[static_cast<std::size_t>(i - 3)];
    out.push_back({p1.x * p2.x - p3.x, p1.dx * p2.x + p1.x * p2.dx - p3.dx});
  }
}

inline double to_double(Real x) noexcept { return static_cast<double>(x); }
inline long double to_long_double(Real x) noexcept { return static_cast<long double>(x); }

}  // namespace quasitrace::spectrum
