#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quasitrace/transfer/extended_real.hpp"
#include "quasitrace/transfer/matrix.hpp"
#include "quasitrace/words/combinatorics.hpp"
#include "quasitrace/words/phase.hpp"

namespace quasitrace::transfer {

using words::PhasePoint;
using words::Side;

/// Largest level for direct products (F_40 ~ 2.7e8 factors).
inline constexpr int kMaxProductLevel = 40;

/// Relative tolerance for trace equality across phases; the compared products
/// differ only by factor order, so only rounding separates them.
inline constexpr double kTraceEqualityTol = 1e-9;

/// T(m) = [[E - lambda v_theta(m), -1], [1, 0]].
TransferMatrix local_matrix(std::int64_t m, double energy, double lambda, PhasePoint theta);

/// M(n) = T(n) ... T(1) for n >= 1, and T(n+1)^{-1} ... T(0)^{-1} for n <= -1.
/// Throws std::invalid_argument for n == 0.
ScaledMatrix transfer_product(std::int64_t n, double energy, double lambda, PhasePoint theta);

/// Same product carried with d/dE alongside the entries.
ScaledDualMatrix transfer_product_dual(std::int64_t n, double energy, double lambda,
                                       PhasePoint theta);

/// x_k = tr M(F_k).
ExtendedReal trace_x(int k, double energy, double lambda, PhasePoint theta);

/// y_k = tr M(-F_k).
ExtendedReal trace_y(int k, double energy, double lambda, PhasePoint theta);

enum class ProductPrecision { standard, quad };

/// x_0..x_{k_max} (side right) or y_0..y_{k_max} (side left) from one pass
/// over the longest product; every shorter level is a prefix of it. With
/// ProductPrecision::quad the product is carried in __float128; use it on or
/// near the spectrum at large lambda and k, where the trace is far more
/// sensitive to rounding than its size suggests.
std::vector<ExtendedReal> trace_levels(int k_max, double energy, double lambda,
                                       PhasePoint theta, Side side = Side::right,
                                       ProductPrecision precision = ProductPrecision::standard);

/// x_0..x_{k_max} at theta = 0 from the trace map x_{k+1} = x_k x_{k-1} - x_{k-2},
/// seeded with x_0, x_1, x_2 from direct products.
std::vector<ExtendedReal> trace_sequence_recursive(int k_max, double energy, double lambda);

/// x^2 + y^2 + z^2 - xyz - 4 for consecutive traces; conserved and equal to lambda^2.
ExtendedReal fricke_quantity(const ExtendedReal& x, const ExtendedReal& y, const ExtendedReal& z);

struct TraceSample {
  int k = 0;
  double energy = 0.0;
  double lambda = 0.0;
  PhasePoint theta;
  Side side = Side::right;
  ExtendedReal x;   // trace
  ExtendedReal dx;  // d/dE of the trace
};

/// Trace and its energy derivative by forward-mode propagation through the
/// product (dT/dE = [[1, 0], [0, 0]]; for the inverse factors [[0, 0], [0, 1]]).
TraceSample trace_derivative(int k, double energy, double lambda, PhasePoint theta,
                             Side side = Side::right);

struct TraceParityReport {
  PhasePoint theta;
  double lambda = 0.0;
  words::ParityReport x_side;  // x_k(theta) == x_k(0) on the whole grid
  words::ParityReport y_side;  // y_k(theta) == x_k(0) on the whole grid
  std::vector<double> max_rel_dev_x;  // indexed by k
  std::vector<double> max_rel_dev_y;
};

/// Compares x_k(E, lambda, theta) and y_k(E, lambda, theta) with x_k(E, lambda, 0)
/// over the energy grid for k = 0..k_max, relative to max(1, |x_k(E, lambda, 0)|).
/// Throws PropertyViolation if neither parity class passes on a side, and
/// std::invalid_argument for an empty grid.
TraceParityReport phase_trace_parity(PhasePoint theta, double lambda,
                                     std::span<const double> energies, int k_max,
                                     double tol_rel = kTraceEqualityTol);

/// Windowed matrix norm ||M||_L^2 = sum_{n=1}^{floor L} ||M(n)||^2
///   + (L - floor L) ||M(floor L + 1)||^2.
/// For L < 0 the window runs over n = -1, ..., -floor|L| with the fractional
/// term on M(-floor|L| - 1). Zero for L == 0.
ExtendedReal cumulative_norm(double L, double energy, double lambda, PhasePoint theta);

/// cumulative_norm at every |L| in `window_lengths` on one half-line, from a
/// single pass. Lengths must be positive; the result follows input order.
std::vector<ExtendedReal> cumulative_norms(std::span<const double> window_lengths, Side side,
                                           double energy, double lambda, PhasePoint theta);

struct NormTraceMargin {
  int k = 0;
  Side side = Side::right;
  ExtendedReal norm_sq;  // ||M||^2_{F_k}
  ExtendedReal lhs;      // 4 (||M||^2_{F_k})^{3/2}
  ExtendedReal abs_dx;   // |d/dE x_k| (or y_k on the left)
  ExtendedReal margin;   // lhs - abs_dx
};

/// Checks 4 ||M||_{F_k}^3 >= |d/dE x_k|, reading ||M||^3 as (||M||^2)^{3/2}.
/// Throws PropertyViolation if the margin is below -1e-8 * lhs.
NormTraceMargin norm_trace_inequality(int k, double energy, double lambda, PhasePoint theta,
                                      Side side = Side::right);

}  // namespace quasitrace::transfer
