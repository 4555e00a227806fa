#include "quasitrace/transfer/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quasitrace/error.hpp"
#include "quasitrace/words/fibonacci.hpp"

namespace quasitrace::transfer {

namespace {

using words::RotationOrbit;
using words::Symbol;

template <class T>
T diagonal_entry(double energy, double lambda, Symbol v) noexcept;

template <>
double diagonal_entry<double>(double energy, double lambda, Symbol v) noexcept {
  return energy - (v == Symbol::one ? lambda : 0.0);
}

template <>
Quad diagonal_entry<Quad>(double energy, double lambda, Symbol v) noexcept {
  return static_cast<Quad>(energy) - (v == Symbol::one ? static_cast<Quad>(lambda) : Quad{0});
}

template <>
DualScalar diagonal_entry<DualScalar>(double energy, double lambda, Symbol v) noexcept {
  return {energy - (v == Symbol::one ? lambda : 0.0), 1.0};
}

// Accumulates M(n) one site at a time. On the right half-line the factors are
// T(1), T(2), ...; on the left T(0)^{-1}, T(-1)^{-1}, ...; each new factor
// multiplies from the left.
template <class T>
class ProductWalker {
 public:
  ProductWalker(Side side, double energy, double lambda, PhasePoint theta)
      : side_(side),
        energy_(energy),
        lambda_(lambda),
        orbit_(side == Side::right ? 1 : 0, theta,
               side == Side::right ? RotationOrbit::Direction::right
                                   : RotationOrbit::Direction::left) {}

  void step() noexcept {
    const T a = diagonal_entry<T>(energy_, lambda_, orbit_.next());
    Mat2<T>& m = product_.mantissa;
    if (side_ == Side::right) {
      // [[a, -1], [1, 0]] * [[p, q], [r, s]]
      m = {a * m.a11 - m.a21, a * m.a12 - m.a22, m.a11, m.a12};
    } else {
      // [[0, 1], [-1, a]] * [[p, q], [r, s]]
      m = {m.a21, m.a22, a * m.a21 - m.a11, a * m.a22 - m.a12};
    }
    product_.renormalize();
    ++steps_;
  }

  void advance_to(std::uint64_t steps) noexcept {
    while (steps_ < steps) step();
  }

  const Scaled<T>& product() const noexcept { return product_; }
  std::uint64_t steps() const noexcept { return steps_; }

 private:
  Side side_;
  double energy_;
  double lambda_;
  RotationOrbit orbit_;
  Scaled<T> product_;
  std::uint64_t steps_ = 0;
};

void check_level(int k, const char* where) {
  if (k < 0 || k > kMaxProductLevel) {
    throw std::out_of_range(std::string(where) + ": level k must lie in [0, " +
                            std::to_string(kMaxProductLevel) + "], got " + std::to_string(k));
  }
}

void check_inputs(double energy, double lambda, const char* where) {
  if (!std::isfinite(energy)) throw std::invalid_argument(std::string(where) + ": energy must be finite");
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument(std::string(where) + ": coupling must be finite and non-negative");
  }
}

ScaledMatrix value_part(const ScaledDualMatrix& m) noexcept {
  return {{m.mantissa.a11.value, m.mantissa.a12.value, m.mantissa.a21.value, m.mantissa.a22.value},
          m.exponent};
}

ExtendedReal relative_deviation(const ExtendedReal& value, const ExtendedReal& reference) {
  const ExtendedReal scale = std::max(reference.abs(), ExtendedReal(1.0));
  return (value - reference).abs() / scale;
}

}  // namespace

TransferMatrix local_matrix(std::int64_t m, double energy, double lambda, PhasePoint theta) {
  check_inputs(energy, lambda, "local_matrix");
  const double a = diagonal_entry<double>(energy, lambda, words::rotation_symbol(m, theta));
  return {a, -1.0, 1.0, 0.0};
}

ScaledMatrix transfer_product(std::int64_t n, double energy, double lambda, PhasePoint theta) {
  if (n == 0) throw std::invalid_argument("transfer_product: n must be nonzero");
  check_inputs(energy, lambda, "transfer_product");
  ProductWalker<double> walker(n > 0 ? Side::right : Side::left, energy, lambda, theta);
  walker.advance_to(static_cast<std::uint64_t>(n > 0 ? n : -n));
  return walker.product();
}

ScaledDualMatrix transfer_product_dual(std::int64_t n, double energy, double lambda,
                                       PhasePoint theta) {
  if (n == 0) throw std::invalid_argument("transfer_product_dual: n must be nonzero");
  check_inputs(energy, lambda, "transfer_product_dual");
  ProductWalker<DualScalar> walker(n > 0 ? Side::right : Side::left, energy, lambda, theta);
  walker.advance_to(static_cast<std::uint64_t>(n > 0 ? n : -n));
  return walker.product();
}

ExtendedReal trace_x(int k, double energy, double lambda, PhasePoint theta) {
  check_level(k, "trace_x");
  return trace(transfer_product(static_cast<std::int64_t>(words::fib_length(k)), energy, lambda, theta));
}

ExtendedReal trace_y(int k, double energy, double lambda, PhasePoint theta) {
  check_level(k, "trace_y");
  return trace(transfer_product(-static_cast<std::int64_t>(words::fib_length(k)), energy, lambda, theta));
}

namespace {

template <class T>
std::vector<ExtendedReal> walk_traces(int k_max, double energy, double lambda, PhasePoint theta, Side side) {
  ProductWalker<T> walker(side, energy, lambda, theta);
  std::vector<ExtendedReal> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    walker.advance_to(words::fib_length(k));
    const auto& p = walker.product();
    out.emplace_back(static_cast<double>(p.mantissa.trace()), p.exponent);
  }
  return out;
}

}  // namespace

std::vector<ExtendedReal> trace_levels(int k_max, double energy, double lambda, PhasePoint theta,
                                       Side side, ProductPrecision precision) {
  check_level(k_max, "trace_levels");
  check_inputs(energy, lambda, "trace_levels");
  if (precision == ProductPrecision::quad) return walk_traces<Quad>(k_max, energy, lambda, theta, side);
  return walk_traces<double>(k_max, energy, lambda, theta, side);
}

std::vector<ExtendedReal> trace_sequence_recursive(int k_max, double energy, double lambda) {
  if (k_max < 0) throw std::invalid_argument("trace_sequence_recursive: k_max must be >= 0");
  std::vector<ExtendedReal> x = trace_levels(std::min(k_max, 2), energy, lambda, PhasePoint{});
  x.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 3; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    x.push_back(x[i - 1] * x[i - 2] - x[i - 3]);
  }
  return x;
}

ExtendedReal fricke_quantity(const ExtendedReal& x, const ExtendedReal& y, const ExtendedReal& z) {
  return x * x + y * y + z * z - x * y * z - ExtendedReal(4.0);
}

TraceSample trace_derivative(int k, double energy, double lambda, PhasePoint theta, Side side) {
  check_level(k, "trace_derivative");
  check_inputs(energy, lambda, "trace_derivative");
  ProductWalker<DualScalar> walker(side, energy, lambda, theta);
  walker.advance_to(words::fib_length(k));
  const auto& p = walker.product();
  const DualScalar tr = p.mantissa.trace();
  return {k, energy, lambda, theta, side, ExtendedReal(tr.value, p.exponent),
          ExtendedReal(tr.deriv, p.exponent)};
}

TraceParityReport phase_trace_parity(PhasePoint theta, double lambda,
                                     std::span<const double> energies, int k_max, double tol_rel) {
  if (energies.empty()) throw std::invalid_argument("phase_trace_parity: empty energy grid");
  check_level(k_max, "phase_trace_parity");

  TraceParityReport report;
  report.theta = theta;
  report.lambda = lambda;
  report.x_side.side = Side::right;
  report.y_side.side = Side::left;
  const auto levels = static_cast<std::size_t>(k_max) + 1;
  report.max_rel_dev_x.assign(levels, 0.0);
  report.max_rel_dev_y.assign(levels, 0.0);

  // Energies are visited in grid order so the max reductions are reproducible.
  for (double energy : energies) {
    const auto reference = trace_levels(k_max, energy, lambda, PhasePoint{}, Side::right);
    const auto xs = trace_levels(k_max, energy, lambda, theta, Side::right);
    const auto ys = trace_levels(k_max, energy, lambda, theta, Side::left);
    for (std::size_t k = 0; k < levels; ++k) {
      const double dx = relative_deviation(xs[k], reference[k]).to_double();
      const double dy = relative_deviation(ys[k], reference[k]).to_double();
      report.max_rel_dev_x[k] = std::max(report.max_rel_dev_x[k], dx);
      report.max_rel_dev_y[k] = std::max(report.max_rel_dev_y[k], dy);
    }
  }
  for (std::size_t k = 0; k < levels; ++k) {
    report.x_side.record(static_cast<int>(k), report.max_rel_dev_x[k] <= tol_rel);
    report.y_side.record(static_cast<int>(k), report.max_rel_dev_y[k] <= tol_rel);
  }
  if (!report.x_side.any_class_ok() || !report.y_side.any_class_ok()) {
    throw PropertyViolation("phase_trace_parity: no parity class of k reproduces the phase-0 "
                            "traces at theta = " + words::to_decimal_string(theta, 20) +
                            ", lambda = " + std::to_string(lambda));
  }
  return report;
}

std::vector<ExtendedReal> cumulative_norms(std::span<const double> window_lengths, Side side,
                                           double energy, double lambda, PhasePoint theta) {
  check_inputs(energy, lambda, "cumulative_norms");
  std::uint64_t n_max = 0;
  for (double L : window_lengths) {
    if (!(L > 0.0) || !std::isfinite(L)) {
      throw std::invalid_argument("cumulative_norms: window lengths must be positive and finite");
    }
    n_max = std::max(n_max, static_cast<std::uint64_t>(std::floor(L)) + 1);
  }

  // partial[n] = sum_{m <= n} ||M(m)||^2, norm[n] = ||M(n)||^2.
  std::vector<ExtendedReal> partial(n_max + 1), norm(n_max + 1);
  ProductWalker<double> walker(side, energy, lambda, theta);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    walker.step();
    norm[n] = spectral_norm_sq(walker.product());
    partial[n] = partial[n - 1] + norm[n];
  }

  std::vector<ExtendedReal> out;
  out.reserve(window_lengths.size());
  for (double L : window_lengths) {
    const double whole = std::floor(L);
    const auto n = static_cast<std::uint64_t>(whole);
    const double frac = L - whole;
    out.push_back(frac > 0.0 ? partial[n] + ExtendedReal(frac) * norm[n + 1] : partial[n]);
  }
  return out;
}

ExtendedReal cumulative_norm(double L, double energy, double lambda, PhasePoint theta) {
  if (!std::isfinite(L)) throw std::invalid_argument("cumulative_norm: L must be finite");
  if (L == 0.0) return ExtendedReal(0.0);
  const double length = std::fabs(L);
  return cumulative_norms(std::span<const double>(&length, 1), L > 0 ? Side::right : Side::left,
                          energy, lambda, theta)
      .front();
}

NormTraceMargin norm_trace_inequality(int k, double energy, double lambda, PhasePoint theta,
                                      Side side) {
  check_level(k, "norm_trace_inequality");
  check_inputs(energy, lambda, "norm_trace_inequality");
  ProductWalker<DualScalar> walker(side, energy, lambda, theta);
  const std::uint64_t length = words::fib_length(k);
  ExtendedReal norm_sum(0.0);
  for (std::uint64_t n = 1; n <= length; ++n) {
    walker.step();
    norm_sum += spectral_norm_sq(value_part(walker.product()));
  }
  const auto& p = walker.product();

  NormTraceMargin out;
  out.k = k;
  out.side = side;
  out.norm_sq = norm_sum;
  // ||M||^3_{F_k} is read as (||M||^2_{F_k})^{3/2}.
  out.lhs = ExtendedReal(4.0) * pow_three_halves(norm_sum);
  out.abs_dx = ExtendedReal(p.mantissa.trace().deriv, p.exponent).abs();
  out.margin = out.lhs - out.abs_dx;
  if (out.margin < ExtendedReal(-1e-8) * out.lhs) {
    throw PropertyViolation("norm_trace_inequality: 4||M||^3 < |dx/dE| at k = " + std::to_string(k) +
                            ", E = " + std::to_string(energy) + ", lambda = " + std::to_string(lambda));
  }
  return out;
}

}  // namespace quasitrace::transfer
