#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "quasitrace/words/finite_word.hpp"

namespace quasitrace::words {

using u128 = unsigned __int128;

/// Point of the circle R/Z stored as a 128-bit binary fraction: the value is
/// raw() / 2^128. Addition and integer multiples are exact modulo 1, so the
/// orbit n*omega + theta is reproducible bit for bit.
class PhasePoint {
 public:
  static constexpr int kFractionBits = 128;

  constexpr PhasePoint() = default;
  static constexpr PhasePoint from_raw(u128 raw) noexcept { return PhasePoint(raw); }

  /// floor(num / den * 2^128) reduced mod 1. Throws std::invalid_argument for den <= 0.
  static PhasePoint from_rational(std::int64_t num, std::int64_t den);

  /// Nearest fixed-point value to a double, reduced mod 1.
  static PhasePoint from_double(double x);

  /// Parses a phase written as
  ///   - a decimal "0.739", ".25", "3.5" (reduced mod 1; exact to 2^-128),
  ///   - a rational "1/3",
  ///   - a rational multiple of omega: "omega", "omega/2", "3*omega", "2*omega/5".
  /// Throws std::invalid_argument on malformed input.
  static PhasePoint parse(std::string_view text);

  constexpr u128 raw() const noexcept { return raw_; }
  double to_double() const noexcept;
  long double to_long_double() const noexcept;

  /// Keeps the leading `bits` fractional bits (96 <= bits <= 128), zeroing the rest.
  PhasePoint truncated(int bits) const;

  friend constexpr PhasePoint operator+(PhasePoint a, PhasePoint b) noexcept {
    return PhasePoint(a.raw_ + b.raw_);
  }
  friend constexpr PhasePoint operator-(PhasePoint a, PhasePoint b) noexcept {
    return PhasePoint(a.raw_ - b.raw_);
  }
  constexpr PhasePoint operator-() const noexcept { return PhasePoint(u128{0} - raw_); }

  /// n * (*this) mod 1, exact.
  constexpr PhasePoint times(std::int64_t n) const noexcept {
    return PhasePoint(static_cast<u128>(static_cast<__int128>(n)) * raw_);
  }

  friend constexpr bool operator==(PhasePoint, PhasePoint) noexcept = default;
  friend constexpr auto operator<=>(PhasePoint a, PhasePoint b) noexcept {
    return a.raw_ <=> b.raw_;
  }

 private:
  constexpr explicit PhasePoint(u128 raw) noexcept : raw_(raw) {}
  u128 raw_ = 0;
};

/// Decimal rendering of a phase with `digits` fractional digits (truncated).
std::string to_decimal_string(PhasePoint p, int digits = 40);

/// omega = (sqrt(5) - 1) / 2 in the 128-bit representation, parsed once from a
/// 64-digit decimal literal.
PhasePoint golden_omega() noexcept;

/// 1 - omega, the left end of the coding interval [1 - omega, 1).
PhasePoint one_minus_omega() noexcept;

/// Width of the fixed-point precision used for phases at the CLI boundary.
/// Reads QUASITRACE_PRECISION_BITS (default 128, accepted range [96, 128]).
/// Throws std::invalid_argument if the variable is set to anything else.
int precision_bits_from_env();

struct RotationSample {
  Symbol symbol;
  bool near_endpoint;  // within 2^-64 of 1 - omega or of 0 (== 1)
};

/// frac(n*omega + theta) >= 1 - omega, evaluated in fixed point. The left
/// endpoint is included. Throws std::out_of_range if |n| > 2^62.
RotationSample rotation_sample(std::int64_t n, PhasePoint theta);

inline Symbol rotation_symbol(std::int64_t n, PhasePoint theta) {
  return rotation_sample(n, theta).symbol;
}

/// v_theta(n_lo) ... v_theta(n_hi), inclusive. Throws std::invalid_argument if
/// n_lo > n_hi. If `near_endpoint_hits` is given, it receives the number of
/// symbols flagged as near an interval endpoint.
FiniteWord rotation_block(std::int64_t n_lo, std::int64_t n_hi, PhasePoint theta,
                          std::size_t* near_endpoint_hits = nullptr);

/// Walks the coding sequence site by site: each call to next() returns
/// v_theta(n) and advances n by one (or by minus one when walking left).
class RotationOrbit {
 public:
  enum class Direction { right, left };

  RotationOrbit(std::int64_t start, PhasePoint theta, Direction dir = Direction::right);

  Symbol next() noexcept {
    const Symbol s = point_ >= threshold_ ? Symbol::one : Symbol::zero;
    point_ = point_ + step_;
    return s;
  }

 private:
  PhasePoint point_;
  PhasePoint step_;
  PhasePoint threshold_;
};

}  // namespace quasitrace::words
