#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace quasitrace::transfer {

/// Real number mantissa * 2^exponent with an unbounded (64-bit) exponent.
/// The mantissa is kept in [0.5, 1) in magnitude, or is exactly zero. Used for
/// traces and norms off the spectrum, where they outgrow double range.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double value) { assign(value, 0); }  // NOLINT(implicit)
  ExtendedReal(double mantissa, std::int64_t exponent) { assign(mantissa, exponent); }

  double mantissa() const noexcept { return mant_; }
  std::int64_t exponent() const noexcept { return exp_; }

  bool is_zero() const noexcept { return mant_ == 0.0; }
  int sign() const noexcept { return (mant_ > 0) - (mant_ < 0); }

  /// Nearest double; +-inf when out of range, 0 on underflow.
  double to_double() const noexcept;

  /// Natural log of |x|; -inf for zero.
  double log_abs() const noexcept;

  /// Decimal scientific notation with 17 significant digits and an exponent of
  /// any size, e.g. "-1.2345678901234567e+4821".
  std::string to_string() const;

  ExtendedReal abs() const noexcept {
    ExtendedReal r = *this;
    r.mant_ = std::fabs(r.mant_);
    return r;
  }
  ExtendedReal operator-() const noexcept {
    ExtendedReal r = *this;
    r.mant_ = -r.mant_;
    return r;
  }

  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return ExtendedReal(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }
  friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
    return ExtendedReal(a.mant_ / b.mant_, a.exp_ - b.exp_);
  }
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) noexcept;
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return a + (-b);
  }
  ExtendedReal& operator+=(const ExtendedReal& o) noexcept { return *this = *this + o; }
  ExtendedReal& operator-=(const ExtendedReal& o) noexcept { return *this = *this - o; }
  ExtendedReal& operator*=(const ExtendedReal& o) noexcept { return *this = *this * o; }

  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) noexcept;
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return a.mant_ == b.mant_ && (a.mant_ == 0.0 || a.exp_ == b.exp_);
  }

 private:
  void assign(double mantissa, std::int64_t exponent) noexcept;

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

ExtendedReal sqrt(const ExtendedReal& x);

/// x^{3/2} for x >= 0.
ExtendedReal pow_three_halves(const ExtendedReal& x);

}  // namespace quasitrace::transfer
