#include "quasitrace/transfer/extended_real.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace quasitrace::transfer {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLog10Of2 = 0.30102999566398119521;
}  // namespace

void ExtendedReal::assign(double mantissa, std::int64_t exponent) noexcept {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    mant_ = mantissa;
    exp_ = 0;
    return;
  }
  int e = 0;
  mant_ = std::frexp(mantissa, &e);
  exp_ = exponent + e;
}

double ExtendedReal::to_double() const noexcept {
  if (mant_ == 0.0 || !std::isfinite(mant_)) return mant_;
  if (exp_ > std::numeric_limits<double>::max_exponent) {
    return mant_ > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  }
  if (exp_ < std::numeric_limits<double>::min_exponent - 60) return 0.0;
  return std::ldexp(mant_, static_cast<int>(exp_));
}

double ExtendedReal::log_abs() const noexcept {
  if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mant_)) + static_cast<double>(exp_) * kLn2;
}

std::string ExtendedReal::to_string() const {
  char buf[64];
  if (mant_ == 0.0) return "0";
  if (!std::isfinite(mant_)) {
    std::snprintf(buf, sizeof buf, "%.17g", mant_);
    return buf;
  }
  if (exp_ > -900 && exp_ < 900) {
    std::snprintf(buf, sizeof buf, "%.17g", to_double());
    return buf;
  }
  // |x| = 10^(log10|m| + e log10 2); split into digits * 10^dec.
  const long double l10 = std::log10(static_cast<long double>(std::fabs(mant_))) +
                          static_cast<long double>(exp_) * static_cast<long double>(kLog10Of2);
  long double dec = std::floor(l10);
  long double digits = std::pow(10.0L, l10 - dec);
  if (digits >= 10.0L) {
    digits /= 10.0L;
    dec += 1.0L;
  }
  std::snprintf(buf, sizeof buf, "%s%.16Lfe%+lld", mant_ < 0 ? "-" : "", digits,
                static_cast<long long>(dec));
  return buf;
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) noexcept {
  if (a.mant_ == 0.0) return b;
  if (b.mant_ == 0.0) return a;
  const std::int64_t shift = a.exp_ - b.exp_;
  if (shift > 120) return a;
  if (shift < -120) return b;
  if (shift >= 0) {
    return ExtendedReal(a.mant_ + std::ldexp(b.mant_, static_cast<int>(-shift)), a.exp_);
  }
  return ExtendedReal(std::ldexp(a.mant_, static_cast<int>(shift)) + b.mant_, b.exp_);
}

std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) noexcept {
  const ExtendedReal d = a - b;
  if (std::isnan(d.mant_)) return std::partial_ordering::unordered;
  return d.mant_ <=> 0.0;
}

ExtendedReal sqrt(const ExtendedReal& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative ExtendedReal");
  if (x.is_zero()) return x;
  double m = x.mantissa();
  std::int64_t e = x.exponent();
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return ExtendedReal(std::sqrt(m), e / 2);
}

ExtendedReal pow_three_halves(const ExtendedReal& x) { return x * sqrt(x); }

}  // namespace quasitrace::transfer
