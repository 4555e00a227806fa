#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "quasitrace/transfer/extended_real.hpp"

namespace quasitrace::transfer {

/// Value together with its derivative in the energy, d/dE.
struct DualScalar {
  double value = 0.0;
  double deriv = 0.0;

  friend constexpr DualScalar operator+(DualScalar a, DualScalar b) noexcept {
    return {a.value + b.value, a.deriv + b.deriv};
  }
  friend constexpr DualScalar operator-(DualScalar a, DualScalar b) noexcept {
    return {a.value - b.value, a.deriv - b.deriv};
  }
  friend constexpr DualScalar operator*(DualScalar a, DualScalar b) noexcept {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
  }
  constexpr DualScalar operator-() const noexcept { return {-value, -deriv}; }
};

/// Quad precision for products near the spectrum, where double products lose
/// roughly eps * |E dx/dE| in the trace.
using Quad = __float128;

inline double magnitude(double x) noexcept { return std::fabs(x); }
inline double magnitude(Quad x) noexcept { return static_cast<double>(x < 0 ? -x : x); }
inline double magnitude(DualScalar x) noexcept {
  return std::max(std::fabs(x.value), std::fabs(x.deriv));
}
inline double scaled(double x, int e) noexcept { return std::ldexp(x, e); }
inline Quad scaled(Quad x, int e) noexcept { return x * static_cast<Quad>(std::ldexp(1.0, e)); }
inline DualScalar scaled(DualScalar x, int e) noexcept {
  return {std::ldexp(x.value, e), std::ldexp(x.deriv, e)};
}

/// 2x2 matrix [[a11, a12], [a21, a22]].
template <class T>
struct Mat2 {
  T a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() noexcept { return {T{1}, T{}, T{}, T{1}}; }

  constexpr T trace() const noexcept { return a11 + a22; }
  constexpr T det() const noexcept { return a11 * a22 - a12 * a21; }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

  double max_magnitude() const noexcept {
    return std::max({magnitude(a11), magnitude(a12), magnitude(a21), magnitude(a22)});
  }
};

using TransferMatrix = Mat2<double>;
using DualMatrix = Mat2<DualScalar>;

/// Inverse of a unimodular matrix: [[d, -b], [-c, a]].
constexpr TransferMatrix sl2_inverse(const TransferMatrix& m) noexcept {
  return {m.a22, -m.a12, -m.a21, m.a11};
}

/// Largest singular value squared, closed form for 2x2:
/// s^2 = (t + sqrt(t^2 - 4 det^2)) / 2 with t = tr(A^T A).
inline double spectral_norm_sq(const TransferMatrix& m) noexcept {
  const double t = m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22;
  const double d = m.det();
  const double disc = std::max(0.0, t * t - 4.0 * d * d);
  return 0.5 * (t + std::sqrt(disc));
}

/// mantissa * 2^exponent, entrywise. Products of transfer matrices leave
/// double range long before k ~ 30; the exponent absorbs the growth.
template <class T>
struct Scaled {
  Mat2<T> mantissa = Mat2<T>::identity();
  std::int64_t exponent = 0;

  // Rescale by a power of two once entries pass ~1e150.
  void renormalize() noexcept {
    constexpr double kUpper = 0x1p500;
    constexpr double kLower = 0x1p-500;
    const double mag = mantissa.max_magnitude();
    if (mag > kUpper || (mag < kLower && mag > 0.0)) {
      int e = 0;
      std::frexp(mag, &e);
      mantissa = {scaled(mantissa.a11, -e), scaled(mantissa.a12, -e), scaled(mantissa.a21, -e),
                  scaled(mantissa.a22, -e)};
      exponent += e;
    }
  }
};

using ScaledMatrix = Scaled<double>;
using ScaledDualMatrix = Scaled<DualScalar>;

inline ExtendedReal trace(const ScaledMatrix& m) {
  return ExtendedReal(m.mantissa.trace(), m.exponent);
}

inline ExtendedReal determinant(const ScaledMatrix& m) {
  return ExtendedReal(m.mantissa.det(), 2 * m.exponent);
}

/// Spectral norm squared of a scaled matrix, evaluated on a copy normalised to
/// unit magnitude so t^2 cannot overflow.
inline ExtendedReal spectral_norm_sq(const ScaledMatrix& m) {
  const double mag = m.mantissa.max_magnitude();
  if (mag == 0.0) return ExtendedReal(0.0);
  int e = 0;
  std::frexp(mag, &e);
  const TransferMatrix unit{std::ldexp(m.mantissa.a11, -e), std::ldexp(m.mantissa.a12, -e),
                            std::ldexp(m.mantissa.a21, -e), std::ldexp(m.mantissa.a22, -e)};
  return ExtendedReal(spectral_norm_sq(unit), 2 * (m.exponent + e));
}

}  // namespace quasitrace::transfer
