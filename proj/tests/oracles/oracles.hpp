#pragma once

// Reference implementations for tests. Everything here is written from the
// definitions with plain strings, decimal floats and explicit matrix products,
// and shares no code with the library.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using Dec = boost::multiprecision::cpp_dec_float_50;

inline std::string fib_string(int k) {
  std::string a = "1", b = "10";
  if (k == 0) return a;
  for (int i = 1; i < k; ++i) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

inline std::uint64_t fib_len(int k) {
  std::uint64_t a = 1, b = 1;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

inline std::set<std::string> factors(const std::string& text, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= text.size(); ++i) out.insert(text.substr(i, n));
  return out;
}

inline Dec omega() { return (boost::multiprecision::sqrt(Dec(5)) - 1) / 2; }

inline Dec frac(const Dec& x) { return x - boost::multiprecision::floor(x); }

// v_theta(n) = 1 iff frac(n omega + theta) lies in [1 - omega, 1).
inline char rotation_symbol(std::int64_t n, const Dec& theta) {
  const Dec w = omega();
  return frac(Dec(n) * w + theta) >= 1 - w ? '1' : '0';
}

inline std::string rotation_block(std::int64_t lo, std::int64_t hi, const Dec& theta) {
  std::string out;
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(rotation_symbol(n, theta));
  return out;
}

using Mat = std::array<long double, 4>;  // row-major 2x2

inline Mat mul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat step(long double E, long double lambda, char v) {
  return {E - lambda * (v == '1' ? 1 : 0), -1, 1, 0};
}

// T(E) for the word v(1) .. v(m): T_m ... T_1.
inline Mat transfer_of(const std::string& word, long double E, long double lambda) {
  Mat m{1, 0, 0, 1};
  for (char c : word) m = mul(step(E, lambda, c), m);
  return m;
}

inline long double trace(const Mat& m) { return m[0] + m[3]; }

inline long double frob_sq(const Mat& m) {
  return m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
}

// Largest singular value squared via the eigenvalues of A^T A.
inline long double spectral_sq(const Mat& m) {
  const long double p = m[0] * m[0] + m[2] * m[2];
  const long double q = m[0] * m[1] + m[2] * m[3];
  const long double r = m[1] * m[1] + m[3] * m[3];
  const long double mid = (p + r) / 2, half = (p - r) / 2;
  return mid + std::sqrt(half * half + q * q);
}

inline Mat inverse(const Mat& m) { return {m[3], -m[1], -m[2], m[0]}; }

// M(n) from its definition, with symbols v(m) supplied by `v`.
template <class V>
Mat product(std::int64_t n, long double E, long double lambda, V&& v) {
  Mat m{1, 0, 0, 1};
  if (n > 0) {
    for (std::int64_t j = 1; j <= n; ++j) m = mul(step(E, lambda, v(j)), m);
  } else {
    for (std::int64_t j = 0; j >= n + 1; --j) m = mul(inverse(step(E, lambda, v(j))), m);
  }
  return m;
}

// x_k(E) = tr T of s_k at phase 0, by direct products.
inline long double trace_direct(int k, long double E, long double lambda) {
  return trace(transfer_of(fib_string(k), E, lambda));
}

// Central difference in E.
template <class F>
long double derivative(F&& f, long double E, long double h = 1e-6L) {
  return (f(E + h) - f(E - h)) / (2 * h);
}

// Dense symmetric eigenproblem by cyclic Jacobi, for small N only.
struct Eigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[j][i]
};

inline Eigen jacobi(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  Eigen out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a[j][j];
    for (std::size_t i = 0; i < n; ++i) out.vectors[j][i] = v[i][j];
  }
  return out;
}

// |psi_t(i)|^2 for psi_0 = e_{start}, from a full eigendecomposition.
inline std::vector<double> evolve_probabilities(const Eigen& e, std::size_t start, double t) {
  const std::size_t n = e.values.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> amp = 0;
    for (std::size_t j = 0; j < n; ++j)
      amp += std::polar(e.vectors[j][start] * e.vectors[j][i], -e.values[j] * t);
    out[i] = std::norm(amp);
  }
  return out;
}

}  // namespace oracle
