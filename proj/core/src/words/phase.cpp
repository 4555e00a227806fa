#include "quasitrace/words/phase.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace quasitrace::words {

namespace {

using boost::multiprecision::cpp_int;

// Fractional digits of (sqrt(5) - 1) / 2.
constexpr std::string_view kOmegaDigits =
    "6180339887498948482045868343656381177203091798057628621354486227";

const cpp_int& two_pow(unsigned bits) {
  static const cpp_int p128 = cpp_int(1) << 128;
  static const cpp_int p256 = cpp_int(1) << 256;
  return bits == 128 ? p128 : p256;
}

u128 to_u128_mod(const cpp_int& v) {
  cpp_int r = v % two_pow(128);
  if (r < 0) r += two_pow(128);
  const auto hi = static_cast<std::uint64_t>(r >> 64);
  const auto lo = static_cast<std::uint64_t>(r & cpp_int(~std::uint64_t{0}));
  return (static_cast<u128>(hi) << 64) | lo;
}

// floor(num / den) for den > 0, any sign of num.
cpp_int floor_div(const cpp_int& num, const cpp_int& den) {
  cpp_int q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

cpp_int pow10(std::size_t n) {
  cpp_int p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

cpp_int digits_value(std::string_view digits) {
  cpp_int v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

// omega * 2^256, floored.
const cpp_int& omega_256() {
  static const cpp_int v =
      floor_div(digits_value(kOmegaDigits) * two_pow(256), pow10(kOmegaDigits.size()));
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int parse_signed_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("phase: malformed integer in '" + std::string(whole) + "'");
  }
  cpp_int v = digits_value(s);
  return neg ? cpp_int(-v) : v;
}

[[noreturn]] void malformed(std::string_view text) {
  throw std::invalid_argument("phase: cannot parse '" + std::string(text) +
                              "' (expected decimal, p/q, or a*omega/b)");
}

PhasePoint parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) malformed(whole);
  if (!int_part.empty() && !all_digits(int_part)) malformed(whole);
  if (!frac_part.empty() && !all_digits(frac_part)) malformed(whole);
  const cpp_int scale = pow10(frac_part.size());
  const cpp_int numerator = digits_value(int_part) * scale + digits_value(frac_part);
  const cpp_int signed_num = neg ? cpp_int(-numerator) : numerator;
  return PhasePoint::from_raw(to_u128_mod(floor_div(signed_num * two_pow(128), scale)));
}

}  // namespace

PhasePoint PhasePoint::from_rational(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("PhasePoint::from_rational: denominator must be positive");
  return PhasePoint(to_u128_mod(floor_div(cpp_int(num) * two_pow(128), cpp_int(den))));
}

PhasePoint PhasePoint::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("PhasePoint::from_double: non-finite value");
  double f = x - std::floor(x);
  // f is exact in binary; scale by 2^64 twice without rounding.
  const double hi = std::floor(std::ldexp(f, 64));
  const double lo = std::ldexp(f, 64) - hi;
  const auto hi_bits = static_cast<std::uint64_t>(std::min(hi, 18446744073709549568.0));
  const auto lo_bits = static_cast<std::uint64_t>(std::ldexp(lo, 64));
  return PhasePoint((static_cast<u128>(hi_bits) << 64) | lo_bits);
}

PhasePoint PhasePoint::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) malformed(text);

  const auto omega_pos = s.find("omega");
  if (omega_pos != std::string_view::npos) {
    // [a*]omega[/b]
    std::string_view coeff = s.substr(0, omega_pos);
    std::string_view rest = s.substr(omega_pos + 5);
    cpp_int a = 1;
    if (!coeff.empty()) {
      if (coeff.back() != '*') {
        if (coeff == "-") {
          a = -1;
          coeff = {};
        } else {
          malformed(text);
        }
      } else {
        coeff.remove_suffix(1);
        a = parse_signed_integer(trim(coeff), text);
      }
    }
    cpp_int b = 1;
    rest = trim(rest);
    if (!rest.empty()) {
      if (rest.front() != '/') malformed(text);
      b = parse_signed_integer(trim(rest.substr(1)), text);
      if (b <= 0) malformed(text);
    }
    return PhasePoint(to_u128_mod(floor_div(a * omega_256(), b * two_pow(128))));
  }

  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    const cpp_int p = parse_signed_integer(trim(s.substr(0, slash)), text);
    const cpp_int q = parse_signed_integer(trim(s.substr(slash + 1)), text);
    if (q <= 0) malformed(text);
    return PhasePoint(to_u128_mod(floor_div(p * two_pow(128), q)));
  }

  return parse_decimal(s, text);
}

double PhasePoint::to_double() const noexcept {
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(raw_ >> 64)), -64) +
         std::ldexp(static_cast<double>(static_cast<std::uint64_t>(raw_)), -128);
}

long double PhasePoint::to_long_double() const noexcept {
  return std::ldexp(static_cast<long double>(static_cast<std::uint64_t>(raw_ >> 64)), -64) +
         std::ldexp(static_cast<long double>(static_cast<std::uint64_t>(raw_)), -128);
}

PhasePoint PhasePoint::truncated(int bits) const {
  if (bits < 96 || bits > kFractionBits) {
    throw std::invalid_argument("PhasePoint::truncated: bits must lie in [96, 128]");
  }
  if (bits == kFractionBits) return *this;
  const u128 mask = ~((u128{1} << (kFractionBits - bits)) - 1);
  return PhasePoint(raw_ & mask);
}

std::string to_decimal_string(PhasePoint p, int digits) {
  cpp_int v = 0;
  {
    const auto hi = static_cast<std::uint64_t>(p.raw() >> 64);
    const auto lo = static_cast<std::uint64_t>(p.raw());
    v = (cpp_int(hi) << 64) | cpp_int(lo);
  }
  std::string out = "0.";
  for (int i = 0; i < digits; ++i) {
    v *= 10;
    const cpp_int d = v >> 128;
    out.push_back(static_cast<char>('0' + static_cast<int>(d)));
    v -= d << 128;
  }
  return out;
}

PhasePoint golden_omega() noexcept {
  static const PhasePoint omega = PhasePoint::from_raw(to_u128_mod(
      floor_div(digits_value(kOmegaDigits) * two_pow(128), pow10(kOmegaDigits.size()))));
  return omega;
}

PhasePoint one_minus_omega() noexcept { return -golden_omega(); }

int precision_bits_from_env() {
  const char* raw = std::getenv("QUASITRACE_PRECISION_BITS");
  if (raw == nullptr || *raw == '\0') return PhasePoint::kFractionBits;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 96 || v > PhasePoint::kFractionBits) {
    throw std::invalid_argument(
        std::string("QUASITRACE_PRECISION_BITS must be an integer in [96, 128], got '") + raw + "'");
  }
  return static_cast<int>(v);
}

RotationSample rotation_sample(std::int64_t n, PhasePoint theta) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  if (n > kLimit || n < -kLimit) {
    throw std::out_of_range("rotation_symbol: |n| must not exceed 2^62");
  }
  const PhasePoint x = golden_omega().times(n) + theta;
  const u128 a = one_minus_omega().raw();
  const u128 xr = x.raw();
  constexpr u128 kNear = u128{1} << 64;
  const u128 dist_left = xr >= a ? xr - a : a - xr;
  const bool near = dist_left < kNear || xr < kNear || xr > ~u128{0} - kNear;
  return {xr >= a ? Symbol::one : Symbol::zero, near};
}

FiniteWord rotation_block(std::int64_t n_lo, std::int64_t n_hi, PhasePoint theta,
                          std::size_t* near_endpoint_hits) {
  if (n_lo > n_hi) throw std::invalid_argument("rotation_block: n_lo must not exceed n_hi");
  // Range checks at both ends; the walk in between adds omega exactly.
  (void)rotation_sample(n_lo, theta);
  (void)rotation_sample(n_hi, theta);
  FiniteWord w;
  const auto length = static_cast<std::size_t>(n_hi - n_lo) + 1;
  w.reserve(length);
  if (near_endpoint_hits == nullptr) {
    RotationOrbit orbit(n_lo, theta);
    for (std::size_t i = 0; i < length; ++i) w.push_back(orbit.next());
  } else {
    *near_endpoint_hits = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const auto s = rotation_sample(n_lo + static_cast<std::int64_t>(i), theta);
      w.push_back(s.symbol);
      if (s.near_endpoint) ++*near_endpoint_hits;
    }
  }
  return w;
}

RotationOrbit::RotationOrbit(std::int64_t start, PhasePoint theta, Direction dir)
    : point_(golden_omega().times(start) + theta),
      step_(dir == Direction::right ? golden_omega() : -golden_omega()),
      threshold_(one_minus_omega()) {}

}  // namespace quasitrace::words
