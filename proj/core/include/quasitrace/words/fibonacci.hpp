#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "quasitrace/words/finite_word.hpp"

namespace quasitrace::words {

using BigInt = boost::multiprecision::cpp_int;

/// Largest level accepted by fib_word (F_40 ~ 2.7e8 symbols, ~33 MB packed).
inline constexpr int kMaxWordLevel = 40;

/// Fibonacci numbers with F_{-1} = F_0 = 1, F_k = F_{k-1} + F_{k-2}.
/// Throws std::invalid_argument for k < -1.
BigInt fib_number(int k);

/// F_k as a machine integer; valid for -1 <= k <= 90. Throws otherwise.
std::uint64_t fib_length(int k);

/// Morphic image under 0 -> 1, 1 -> 10.
FiniteWord substitute(const FiniteWord& w);

/// s_k built by concatenation, s_k = s_{k-1} s_{k-2} with s_0 = 1, s_1 = 10.
/// Throws std::out_of_range outside 0 <= k <= kMaxWordLevel.
FiniteWord fib_word(int k);

/// s_k built as S^k(1); independent of fib_word, used for cross-checks.
FiniteWord fib_word_by_substitution(int k);

/// Number of 1 symbols.
inline std::size_t height(const FiniteWord& w) noexcept { return w.count_ones(); }

/// b_k: complement of the last symbol of s_k followed by the first F_k - 1
/// symbols of s_k. The unique length-F_k factor that is not a rotation of s_k.
FiniteWord special_word(int k);

/// (-1)^{k-1} (F_{k-2} F_k - F_{k-1}^2), exact. Equal to 1 for every k >= 1.
/// Throws std::invalid_argument for k < 1.
BigInt fibonacci_identity(int k);

/// Largest k with F_k <= n (n >= 1).
int fib_level_below(std::uint64_t n);

/// Window length n + F_{k+2} (k = fib_level_below(n)) after which every
/// length-n factor of the Fibonacci word has appeared.
std::uint64_t saturation_length(std::uint64_t n);

}  // namespace quasitrace::words
