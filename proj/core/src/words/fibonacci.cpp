#include "quasitrace/words/fibonacci.hpp"

#include <stdexcept>
#include <string>

namespace quasitrace::words {

BigInt fib_number(int k) {
  if (k < -1) throw std::invalid_argument("fib_number: k must be >= -1, got " + std::to_string(k));
  BigInt prev = 1;  // F_{-1}
  BigInt cur = 1;   // F_0
  if (k == -1) return prev;
  for (int i = 1; i <= k; ++i) {
    BigInt next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::uint64_t fib_length(int k) {
  if (k < -1 || k > 90) {
    throw std::out_of_range("fib_length: k must lie in [-1, 90], got " + std::to_string(k));
  }
  std::uint64_t prev = 1;
  std::uint64_t cur = 1;
  if (k == -1) return prev;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t next = cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

FiniteWord substitute(const FiniteWord& w) {
  FiniteWord out;
  out.reserve(w.size() + height(w));
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.push_back(Symbol::one);
    if (w[i] == Symbol::one) out.push_back(Symbol::zero);
  }
  return out;
}

FiniteWord fib_word(int k) {
  if (k < 0 || k > kMaxWordLevel) {
    throw std::out_of_range("fib_word: k must lie in [0, " + std::to_string(kMaxWordLevel) +
                            "], got " + std::to_string(k));
  }
  FiniteWord older = FiniteWord::from_string("1");  // s_0
  if (k == 0) return older;
  FiniteWord newer = FiniteWord::from_string("10");  // s_1
  for (int i = 2; i <= k; ++i) {
    FiniteWord next = newer;
    next.reserve(newer.size() + older.size());
    next.append(older);
    older = std::move(newer);
    newer = std::move(next);
  }
  return newer;
}

FiniteWord fib_word_by_substitution(int k) {
  if (k < 0 || k > kMaxWordLevel) {
    throw std::out_of_range("fib_word_by_substitution: k out of range");
  }
  FiniteWord w = FiniteWord::from_string("1");
  for (int i = 0; i < k; ++i) w = substitute(w);
  return w;
}

FiniteWord special_word(int k) {
  const FiniteWord s = fib_word(k);
  FiniteWord b;
  b.reserve(s.size());
  b.push_back(complement(s.back()));
  b.append(s.slice(0, s.size() - 1));
  return b;
}

BigInt fibonacci_identity(int k) {
  if (k < 1) throw std::invalid_argument("fibonacci_identity: k must be >= 1");
  const BigInt fk = fib_number(k);
  const BigInt fk1 = fib_number(k - 1);
  const BigInt fk2 = fib_number(k - 2);
  BigInt v = fk2 * fk - fk1 * fk1;
  return (k - 1) % 2 == 0 ? v : BigInt(-v);
}

int fib_level_below(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("fib_level_below: n must be >= 1");
  int k = 0;
  while (k + 1 <= 90 && fib_length(k + 1) <= n) ++k;
  return k;
}

std::uint64_t saturation_length(std::uint64_t n) {
  return n + fib_length(fib_level_below(n) + 2);
}

}  // namespace quasitrace::words
