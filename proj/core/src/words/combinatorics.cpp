#include "quasitrace/words/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "quasitrace/error.hpp"
#include "quasitrace/words/fibonacci.hpp"

namespace quasitrace::words {

bool SubwordSet::contains(const FiniteWord& w) const {
  return std::binary_search(members.begin(), members.end(), w);
}

SubwordSet factors_of(const FiniteWord& text, std::size_t n) {
  if (n == 0 || n > text.size()) {
    throw std::invalid_argument("factors_of: need 1 <= n <= |text| (n = " + std::to_string(n) +
                                ", |text| = " + std::to_string(text.size()) + ")");
  }
  std::unordered_set<FiniteWord, FiniteWordHash> seen;
  for (std::size_t pos = 0; pos + n <= text.size(); ++pos) seen.insert(text.slice(pos, n));
  SubwordSet out;
  out.length = n;
  out.members.assign(seen.begin(), seen.end());
  std::sort(out.members.begin(), out.members.end());
  return out;
}

FiniteWord fibonacci_prefix(std::size_t length) {
  int k = 0;
  while (fib_length(k) < length) {
    if (++k > kMaxWordLevel) throw std::out_of_range("fibonacci_prefix: length exceeds F_40");
  }
  return fib_word(k).slice(0, length);
}

SubwordSet subwords(std::size_t prefix_length, std::size_t n) {
  if (n == 0) throw std::invalid_argument("subwords: n must be positive");
  const std::uint64_t need = saturation_length(n);
  if (prefix_length < need) {
    throw std::invalid_argument("subwords: prefix of length " + std::to_string(prefix_length) +
                                " cannot saturate length-" + std::to_string(n) +
                                " factors (need >= " + std::to_string(need) + ")");
  }
  SubwordSet set = factors_of(fibonacci_prefix(prefix_length), n);
  const SubwordSet doubled = factors_of(fibonacci_prefix(2 * prefix_length), n);
  if (doubled.size() != set.size()) {
    throw std::runtime_error("subwords: factor count for n = " + std::to_string(n) +
                             " did not stabilise when the prefix was doubled");
  }
  return set;
}

SubwordSet subwords(std::size_t n) { return subwords(saturation_length(n), n); }

CyclicPermutations cyclic_permutations(const FiniteWord& w) {
  if (w.empty()) throw std::invalid_argument("cyclic_permutations: empty word");
  CyclicPermutations out;
  out.rotations.reserve(w.size());
  std::unordered_set<FiniteWord, FiniteWordHash> distinct;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.rotations.push_back(w.rotated(i));
    distinct.insert(out.rotations.back());
  }
  out.distinct = distinct.size();
  return out;
}

bool hull_membership_check(const FiniteWord& window, std::size_t n) {
  if (n == 0) throw std::invalid_argument("hull_membership_check: n must be positive");
  const std::uint64_t need = saturation_length(n);
  if (window.size() < need) {
    throw std::invalid_argument("hull_membership_check: window of length " +
                                std::to_string(window.size()) + " is too short for n = " +
                                std::to_string(n) + " (need >= " + std::to_string(need) + ")");
  }
  return factors_of(window, n) == subwords(n);
}

const char* to_string(Side side) noexcept { return side == Side::right ? "right" : "left"; }

void ParityReport::record(int k, bool holds) {
  per_k.push_back({k, side, holds});
  if (!holds) (k % 2 == 0 ? even_ok : odd_ok) = false;
}

PhaseWordClassification classify_phase_words(PhasePoint theta, int k_max) {
  if (k_max < 0 || k_max > kMaxWordLevel) {
    throw std::out_of_range("classify_phase_words: k_max out of range");
  }
  const auto longest = static_cast<std::int64_t>(fib_length(k_max));
  const FiniteWord s_max = fib_word(k_max);
  const FiniteWord right_block = rotation_block(1, longest, theta);
  const FiniteWord left_block = rotation_block(-longest + 1, 0, theta);

  PhaseWordClassification out;
  out.theta = theta;
  out.right.side = Side::right;
  out.left.side = Side::left;
  out.first_right = right_block.front();
  out.last_left = left_block.back();

  for (int k = 0; k <= k_max; ++k) {
    const auto len = static_cast<std::size_t>(fib_length(k));
    const FiniteWord s_k = s_max.slice(0, len);
    const FiniteWord b_k = special_word(k);
    const FiniteWord right = right_block.slice(0, len);
    const FiniteWord left = left_block.slice(left_block.size() - len, len);

    const bool right_cyclic = is_rotation_of(right, s_k);
    const bool left_cyclic = is_rotation_of(left, s_k);
    out.right.record(k, right_cyclic);
    out.left.record(k, left_cyclic);
    if (!right_cyclic) {
      if (right != b_k) {
        throw PropertyViolation("classify_phase_words: right window at k = " + std::to_string(k) +
                                " is neither a rotation of s_k nor b_k");
      }
      out.special_right.push_back(k);
    }
    if (!left_cyclic) {
      if (left != b_k) {
        throw PropertyViolation("classify_phase_words: left window at k = " + std::to_string(k) +
                                " is neither a rotation of s_k nor b_k");
      }
      out.special_left.push_back(k);
    }
  }

  if (!out.right.any_class_ok() || !out.left.any_class_ok()) {
    throw PropertyViolation("classify_phase_words: no parity class of k is fully conjugate to s_k "
                            "at theta = " + to_decimal_string(theta, 20));
  }
  return out;
}

SpecialWordBoundary special_word_boundary(int k) {
  const FiniteWord b = special_word(k);
  return {k, b.front(), b.back()};
}

CensusResult subword_census(int k) {
  CensusResult r;
  r.k = k;
  const auto len = static_cast<std::size_t>(fib_length(k));
  const FiniteWord s_k = fib_word(k);
  const FiniteWord b_k = special_word(k);
  const SubwordSet factors = subwords(len);
  const CyclicPermutations rot = cyclic_permutations(s_k);

  r.factor_count = factors.size();
  r.distinct_rotations = rot.distinct;
  r.special_present = factors.contains(b_k);
  r.special_is_rotation = is_rotation_of(b_k, s_k);

  std::vector<FiniteWord> expected = rot.rotations;
  expected.push_back(b_k);
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  r.matches = expected == factors.members && r.distinct_rotations == len &&
              r.special_present && !r.special_is_rotation;
  return r;
}

}  // namespace quasitrace::words
