#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quasitrace/words/finite_word.hpp"
#include "quasitrace/words/phase.hpp"

namespace quasitrace::words {

/// Deduplicated set of words of a common length, kept in shortlex order.
struct SubwordSet {
  std::size_t length = 0;
  std::vector<FiniteWord> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(const FiniteWord& w) const;

  friend bool operator==(const SubwordSet&, const SubwordSet&) = default;
};

/// All length-n factors of `text`. Throws std::invalid_argument if n == 0 or
/// n > |text|.
SubwordSet factors_of(const FiniteWord& text, std::size_t n);

/// Prefix of the Fibonacci word w = v_0(1) v_0(2) ... of the given length.
FiniteWord fibonacci_prefix(std::size_t length);

/// P_w(n) read off the first `prefix_length` symbols of w. The prefix must be
/// at least saturation_length(n) long (std::invalid_argument otherwise), and
/// the count is re-checked against a prefix twice as long; a mismatch throws
/// std::runtime_error.
SubwordSet subwords(std::size_t prefix_length, std::size_t n);

/// P_w(n) with the shortest admissible prefix.
SubwordSet subwords(std::size_t n);

struct CyclicPermutations {
  std::vector<FiniteWord> rotations;  // rotations[i] = w.rotated(i)
  std::size_t distinct = 0;
};

/// All |w| left rotations of w. Throws std::invalid_argument for empty w.
CyclicPermutations cyclic_permutations(const FiniteWord& w);

/// Membership test for the finite-scale hull: the length-n factors of `window`
/// coincide with P_w(n). Throws std::invalid_argument if the window is shorter
/// than saturation_length(n).
bool hull_membership_check(const FiniteWord& window, std::size_t n);

enum class Side { right, left };

const char* to_string(Side side) noexcept;

struct ParityEntry {
  int k = 0;
  Side side = Side::right;
  bool holds = false;  // window is a rotation of s_k (or: trace matches phase 0)
};

/// Outcome of a parity-class test over k = 0..k_max on one half-line.
struct ParityReport {
  Side side = Side::right;
  bool even_ok = true;  // every tested even k holds
  bool odd_ok = true;   // every tested odd k holds
  std::vector<ParityEntry> per_k;

  bool any_class_ok() const noexcept { return even_ok || odd_ok; }
  void record(int k, bool holds);
};

struct PhaseWordClassification {
  PhasePoint theta;
  ParityReport right;  // s_k^theta = v(1) ... v(F_k)
  ParityReport left;   // t_k^theta = v(-F_k + 1) ... v(0)
  Symbol first_right{};  // v_theta(1)
  Symbol last_left{};    // v_theta(0)
  std::vector<int> special_right;  // k where the right window equals b_k
  std::vector<int> special_left;   // k where the left window equals b_k
};

/// For k = 0..k_max tests whether s_k^theta and t_k^theta are cyclic
/// permutations of s_k. Throws PropertyViolation if on either side neither
/// parity class passes for all k, or if a window is neither a rotation of s_k
/// nor b_k.
PhaseWordClassification classify_phase_words(PhasePoint theta, int k_max);

/// Boundary symbols of b_k as observed by construction.
struct SpecialWordBoundary {
  int k = 0;
  Symbol first{};
  Symbol last{};
};

SpecialWordBoundary special_word_boundary(int k);

/// Census of P_w(F_k): it must equal the F_k distinct rotations of s_k plus b_k.
struct CensusResult {
  int k = 0;
  std::size_t factor_count = 0;
  std::size_t distinct_rotations = 0;
  bool special_present = false;
  bool special_is_rotation = false;
  bool matches = false;
};

CensusResult subword_census(int k);

}  // namespace quasitrace::words
