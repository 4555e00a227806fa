#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace quasitrace::words {

/// Letter of the binary alphabet {0, 1}.
enum class Symbol : std::uint8_t { zero = 0, one = 1 };

constexpr Symbol complement(Symbol s) noexcept {
  return s == Symbol::zero ? Symbol::one : Symbol::zero;
}

constexpr char to_char(Symbol s) noexcept { return s == Symbol::one ? '1' : '0'; }

/// Finite binary word stored as packed bits (symbol i lives in bit i % 64 of
/// block i / 64). Unused high bits of the last block are always zero, so block
/// equality is symbol equality.
class FiniteWord {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  FiniteWord() = default;

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument on any
  /// other character.
  static FiniteWord from_string(std::string_view bits);

  /// Word of `length` copies of `s`.
  static FiniteWord repeated(Symbol s, std::size_t length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Symbol operator[](std::size_t i) const noexcept {
    return static_cast<Symbol>((blocks_[i / kBlockBits] >> (i % kBlockBits)) & 1U);
  }
  Symbol front() const noexcept { return (*this)[0]; }
  Symbol back() const noexcept { return (*this)[size_ - 1]; }

  void push_back(Symbol s);
  FiniteWord& append(const FiniteWord& other);
  void reserve(std::size_t symbols) { blocks_.reserve((symbols + kBlockBits - 1) / kBlockBits); }

  /// Factor of length `len` starting at `pos`. Throws std::out_of_range if the
  /// range leaves the word.
  FiniteWord slice(std::size_t pos, std::size_t len) const;

  /// Left rotation: result[i] = (*this)[(i + shift) % size()].
  FiniteWord rotated(std::size_t shift) const;

  /// Number of 1 symbols.
  std::size_t count_ones() const noexcept;

  std::string to_string() const;

  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const FiniteWord& a, const FiniteWord& b) noexcept {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }

  /// Shortlex order: shorter words first, then lexicographic with 0 < 1.
  friend std::strong_ordering operator<=>(const FiniteWord& a, const FiniteWord& b) noexcept;

  friend FiniteWord operator+(FiniteWord a, const FiniteWord& b) {
    a.append(b);
    return a;
  }

 private:
  std::vector<Block> blocks_;
  std::size_t size_ = 0;

  // Bits [pos, pos + count) as the low bits of a block, count <= 64.
  Block extract_bits(std::size_t pos, std::size_t count) const noexcept;
};

struct FiniteWordHash {
  std::size_t operator()(const FiniteWord& w) const noexcept;
};

/// Left-rotation search: smallest shift with w.rotated(shift) == candidate, or
/// npos when `candidate` is not a cyclic permutation of `w`. Runs KMP over the
/// doubled word, so it is linear in |w|.
std::size_t rotation_offset(const FiniteWord& w, const FiniteWord& candidate);

inline bool is_rotation_of(const FiniteWord& candidate, const FiniteWord& w) {
  return rotation_offset(w, candidate) != std::string::npos;
}

}  // namespace quasitrace::words
