#include "quasitrace/words/finite_word.hpp"

#include <bit>
#include <stdexcept>

namespace quasitrace::words {

namespace {

constexpr FiniteWord::Block low_mask(std::size_t count) noexcept {
  return count >= FiniteWord::kBlockBits ? ~FiniteWord::Block{0}
                                         : ((FiniteWord::Block{1} << count) - 1);
}

// Prefix function of `pattern`; classic KMP.
std::vector<std::size_t> prefix_function(const std::string& pattern) {
  std::vector<std::size_t> pi(pattern.size(), 0);
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && pattern[i] != pattern[k]) k = pi[k - 1];
    if (pattern[i] == pattern[k]) ++k;
    pi[i] = k;
  }
  return pi;
}

}  // namespace

FiniteWord FiniteWord::from_string(std::string_view bits) {
  FiniteWord w;
  w.reserve(bits.size());
  for (char c : bits) {
    if (c == '0') {
      w.push_back(Symbol::zero);
    } else if (c == '1') {
      w.push_back(Symbol::one);
    } else {
      throw std::invalid_argument("FiniteWord: symbol must be '0' or '1', got '" +
                                  std::string(1, c) + "'");
    }
  }
  return w;
}

FiniteWord FiniteWord::repeated(Symbol s, std::size_t length) {
  FiniteWord w;
  w.size_ = length;
  w.blocks_.assign((length + kBlockBits - 1) / kBlockBits,
                   s == Symbol::one ? ~Block{0} : Block{0});
  if (s == Symbol::one && length % kBlockBits != 0) {
    w.blocks_.back() &= low_mask(length % kBlockBits);
  }
  return w;
}

void FiniteWord::push_back(Symbol s) {
  const std::size_t offset = size_ % kBlockBits;
  if (offset == 0) blocks_.push_back(0);
  if (s == Symbol::one) blocks_.back() |= Block{1} << offset;
  ++size_;
}

FiniteWord& FiniteWord::append(const FiniteWord& other) {
  if (other.size_ == 0) return *this;
  const std::size_t offset = size_ % kBlockBits;
  if (offset == 0) {
    blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
  } else {
    blocks_.reserve((size_ + other.size_ + kBlockBits - 1) / kBlockBits);
    for (Block b : other.blocks_) {
      blocks_.back() |= b << offset;
      blocks_.push_back(b >> (kBlockBits - offset));
    }
    blocks_.resize((size_ + other.size_ + kBlockBits - 1) / kBlockBits);
  }
  size_ += other.size_;
  return *this;
}

FiniteWord::Block FiniteWord::extract_bits(std::size_t pos, std::size_t count) const noexcept {
  const std::size_t b = pos / kBlockBits;
  const std::size_t o = pos % kBlockBits;
  Block v = blocks_[b] >> o;
  if (o != 0 && b + 1 < blocks_.size()) v |= blocks_[b + 1] << (kBlockBits - o);
  return v & low_mask(count);
}

FiniteWord FiniteWord::slice(std::size_t pos, std::size_t len) const {
  if (pos > size_ || len > size_ - pos) {
    throw std::out_of_range("FiniteWord::slice: range [" + std::to_string(pos) + ", " +
                            std::to_string(pos + len) + ") exceeds length " +
                            std::to_string(size_));
  }
  FiniteWord out;
  out.size_ = len;
  out.blocks_.resize((len + kBlockBits - 1) / kBlockBits);
  for (std::size_t i = 0; i < out.blocks_.size(); ++i) {
    const std::size_t start = i * kBlockBits;
    const std::size_t count = std::min(kBlockBits, len - start);
    out.blocks_[i] = extract_bits(pos + start, count);
  }
  return out;
}

FiniteWord FiniteWord::rotated(std::size_t shift) const {
  if (size_ == 0) return *this;
  shift %= size_;
  if (shift == 0) return *this;
  FiniteWord out = slice(shift, size_ - shift);
  out.append(slice(0, shift));
  return out;
}

std::size_t FiniteWord::count_ones() const noexcept {
  std::size_t n = 0;
  for (Block b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::string FiniteWord::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) s[i] = to_char((*this)[i]);
  return s;
}

std::strong_ordering operator<=>(const FiniteWord& a, const FiniteWord& b) noexcept {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const FiniteWord::Block diff = a.blocks_[i] ^ b.blocks_[i];
    if (diff != 0) {
      const int bit = std::countr_zero(diff);
      return ((a.blocks_[i] >> bit) & 1U) == 0 ? std::strong_ordering::less
                                                : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t FiniteWordHash::operator()(const FiniteWord& w) const noexcept {
  // splitmix64 finaliser folded over the blocks
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (FiniteWord::Block b : w.blocks()) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

std::size_t rotation_offset(const FiniteWord& w, const FiniteWord& candidate) {
  if (w.size() != candidate.size()) return std::string::npos;
  if (w.empty()) return 0;
  const std::string pattern = candidate.to_string();
  const std::string base = w.to_string();
  const std::string text = base + base.substr(0, base.size() - 1);
  const auto pi = prefix_function(pattern);
  std::size_t k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern[k]) k = pi[k - 1];
    if (text[i] == pattern[k]) ++k;
    if (k == pattern.size()) return i + 1 - pattern.size();
  }
  return std::string::npos;
}

}  // namespace quasitrace::words
