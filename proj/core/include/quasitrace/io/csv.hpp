#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "quasitrace/dynamics/bound.hpp"
#include "quasitrace/spectrum/bands.hpp"
#include "quasitrace/spectrum/growth.hpp"
#include "quasitrace/transfer/transfer.hpp"

namespace quasitrace::io {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Decimal with `digits` significant digits, exact enough for quad precision.
std::string format_real(spectrum::Real x, int digits = 25);

/// Phase in [0, 1) with 36 decimals.
std::string format_phase(words::PhasePoint theta);

struct NormRecord {
  double L = 0.0;  // negative: left half-line
  double energy = 0.0;
  double lambda = 0.0;
  words::PhasePoint theta;
  transfer::ExtendedReal norm_sq;
};

struct MarginRecord {
  double energy = 0.0;
  double lambda = 0.0;
  words::PhasePoint theta;
  transfer::NormTraceMargin margin;
};

struct WordRow {
  int k = 0;
  std::uint64_t length = 0;  // F_k
  std::uint64_t height = 0;  // number of ones in s_k
  char special_first = '0';  // first symbol of b_k
  char special_last = '0';   // last symbol of b_k
  bool identity_ok = false;  // F_{k-1} F_{k+1} - F_k^2 has modulus 1
  int census = -1;           // -1 not run, 0 failed, 1 passed
  std::string word;          // s_k, empty when longer than the emission cap
};

std::string traces_csv(std::span<const transfer::TraceSample> rows);
std::string norms_csv(std::span<const NormRecord> rows);
std::string margins_csv(std::span<const MarginRecord> rows);
std::string bands_csv(std::span<const std::vector<spectrum::Band>> levels);
std::string growth_csv(std::span<const spectrum::GrowthFit> fits);
std::string dynamics_csv(std::span<const dynamics::AbelRecord> rows);
std::string words_csv(std::span<const WordRow> rows);

/// Writes `content` to dir/name, creating dir. Throws std::runtime_error on
/// I/O failure.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content);

}  // namespace quasitrace::io
