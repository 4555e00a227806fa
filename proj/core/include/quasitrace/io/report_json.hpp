#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasitrace/dynamics/bound.hpp"
#include "quasitrace/transfer/transfer.hpp"
#include "quasitrace/words/combinatorics.hpp"

namespace quasitrace::io {

std::string parity_json(std::span<const words::PhaseWordClassification> phases, int k_max);

std::string trace_parity_json(std::span<const transfer::TraceParityReport> reports);

/// Fields lambda, C1, p_used, G_emp, theta_list, T_grid, table, plus
/// all_valid and theta_ratio.
std::string bound_report_json(const dynamics::BoundReport& report);

std::string trend_json(std::span<const dynamics::TrendRow> rows);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Per-command outcome, written as summary_<command>.json.
struct Summary {
  std::string command;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> metrics;

  bool passed() const noexcept;
};

std::string summary_json(const Summary& summary);

/// Throws std::invalid_argument if the text is not a summary document.
Summary parse_summary(const std::string& text);

/// One document listing every summary in the given order and an overall flag.
std::string aggregate_json(std::span<const Summary> summaries);

}  // namespace quasitrace::io
