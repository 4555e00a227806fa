#include "quasitrace/io/report_json.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "quasitrace/io/csv.hpp"

namespace quasitrace::io {

namespace {

using nlohmann::ordered_json;

// NaN and infinities have no JSON form; they are written as strings.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

ordered_json parity_report(const words::ParityReport& r) {
  ordered_json per_k = ordered_json::array();
  for (const auto& e : r.per_k) per_k.push_back({{"k", e.k}, {"holds", e.holds}});
  return {{"side", words::to_string(r.side)},
          {"even_ok", r.even_ok},
          {"odd_ok", r.odd_ok},
          {"any_class_ok", r.any_class_ok()},
          {"per_k", per_k}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string parity_json(std::span<const words::PhaseWordClassification> phases, int k_max) {
  ordered_json list = ordered_json::array();
  bool all_ok = true;
  for (const auto& p : phases) {
    all_ok = all_ok && p.right.any_class_ok() && p.left.any_class_ok();
    list.push_back({{"theta", format_phase(p.theta)},
                    {"first_right", std::string(1, words::to_char(p.first_right))},
                    {"last_left", std::string(1, words::to_char(p.last_left))},
                    {"right", parity_report(p.right)},
                    {"left", parity_report(p.left)},
                    {"special_right", p.special_right},
                    {"special_left", p.special_left}});
  }
  return dump({{"k_max", k_max}, {"all_ok", all_ok}, {"phases", list}});
}

std::string trace_parity_json(std::span<const transfer::TraceParityReport> reports) {
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json dev_x = ordered_json::array();
    ordered_json dev_y = ordered_json::array();
    for (double d : r.max_rel_dev_x) dev_x.push_back(number(d));
    for (double d : r.max_rel_dev_y) dev_y.push_back(number(d));
    list.push_back({{"theta", format_phase(r.theta)},
                    {"lambda", number(r.lambda)},
                    {"x_side", parity_report(r.x_side)},
                    {"y_side", parity_report(r.y_side)},
                    {"max_rel_dev_x", dev_x},
                    {"max_rel_dev_y", dev_y}});
  }
  return dump({{"reports", list}});
}

std::string bound_report_json(const dynamics::BoundReport& report) {
  ordered_json thetas = ordered_json::array();
  for (const auto& t : report.theta_list) thetas.push_back(format_phase(t));
  ordered_json Ts = ordered_json::array();
  for (double T : report.T_grid) Ts.push_back(number(T));
  ordered_json table = ordered_json::array();
  for (const auto& r : report.table) {
    table.push_back({{"theta", format_phase(r.theta)},
                     {"T", number(r.T)},
                     {"L", number(r.L)},
                     {"N", r.N},
                     {"mass", number(r.mass)},
                     {"edge_mass", number(r.edge_mass)},
                     {"valid", r.valid},
                     {"attempts", r.attempts}});
  }
  ordered_json ratio = ordered_json::array();
  for (double x : report.theta_ratio) ratio.push_back(number(x));
  return dump({{"lambda", number(report.lambda)},
               {"C1", number(report.C1)},
               {"p_used", number(report.p_used)},
               {"G_emp", number(report.G_emp)},
               {"theta_list", thetas},
               {"T_grid", Ts},
               {"table", table},
               {"all_valid", report.all_valid},
               {"theta_ratio", ratio}});
}

std::string trend_json(std::span<const dynamics::TrendRow> rows) {
  ordered_json list = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json mass = ordered_json::array();
    for (double m : r.mass) mass.push_back(number(m));
    list.push_back({{"lambda", number(r.lambda)},
                    {"p_fit", number(r.p_fit)},
                    {"p_log_lambda", number(r.p_log_lambda)},
                    {"N", r.N},
                    {"valid", r.valid},
                    {"mass", mass}});
  }
  return dump({{"trend", list}});
}

bool Summary::passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string summary_json(const Summary& summary) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : summary.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  ordered_json metrics = ordered_json::object();
  for (const auto& [name, value] : summary.metrics) metrics[name] = number(value);
  return dump({{"command", summary.command},
               {"passed", summary.passed()},
               {"checks", checks},
               {"metrics", metrics}});
}

Summary parse_summary(const std::string& text) {
  Summary s;
  try {
    const auto j = ordered_json::parse(text);
    s.command = j.at("command").get<std::string>();
    for (const auto& c : j.at("checks")) {
      s.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                          c.at("detail").get<std::string>()});
    }
    for (const auto& [name, value] : j.at("metrics").items()) {
      s.metrics.emplace_back(name, value.is_number() ? value.get<double>()
                                                     : std::stod(value.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("not a summary document: ") + e.what());
  }
  return s;
}

std::string aggregate_json(std::span<const Summary> summaries) {
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const auto& s : summaries) {
    all = all && s.passed();
    list.push_back(ordered_json::parse(summary_json(s)));
  }
  return dump({{"passed", all}, {"commands", list}});
}

}  // namespace quasitrace::io
