#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quasitrace/dynamics/bound.hpp"
#include "quasitrace/error.hpp"
#include "quasitrace/io/csv.hpp"
#include "quasitrace/spectrum/growth.hpp"
#include "quasitrace/transfer/transfer.hpp"
#include "quasitrace/words/combinatorics.hpp"
#include "quasitrace/words/fibonacci.hpp"

namespace quasitrace::cli {

namespace {

using io::CheckResult;
using io::format_double;
using io::Summary;

constexpr std::uint64_t kWordEmissionCap = 1024;
constexpr int kComplexityMaxN = 100;
constexpr int kCensusMaxK = 12;

std::string lambda_tag(double lambda) { return "lambda=" + format_double(lambda); }

void finish(const RunConfig& config, const Summary& summary) {
  io::write_file(config.out, "summary_" + summary.command + ".json", io::summary_json(summary));
  io::write_file(config.out, "config_" + summary.command + ".json", to_json(config));
}

std::vector<double> fib_grid(int k_lo, int k_hi) {
  std::vector<double> out;
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(static_cast<double>(words::fib_length(k)));
  return out;
}

}  // namespace

io::Summary cmd_words(const RunConfig& config) {
  config.validate();
  const auto thetas = config.phases({"0"});
  const int k_max = config.k_max;
  Summary summary{"words", {}, {}};

  {
    int bad = 0;
    for (int n = 1; n <= kComplexityMaxN; ++n) {
      if (words::subwords(static_cast<std::size_t>(n)).size() != static_cast<std::size_t>(n) + 1) ++bad;
    }
    summary.checks.push_back({"complexity", bad == 0,
                              "p(n) = n + 1 for 1 <= n <= " + std::to_string(kComplexityMaxN) +
                                  ", failures: " + std::to_string(bad)});
  }

  std::vector<io::WordRow> rows;
  int substitution_bad = 0;
  int identity_bad = 0;
  int census_bad = 0;
  for (int k = 0; k <= k_max; ++k) {
    const auto s = words::fib_word(k);
    if (s != words::fib_word_by_substitution(k)) ++substitution_bad;
    io::WordRow row;
    row.k = k;
    row.length = s.size();
    row.height = words::height(s);
    const auto boundary = words::special_word_boundary(k);
    row.special_first = words::to_char(boundary.first);
    row.special_last = words::to_char(boundary.last);
    row.identity_ok = k >= 1 ? words::fibonacci_identity(k) == 1 : true;
    if (!row.identity_ok) ++identity_bad;
    if (k >= 1 && k <= kCensusMaxK) {
      row.census = words::subword_census(k).matches ? 1 : 0;
      if (row.census == 0) ++census_bad;
    }
    if (row.length <= kWordEmissionCap) row.word = s.to_string();
    rows.push_back(std::move(row));
  }
  summary.checks.push_back({"substitution", substitution_bad == 0,
                            "s_k by concatenation equals S^k(1), failures: " + std::to_string(substitution_bad)});
  summary.checks.push_back({"identity", identity_bad == 0,
                            "Fibonacci identity equals 1, failures: " + std::to_string(identity_bad)});
  summary.checks.push_back({"census", census_bad == 0,
                            "length-F_k factors are the rotations of s_k and b_k for k <= " +
                                std::to_string(std::min(k_max, kCensusMaxK)) +
                                ", failures: " + std::to_string(census_bad)});

  std::vector<words::PhaseWordClassification> classes;
  std::string failures;
  for (const auto& theta : thetas) {
    try {
      classes.push_back(words::classify_phase_words(theta, k_max));
    } catch (const PropertyViolation& e) {
      failures += std::string(failures.empty() ? "" : "; ") + e.what();
    }
  }
  summary.checks.push_back({"phase_conjugacy", failures.empty(),
                            failures.empty() ? std::to_string(thetas.size()) + " phases, each side has a passing parity class"
                                             : failures});
  summary.metrics.emplace_back("phases", static_cast<double>(thetas.size()));

  io::write_file(config.out, "words.csv", io::words_csv(rows));
  io::write_file(config.out, "parity.json", io::parity_json(classes, k_max));
  finish(config, summary);
  return summary;
}

io::Summary cmd_traces(const RunConfig& config) {
  config.validate();
  const auto thetas =
      config.phases({"0", "0.1", "1/4", "1/3", "1/2", "0.739", "omega/2", "omega/3"});
  const int k_max = config.k_max;
  Summary summary{"traces", {}, {}};

  std::vector<transfer::TraceSample> traces;
  std::vector<io::NormRecord> norms;
  std::vector<io::MarginRecord> margins;
  std::vector<transfer::TraceParityReport> parity;
  std::string parity_failures;
  std::string margin_failures;
  double fricke_worst = 0.0;
  double margin_worst = 0.0;
  const auto L_grid = fib_grid(0, k_max);

  for (double lambda : config.lambdas) {
    const auto energies = config.energy_points(lambda);
    for (double e : energies) {
      const auto x = transfer::trace_levels(k_max, e, lambda, words::PhasePoint{});
      for (int k = 1; k + 1 <= k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const auto I = transfer::fricke_quantity(x[i + 1], x[i], x[i - 1]);
        const auto scale = transfer::ExtendedReal(1.0 + lambda * lambda) +
                           (x[i + 1] * x[i] * x[i - 1]).abs();
        const double rel = ((I - transfer::ExtendedReal(lambda * lambda)).abs() / scale).to_double();
        fricke_worst = std::max(fricke_worst, rel);
      }
    }
    for (const auto& theta : thetas) {
      try {
        parity.push_back(transfer::phase_trace_parity(theta, lambda, energies, k_max));
      } catch (const PropertyViolation& e) {
        parity_failures += std::string(parity_failures.empty() ? "" : "; ") + e.what();
      }
      for (double e : energies) {
        for (int k = 0; k <= k_max; ++k) traces.push_back(transfer::trace_derivative(k, e, lambda, theta));
        for (auto side : {words::Side::right, words::Side::left}) {
          const auto n = transfer::cumulative_norms(L_grid, side, e, lambda, theta);
          for (std::size_t i = 0; i < L_grid.size(); ++i) {
            const double L = side == words::Side::right ? L_grid[i] : -L_grid[i];
            norms.push_back({L, e, lambda, theta, n[i]});
          }
          for (int k = 0; k <= k_max; ++k) {
            try {
              const auto m = transfer::norm_trace_inequality(k, e, lambda, theta, side);
              margin_worst = std::min(margin_worst, (m.margin / m.lhs).to_double());
              margins.push_back({e, lambda, theta, m});
            } catch (const PropertyViolation& ex) {
              margin_failures += std::string(margin_failures.empty() ? "" : "; ") + ex.what();
            }
          }
        }
      }
    }
  }

  summary.checks.push_back({"trace_parity", parity_failures.empty(),
                            parity_failures.empty() ? "a parity class matches the phase-0 traces for every phase"
                                                    : parity_failures});
  summary.checks.push_back({"norm_trace_inequality", margin_failures.empty(),
                            margin_failures.empty() ? "4 ||M||^3 >= |dx/dE| on the whole sweep" : margin_failures});
  summary.checks.push_back({"fricke", fricke_worst <= 1e-9,
                            "max |I - lambda^2| / (1 + lambda^2 + |xyz|) = " + format_double(fricke_worst)});
  summary.metrics.emplace_back("fricke_worst", fricke_worst);
  summary.metrics.emplace_back("min_relative_margin", margin_worst);

  io::write_file(config.out, "traces.csv", io::traces_csv(traces));
  io::write_file(config.out, "norms.csv", io::norms_csv(norms));
  io::write_file(config.out, "margins.csv", io::margins_csv(margins));
  io::write_file(config.out, "trace_parity.json", io::trace_parity_json(parity));
  finish(config, summary);
  return summary;
}

io::Summary cmd_spectrum(const RunConfig& config) {
  config.validate();
  const auto thetas = config.phases({"0", "1/3", "omega/2"});
  Summary summary{"spectrum", {}, {}};
  spectrum::BandScanOptions scan;
  scan.jobs = config.jobs;

  std::vector<std::vector<spectrum::Band>> emitted;
  std::vector<spectrum::GrowthFit> fits;
  std::ostringstream norm_csv;
  norm_csv << "lambda,E,theta,c_fit_right,c_fit_left\n";
  const auto L_grid = fib_grid(4, 18);
  constexpr int kNormLevel = 12;

  for (double lambda : config.lambdas) {
    const std::string tag = lambda_tag(lambda);
    const bool fit_growth = lambda > 0.0;
    const int levels_needed = fit_growth ? std::max(config.k_max, std::max(config.growth_k_max + 1, kNormLevel))
                                         : config.k_max;
    std::vector<std::vector<spectrum::Band>> levels;
    try {
      levels = spectrum::band_levels(levels_needed, lambda, scan);
    } catch (const std::runtime_error& e) {
      summary.checks.push_back({"bands " + tag, false, e.what()});
      continue;
    }

    int bad_bands = 0;
    double worst_edge = 0.0;
    for (int k = 0; k <= config.k_max; ++k) {
      for (const auto& band : levels[static_cast<std::size_t>(k)]) {
        const auto check = spectrum::verify_band(band);
        if (!check.ok) ++bad_bands;
        worst_edge = std::max({worst_edge, static_cast<double>(check.edge_residual_lo),
                               static_cast<double>(check.edge_residual_hi)});
      }
      emitted.push_back(levels[static_cast<std::size_t>(k)]);
    }
    summary.checks.push_back({"bands " + tag, bad_bands == 0,
                              std::to_string(levels[static_cast<std::size_t>(config.k_max)].size()) +
                                  " bands at k = " + std::to_string(config.k_max) +
                                  ", failed re-evaluations: " + std::to_string(bad_bands) +
                                  ", worst edge residual " + format_double(worst_edge)});

    if (!fit_growth) {
      summary.checks.push_back({"growth " + tag, true, "fit rejected: no exponential growth at lambda = 0"});
      continue;
    }
    const auto fit = spectrum::derivative_growth_scan(lambda, config.growth_k_min, config.growth_k_max, levels);
    fits.push_back(fit);
    summary.metrics.emplace_back("xi_hat " + tag, fit.xi_hat);
    summary.metrics.emplace_back("zeta_hat " + tag, fit.zeta_hat);
    if (lambda > 8.0) {
      const bool in_bracket = fit.xi_hat >= lambda / 2 && fit.xi_hat <= 2 * lambda;
      summary.checks.push_back({"growth " + tag, in_bracket,
                                "xi_hat = " + format_double(fit.xi_hat) + ", bracket [lambda/2, 2 lambda]"});

      // The constant for a phase is the smallest C_fit over the sampled
      // energies; phases are compared through these constants.
      std::vector<double> c_theta(thetas.size(), INFINITY);
      std::vector<double> spreads;
      bool all_ok = true;
      for (const auto& band : levels[kNormLevel]) {
        const double e = static_cast<double>(band.center());
        double lo = INFINITY;
        double hi = 0.0;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
          const auto t = spectrum::norm_growth_check(lambda, thetas[i], e, L_grid, fit.zeta_hat);
          all_ok = all_ok && t.ok();
          c_theta[i] = std::min(c_theta[i], t.c_fit);
          lo = std::min(lo, t.c_fit);
          hi = std::max(hi, t.c_fit);
          norm_csv << format_double(lambda) << ',' << format_double(e) << ',' << io::format_phase(thetas[i])
                   << ',' << format_double(t.c_fit_right) << ',' << format_double(t.c_fit_left) << '\n';
        }
        spreads.push_back(lo > 0.0 ? hi / lo : INFINITY);
      }
      std::sort(spreads.begin(), spreads.end());
      const double median_spread = spreads.empty() ? 0.0 : spreads[spreads.size() / 2];
      const auto [c_lo, c_hi] = std::minmax_element(c_theta.begin(), c_theta.end());
      const double spread = *c_lo > 0.0 ? *c_hi / *c_lo : INFINITY;
      summary.metrics.emplace_back("norm_growth_spread " + tag, spread);
      summary.metrics.emplace_back("norm_growth_median_energy_spread " + tag, median_spread);
      summary.checks.push_back({"norm_growth " + tag, all_ok && spread <= 10.0,
                                "C_fit positive; spread of min-over-energy constants across phases " +
                                    format_double(spread) + ", median per-energy spread " +
                                    format_double(median_spread)});
    }
  }

  std::vector<spectrum::GrowthFit> sorted;
  for (const auto& f : fits) {
    if (f.lambda > 8.0) sorted.push_back(f);
  }
  if (sorted.size() >= 2) {
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    bool increasing = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      increasing = increasing && sorted[i].xi_hat > sorted[i - 1].xi_hat;
    }
    summary.checks.push_back({"xi_monotone", increasing, "xi_hat increases with lambda"});
  }

  io::write_file(config.out, "bands.csv", io::bands_csv(emitted));
  io::write_file(config.out, "growth.csv", io::growth_csv(fits));
  io::write_file(config.out, "norm_growth.csv", norm_csv.str());
  finish(config, summary);
  return summary;
}

io::Summary cmd_dynamics(const RunConfig& config) {
  config.validate();
  const auto thetas = config.phases({"0", "1/4", "1/2", "omega/2", "0.739"});
  for (double lambda : config.lambdas) {
    if (lambda == 0.0 && !config.p_set) throw ConfigError("p: required when lambda = 0 (no calibration)");
  }
  Summary summary{"dynamics", {}, {}};
  dynamics::BoundOptions bound;
  bound.N = config.N;
  bound.N_limit = config.N_limit;
  bound.jobs = config.jobs;
  dynamics::TrendOptions trend_options;
  trend_options.bound = bound;
  trend_options.bound.N = 0;

  std::vector<dynamics::TrendRow> trend;
  if (config.trend) {
    std::vector<double> positive;
    for (double l : config.lambdas) {
      if (l > 0.0) positive.push_back(l);
    }
    trend = dynamics::exponent_trend(positive, words::PhasePoint{}, config.trend_T_grid, trend_options);
    std::vector<dynamics::TrendRow> sorted = trend;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    bool finite = true;
    bool valid = true;
    bool non_increasing = true;
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      finite = finite && std::isfinite(sorted[i].p_fit);
      valid = valid && sorted[i].valid;
      if (i > 0) non_increasing = non_increasing && sorted[i].p_fit <= sorted[i - 1].p_fit;
      lo = std::min(lo, sorted[i].p_log_lambda);
      hi = std::max(hi, sorted[i].p_log_lambda);
      summary.metrics.emplace_back("p_fit " + lambda_tag(sorted[i].lambda), sorted[i].p_fit);
    }
    summary.checks.push_back({"trend", finite && valid && non_increasing && hi <= 2.0 * lo,
                              "p_fit non-increasing, p log lambda spread " + format_double(hi / lo)});
    io::write_file(config.out, "trend.json", io::trend_json(trend));
  }

  std::vector<dynamics::AbelRecord> records;
  std::vector<std::string> reports;
  for (double lambda : config.lambdas) {
    const std::string tag = lambda_tag(lambda);
    double p_used = config.p;
    if (!config.p_set) {
      auto it = std::find_if(trend.begin(), trend.end(), [&](const auto& r) { return r.lambda == lambda; });
      if (it == trend.end()) {
        const double one[] = {lambda};
        trend.push_back(dynamics::exponent_trend(one, words::PhasePoint{}, config.trend_T_grid, trend_options).front());
        it = std::prev(trend.end());
      }
      p_used = it->p_fit;
      if (!std::isfinite(p_used)) {
        summary.checks.push_back({"calibration " + tag, false, "no grid exponent keeps the mass above the floor"});
        continue;
      }
    }
    summary.metrics.emplace_back("p_used " + tag, p_used);
    const auto report = dynamics::dynamical_bound_check(lambda, thetas, config.T_grid, config.C1, p_used, bound);
    records.insert(records.end(), report.table.begin(), report.table.end());
    reports.push_back(io::bound_report_json(report));
    summary.metrics.emplace_back("G_emp " + tag, report.G_emp);

    if (lambda == 0.0) {
      double worst = INFINITY;
      const std::size_t nT = report.T_grid.size();
      for (std::size_t t = 0; t < report.theta_list.size(); ++t) {
        const double first = report.table[t * nT].mass;
        const double last = report.table[t * nT + nT - 1].mass;
        worst = std::min(worst, last > 0.0 ? first / last : INFINITY);
      }
      summary.checks.push_back({"control " + tag, worst >= 10.0,
                                "mass decrease from first to last T: " + format_double(worst)});
    } else {
      const bool ok = report.all_valid && report.G_emp > 0.0 && report.max_theta_ratio() < 10.0;
      summary.checks.push_back({"bound " + tag, ok,
                                "G_emp = " + format_double(report.G_emp) + ", all valid: " +
                                    (report.all_valid ? "yes" : "no") + ", max theta ratio " +
                                    format_double(report.max_theta_ratio())});
    }
  }

  std::string bound_json;
  if (reports.size() == 1) {
    bound_json = reports.front();
  } else {
    bound_json = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) bound_json += reports[i] + (i + 1 < reports.size() ? ",\n" : "");
    bound_json += "]\n";
  }
  io::write_file(config.out, "dynamics.csv", io::dynamics_csv(records));
  io::write_file(config.out, "bound_report.json", bound_json);
  finish(config, summary);
  return summary;
}

io::Summary cmd_report(const RunConfig& config) {
  config.validate();
  std::vector<Summary> found;
  for (const char* name : {"words", "traces", "spectrum", "dynamics"}) {
    const auto path = std::filesystem::path(config.out) / ("summary_" + std::string(name) + ".json");
    std::ifstream f(path, std::ios::binary);
    if (!f) continue;
    std::ostringstream text;
    text << f.rdbuf();
    try {
      found.push_back(io::parse_summary(text.str()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  if (found.empty()) throw ConfigError("report: no summary_*.json files in " + config.out);
  io::write_file(config.out, "report.json", io::aggregate_json(found));

  Summary summary{"report", {}, {}};
  for (const auto& s : found) {
    summary.checks.push_back({s.command, s.passed(), s.passed() ? "all checks passed" : "a check failed"});
  }
  return summary;
}

}  // namespace quasitrace::cli
