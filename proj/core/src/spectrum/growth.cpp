#include "quasitrace/spectrum/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quasitrace/transfer/transfer.hpp"

namespace quasitrace::spectrum {

namespace {

Real abs_real(Real x) { return x < 0 ? -x : x; }

void check_growth_inputs(double lambda, int k_min, int k_max) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("derivative_growth_scan: coupling must be finite and non-negative");
  }
  if (lambda == 0.0) {
    throw std::domain_error("derivative_growth_scan: fit rejected at lambda = 0, derivatives stay "
                            "bounded on the free band");
  }
  if (k_min < 0 || k_max < k_min || k_max > 22) {
    throw std::invalid_argument("derivative_growth_scan: need 0 <= k_min <= k_max <= 22");
  }
}

}  // namespace

double zeta_from_xi(double xi) {
  const double golden_sq = (3.0 + std::sqrt(5.0)) / 2.0;
  return std::log(xi) / (3.0 * std::log(golden_sq));
}

GrowthFit derivative_growth_scan(double lambda, int k_min, int k_max, const GrowthOptions& options) {
  check_growth_inputs(lambda, k_min, k_max);
  return derivative_growth_scan(lambda, k_min, k_max, band_levels(k_max + 1, lambda, options.scan),
                                options);
}

GrowthFit derivative_growth_scan(double lambda, int k_min, int k_max,
                                 const std::vector<std::vector<Band>>& levels,
                                 const GrowthOptions& options) {
  check_growth_inputs(lambda, k_min, k_max);
  if (levels.size() < static_cast<std::size_t>(k_max) + 2) {
    throw std::invalid_argument("derivative_growth_scan: band levels up to k_max + 1 required");
  }
  if (options.samples_per_interval < 1) {
    throw std::invalid_argument("derivative_growth_scan: samples_per_interval must be positive");
  }

  const auto cover = merge_cover(levels[static_cast<std::size_t>(k_max)],
                                 levels[static_cast<std::size_t>(k_max) + 1], k_max);
  const int parity = options.odd_levels ? 1 : 0;
  std::vector<int> ks;
  for (int k = k_min; k <= k_max; ++k) {
    if (k % 2 == parity) ks.push_back(k);
  }

  std::vector<Real> minima(static_cast<std::size_t>(k_max) + 1, -1);
  std::vector<std::size_t> counts(minima.size(), 0);
  std::vector<TraceValue> values;
  const Real lam = lambda;
  const int n = options.samples_per_interval;
  for (const auto& band : cover) {
    for (int i = 0; i < n; ++i) {
      const Real e = band.lo + band.width() * static_cast<Real>(i + 1) / static_cast<Real>(n + 1);
      trace_map_levels(k_max, e, lam, values);
      for (int k : ks) {
        const auto& v = values[static_cast<std::size_t>(k)];
        if (abs_real(v.x) > 2) continue;
        const Real d = abs_real(v.dx);
        auto& m = minima[static_cast<std::size_t>(k)];
        if (m < 0 || d < m) m = d;
        ++counts[static_cast<std::size_t>(k)];
      }
    }
  }

  GrowthFit fit;
  fit.lambda = lambda;
  fit.k_min = k_min;
  fit.k_max = k_max;
  for (int k : ks) {
    const auto i = static_cast<std::size_t>(k);
    if (counts[i] == 0) {
      fit.warnings.push_back("level " + std::to_string(k) + ": no sample of the cover lies in sigma_k");
      continue;
    }
    fit.levels.push_back({k, static_cast<double>(minima[i]), counts[i]});
  }
  if (fit.levels.size() < 2) {
    throw std::invalid_argument("derivative_growth_scan: fewer than two levels to fit");
  }
  for (std::size_t i = 1; i < fit.levels.size(); ++i) {
    if (fit.levels[i].min_abs_dx < fit.levels[i - 1].min_abs_dx * (1.0 - 1e-9)) {
      fit.warnings.push_back("m_k decreases from k = " + std::to_string(fit.levels[i - 1].k) +
                             " to k = " + std::to_string(fit.levels[i].k));
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto count = static_cast<double>(fit.levels.size());
  for (const auto& level : fit.levels) {
    const double x = level.k;
    const double y = std::log(level.min_abs_dx);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  double ss = 0;
  for (const auto& level : fit.levels) {
    const double r = std::log(level.min_abs_dx) - (intercept + slope * level.k);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  fit.xi_hat = std::exp(2.0 * slope);
  fit.zeta_hat = zeta_from_xi(fit.xi_hat);
  return fit;
}

NormGrowthTable norm_growth_check(double lambda, words::PhasePoint theta, double energy,
                                  std::span<const double> L_grid, double zeta) {
  if (L_grid.empty()) throw std::invalid_argument("norm_growth_check: empty L grid");
  NormGrowthTable table;
  table.lambda = lambda;
  table.theta = theta;
  table.energy = energy;
  table.zeta = zeta;
  table.floor_ok = true;

  double c_side[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const words::Side sides[2] = {words::Side::right, words::Side::left};
  for (int s = 0; s < 2; ++s) {
    const auto norms = transfer::cumulative_norms(L_grid, sides[s], energy, lambda, theta);
    for (std::size_t i = 0; i < L_grid.size(); ++i) {
      const double L = L_grid[i];
      const double log_ratio = norms[i].log_abs() - zeta * std::log(L);
      c_side[s] = std::min(c_side[s], std::exp(log_ratio));
      if (norms[i] < transfer::ExtendedReal(L * (1.0 - 1e-12))) table.floor_ok = false;
      table.rows.push_back({L, sides[s], norms[i].to_double(), 0.0});
    }
  }
  table.c_fit_right = c_side[0];
  table.c_fit_left = c_side[1];
  table.c_fit = std::min(c_side[0], c_side[1]);
  for (auto& row : table.rows) row.bound = table.c_fit * std::pow(row.L, zeta);
  return table;
}

}  // namespace quasitrace::spectrum
