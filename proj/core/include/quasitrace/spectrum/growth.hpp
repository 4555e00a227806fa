#pragma once

#include <span>
#include <string>
#include <vector>

#include "quasitrace/spectrum/bands.hpp"
#include "quasitrace/words/combinatorics.hpp"
#include "quasitrace/words/phase.hpp"

namespace quasitrace::spectrum {

struct GrowthLevel {
  int k = 0;
  double min_abs_dx = 0.0;  // min |d/dE x_k| over samples lying in sigma_k
  std::size_t samples = 0;  // samples that lay in sigma_k
};

struct GrowthFit {
  double lambda = 0.0;
  int k_min = 0;
  int k_max = 0;
  double xi_hat = 0.0;    // exp(2 * slope of log m_k against k)
  double zeta_hat = 0.0;  // log(xi_hat) / (3 log(omega^-2))
  double residual = 0.0;  // rms of the log-linear fit
  std::vector<GrowthLevel> levels;
  std::vector<std::string> warnings;
};

struct GrowthOptions {
  bool odd_levels = false;  // fit odd k instead of even k
  int samples_per_interval = 5;
  BandScanOptions scan;
};

/// For each k of the chosen parity in [k_min, k_max], the minimum of
/// |d/dE x_k(E, lambda, 0)| over interior samples of spectrum_cover(k_max, lambda)
/// that satisfy |x_k| <= 2; then a least-squares line through (k, log m_k).
/// A decrease of m_k between consecutive fitted levels is reported as a
/// warning. Throws std::domain_error for lambda == 0 (no exponential growth
/// to fit), std::invalid_argument for bad ranges or fewer than two levels.
GrowthFit derivative_growth_scan(double lambda, int k_min, int k_max,
                                 const GrowthOptions& options = {});

/// Same, reusing already computed levels sigma_0..sigma_{k_max+1}.
GrowthFit derivative_growth_scan(double lambda, int k_min, int k_max,
                                 const std::vector<std::vector<Band>>& levels,
                                 const GrowthOptions& options = {});

double zeta_from_xi(double xi);

struct NormGrowthRow {
  double L = 0.0;
  words::Side side = words::Side::right;
  double norm_sq = 0.0;  // ||M||^2_L
  double bound = 0.0;    // C_fit L^zeta
};

struct NormGrowthTable {
  double lambda = 0.0;
  words::PhasePoint theta;
  double energy = 0.0;
  double zeta = 0.0;
  double c_fit = 0.0;        // min over both sides
  double c_fit_right = 0.0;  // min ||M||^2_L / L^zeta on the right half-line
  double c_fit_left = 0.0;
  bool floor_ok = false;     // ||M||^2_L >= L at every L
  std::vector<NormGrowthRow> rows;

  bool ok() const noexcept { return floor_ok && c_fit > 0.0; }
};

/// ||M(E, lambda, theta)||^2_L against C_fit L^zeta on both half-lines, with
/// C_fit the smallest observed ratio.
NormGrowthTable norm_growth_check(double lambda, words::PhasePoint theta, double energy,
                                  std::span<const double> L_grid, double zeta);

}  // namespace quasitrace::spectrum
