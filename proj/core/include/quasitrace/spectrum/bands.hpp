#pragma once

#include <vector>

#include "quasitrace/spectrum/trace_map.hpp"

namespace quasitrace::spectrum {

inline constexpr int kMaxBandLevel = 25;

/// Closed energy interval [lo, hi] on which |x_k(E, lambda, 0)| <= 2.
struct Band {
  int k = 0;
  double lambda = 0.0;
  Real lo{};
  Real hi{};

  Real width() const noexcept { return hi - lo; }
  Real center() const noexcept { return (lo + hi) / 2; }
};

struct BandScanOptions {
  /// Grid points per interval of the previous-level cover; the total is
  /// therefore >= this many times F_k.
  int points_per_interval = 16;
  /// Uniform grid size used for levels 0 and 1.
  int base_grid_points = 4096;
  /// Cover intervals are widened by this fraction of their width.
  double cover_padding = 0.05;
  /// Re-run every level with twice the grid and require the same band count.
  bool check_refinement = true;
  /// Worker threads for the scan; results are concatenated in segment order.
  int jobs = 1;
};

/// sigma_k for k = 0..k_max. Levels 0 and 1 are scanned on a uniform grid
/// over [-2 - eps, lambda + 2 + eps]; level k >= 2 is scanned only inside
/// sigma_{k-1} U sigma_{k-2}, which contains sigma_k. Edges are located by
/// bisection down to the working precision. Throws std::runtime_error when the
/// band count changes under grid doubling, std::out_of_range for k_max outside
/// [0, kMaxBandLevel], std::invalid_argument for lambda < 0.
std::vector<std::vector<Band>> band_levels(int k_max, double lambda,
                                           const BandScanOptions& options = {});

/// sigma_k alone.
std::vector<Band> bands(int k, double lambda, const BandScanOptions& options = {});

/// sigma_K U sigma_{K+1} with overlapping or touching intervals merged. An
/// outer proxy for the limiting spectrum, not the spectrum itself. The k field
/// of the merged intervals is K.
std::vector<Band> spectrum_cover(int K, double lambda, const BandScanOptions& options = {});

/// Merge from already computed levels.
std::vector<Band> merge_cover(const std::vector<Band>& a, const std::vector<Band>& b, int k);

struct BandCheck {
  Real max_abs_interior{};  // max |x_k| over the interior samples
  Real edge_residual_lo{};  // ||x_k(lo)| - 2|
  Real edge_residual_hi{};
  bool ok = false;
};

/// Re-evaluates x_k at `samples` interior points and at both edges.
BandCheck verify_band(const Band& band, int samples = 64, double tol = 1e-9);

}  // namespace quasitrace::spectrum
