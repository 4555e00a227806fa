#pragma once

#include <span>
#include <vector>

#include "quasitrace/dynamics/abel.hpp"
#include "quasitrace/dynamics/truncation.hpp"

namespace quasitrace::dynamics {

inline constexpr double kEdgeMassTol = 1e-6;
inline constexpr int kDefaultNLimit = 3000;

/// min(N_limit, ceil(2 abel_cutoff(T)) + 100).
int auto_truncation(double T, int N_limit = kDefaultNLimit);

/// Abel mean of ||e^{-itH} delta_1||^2_L.
double abel_window_mass(const EigenSystem& sys, double T, double L, double prune = kModePrune);

struct AbelRecord {
  double lambda = 0.0;
  PhasePoint theta;
  double T = 0.0;
  double L = 0.0;
  int N = 0;
  double mass = 0.0;
  double edge_mass = 0.0;
  bool valid = false;  // edge_mass < tolerance
  int attempts = 1;
};

struct BoundOptions {
  int N = 0;  // 0 selects auto_truncation at the largest T
  int N_limit = kDefaultNLimit;
  double edge_tol = kEdgeMassTol;
  int edge_width = 10;
  int jobs = 1;  // phases diagonalised concurrently
};

struct BoundReport {
  double lambda = 0.0;
  double C1 = 1.0;
  double p_used = 0.0;
  std::vector<PhasePoint> theta_list;
  std::vector<double> T_grid;
  std::vector<AbelRecord> table;  // theta-major, T-minor
  double G_emp = 0.0;             // min mass over the table
  bool all_valid = false;
  std::vector<double> theta_ratio;  // per T: max / min mass across theta

  double max_theta_ratio() const noexcept;
};

/// Abel-averaged mass inside L = C1 T^p_used for every (theta, T). A record
/// whose edge mass reaches the tolerance triggers one retry of that phase
/// with N doubled (capped at N_limit). Throws std::invalid_argument on empty
/// or non-positive grids and std::out_of_range if a window does not fit in N.
BoundReport dynamical_bound_check(double lambda, std::span<const PhasePoint> thetas,
                                  std::span<const double> T_grid, double C1, double p_used,
                                  const BoundOptions& options = {});

struct TrendRow {
  double lambda = 0.0;
  double p_fit = 0.0;         // NaN if no grid exponent reaches the floor
  double p_log_lambda = 0.0;  // p_fit * ln(lambda)
  int N = 0;
  bool valid = false;         // all edge masses below tolerance
  std::vector<double> mass;   // per T at p_fit
};

struct TrendOptions {
  std::vector<double> p_grid;  // empty selects 0.05, 0.10, ..., 1.00
  double floor = 0.5;
  BoundOptions bound;
};

/// For each lambda, the smallest grid exponent p with Abel mass at L = T^p at
/// least `floor` for every T in the grid. Throws std::invalid_argument for
/// lambda <= 0 or empty grids.
std::vector<TrendRow> exponent_trend(std::span<const double> lambdas, PhasePoint theta,
                                     std::span<const double> T_grid, const TrendOptions& options = {});

}  // namespace quasitrace::dynamics
