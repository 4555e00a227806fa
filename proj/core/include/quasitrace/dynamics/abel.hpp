#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "quasitrace/dynamics/truncation.hpp"

namespace quasitrace::dynamics {

inline constexpr double kAbelTail = 1e-8;

/// Upper limit of the Abel integral: (T/2) ln(1/tail).
double abel_cutoff(double T, double tail = kAbelTail);

struct AbelQuadrature {
  double tail = kAbelTail;
  double max_step = 0.05;
  double steps_per_T = 200.0;
};

/// (2/T) int_0^inf e^{-2t/T} A(t) dt by composite Simpson on [0, abel_cutoff(T)]
/// with step <= min(T / steps_per_T, max_step). Throws std::invalid_argument
/// for T <= 0.
double abel_average(const std::function<double(double)>& A, double T,
                    const AbelQuadrature& quad = {});

/// Amplitudes below this in |phi_j(1)| are dropped from the double sum.
inline constexpr double kModePrune = 1e-13;

/// Abel mean of |psi_t(n)|^2 for psi_0 = delta_1, exactly:
///   sum_{j,j'} c_j(n) c_j'(n) / (1 + ((E_j - E_j') T / 2)^2),  c_j(n) = phi_j(n) phi_j(1).
double abel_closed_form(const EigenSystem& sys, std::int64_t n, double T, double prune = kModePrune);

/// abel_closed_form at several sites, sharing the pair kernel. Output follows
/// `sites`.
std::vector<double> abel_site_masses(const EigenSystem& sys, std::span<const std::int64_t> sites,
                                     double T, double prune = kModePrune);

/// Abel mean of the probability on the outermost `width` sites at each end.
double abel_edge_mass(const EigenSystem& sys, double T, int width = 10, double prune = kModePrune);

}  // namespace quasitrace::dynamics
