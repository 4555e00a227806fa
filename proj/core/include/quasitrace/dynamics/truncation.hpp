#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quasitrace/words/phase.hpp"

namespace quasitrace::dynamics {

using words::PhasePoint;

/// H restricted to sites [-N, N] with Dirichlet boundary: unit off-diagonal,
/// diagonal lambda * v_theta(n).
struct Truncation {
  int N = 0;
  double lambda = 0.0;
  PhasePoint theta;
  std::vector<double> diagonal;  // index n + N

  std::size_t size() const noexcept { return diagonal.size(); }
  std::size_t index(std::int64_t n) const noexcept { return static_cast<std::size_t>(n + N); }
};

/// Throws std::invalid_argument for N < 1 or a negative / non-finite lambda.
Truncation build_truncation(int N, double lambda, PhasePoint theta);

/// Eigenpairs of a Truncation, eigenvalues ascending.
class EigenSystem {
 public:
  EigenSystem() = default;
  EigenSystem(int N, std::vector<double> values, std::vector<double> vectors)
      : N_(N), values_(std::move(values)), vectors_(std::move(vectors)) {}

  int N() const noexcept { return N_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return values_; }

  /// phi_j(n), site n in [-N, N].
  double phi(std::size_t j, std::int64_t n) const noexcept {
    return vectors_[j * size() + static_cast<std::size_t>(n + N_)];
  }
  /// Column j, indexed by n + N.
  const double* column(std::size_t j) const noexcept { return vectors_.data() + j * size(); }

 private:
  int N_ = 0;
  std::vector<double> values_;
  std::vector<double> vectors_;  // column-major, column j = phi_j
};

/// Full eigendecomposition by divide and conquer (LAPACK dstevd). Throws
/// std::runtime_error if LAPACK reports failure.
EigenSystem diagonalize(const Truncation& h);

/// max_j ||H phi_j - E_j phi_j||_2.
double max_residual(const Truncation& h, const EigenSystem& sys);

/// max |<phi_i, phi_j> - delta_ij| over the first `columns` columns.
double orthonormality_defect(const EigenSystem& sys, std::size_t columns);

}  // namespace quasitrace::dynamics
