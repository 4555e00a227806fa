#include "quasitrace/dynamics/truncation.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace quasitrace::dynamics {

Truncation build_truncation(int N, double lambda, PhasePoint theta) {
  if (N < 1) throw std::invalid_argument("build_truncation: N must be >= 1");
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("build_truncation: coupling must be finite and non-negative");
  }
  Truncation h;
  h.N = N;
  h.lambda = lambda;
  h.theta = theta;
  const auto block = words::rotation_block(-N, N, theta);
  h.diagonal.resize(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    h.diagonal[i] = block[i] == words::Symbol::one ? lambda : 0.0;
  }
  return h;
}

EigenSystem diagonalize(const Truncation& h) {
  const auto n = static_cast<lapack_int>(h.size());
  std::vector<double> d = h.diagonal;
  std::vector<double> e(h.size() > 0 ? h.size() - 1 : 0, 1.0);
  std::vector<double> z(h.size() * h.size());
  const lapack_int info =
      LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(), z.data(), n);
  if (info != 0) {
    throw std::runtime_error("diagonalize: dstevd failed with info = " + std::to_string(info));
  }
  return EigenSystem(h.N, std::move(d), std::move(z));
}

double max_residual(const Truncation& h, const EigenSystem& sys) {
  const std::size_t m = h.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const double* phi = sys.column(j);
    const double e = sys.eigenvalues()[j];
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double r = (h.diagonal[i] - e) * phi[i];
      if (i > 0) r += phi[i - 1];
      if (i + 1 < m) r += phi[i + 1];
      ss += r * r;
    }
    worst = std::max(worst, std::sqrt(ss));
  }
  return worst;
}

double orthonormality_defect(const EigenSystem& sys, std::size_t columns) {
  const std::size_t m = sys.size();
  columns = std::min(columns, m);
  double worst = 0.0;
  for (std::size_t a = 0; a < columns; ++a) {
    for (std::size_t b = a; b < columns; ++b) {
      const double* x = sys.column(a);
      const double* y = sys.column(b);
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += x[i] * y[i];
      worst = std::max(worst, std::fabs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace quasitrace::dynamics
