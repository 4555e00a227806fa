#include "quasitrace/dynamics/abel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quasitrace::dynamics {

double abel_cutoff(double T, double tail) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("abel: T must be finite and > 0");
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("abel: tail must lie in (0, 1)");
  return 0.5 * T * std::log(1.0 / tail);
}

double abel_average(const std::function<double(double)>& A, double T, const AbelQuadrature& quad) {
  const double t_max = abel_cutoff(T, quad.tail);
  const double h_max = std::min(T / quad.steps_per_T, quad.max_step);
  auto intervals = static_cast<std::int64_t>(std::ceil(t_max / h_max));
  if (intervals % 2 != 0) ++intervals;
  intervals = std::max<std::int64_t>(intervals, 2);
  const double h = t_max / static_cast<double>(intervals);
  auto f = [&](std::int64_t i) {
    const double t = h * static_cast<double>(i);
    return std::exp(-2.0 * t / T) * A(t);
  };
  double s = f(0) + f(intervals);
  for (std::int64_t i = 1; i < intervals; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
  return (2.0 / T) * (h / 3.0) * s;
}

std::vector<double> abel_site_masses(const EigenSystem& sys, std::span<const std::int64_t> sites,
                                     double T, double prune) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("abel: T must be finite and > 0");
  const int N = sys.N();
  for (auto n : sites) {
    if (n < -N || n > N) throw std::out_of_range("abel: site outside the truncation");
  }

  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (std::fabs(sys.phi(j, 1)) >= prune) active.push_back(j);
  }
  const std::size_t na = active.size();
  const std::size_t ns = sites.size();

  // c[a * ns + s] = phi_a(site_s) phi_a(1)
  std::vector<double> c(na * ns);
  std::vector<double> energy(na);
  for (std::size_t a = 0; a < na; ++a) {
    const std::size_t j = active[a];
    energy[a] = sys.eigenvalues()[j];
    const double c1 = sys.phi(j, 1);
    for (std::size_t s = 0; s < ns; ++s) c[a * ns + s] = sys.phi(j, sites[s]) * c1;
  }

  const double half_T = 0.5 * T;
  std::vector<double> diag(ns, 0.0), off(ns, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    const double* ca = &c[a * ns];
    for (std::size_t s = 0; s < ns; ++s) diag[s] += ca[s] * ca[s];
    for (std::size_t b = a + 1; b < na; ++b) {
      const double x = (energy[a] - energy[b]) * half_T;
      const double k = 1.0 / (1.0 + x * x);
      const double* cb = &c[b * ns];
      for (std::size_t s = 0; s < ns; ++s) off[s] += k * ca[s] * cb[s];
    }
  }
  std::vector<double> out(ns);
  for (std::size_t s = 0; s < ns; ++s) out[s] = std::clamp(diag[s] + 2.0 * off[s], 0.0, 1.0);
  return out;
}

double abel_closed_form(const EigenSystem& sys, std::int64_t n, double T, double prune) {
  return abel_site_masses(sys, std::span<const std::int64_t>(&n, 1), T, prune).front();
}

double abel_edge_mass(const EigenSystem& sys, double T, int width, double prune) {
  const int N = sys.N();
  width = std::min(width, N + 1);
  std::vector<std::int64_t> sites;
  for (int i = 0; i < width; ++i) {
    sites.push_back(-N + i);
    if (N - i > -N + width - 1) sites.push_back(N - i);
  }
  double s = 0.0;
  for (double m : abel_site_masses(sys, sites, T, prune)) s += m;
  return s;
}

}  // namespace quasitrace::dynamics
