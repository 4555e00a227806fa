#include "quasitrace/dynamics/bound.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "quasitrace/dynamics/evolution.hpp"

namespace quasitrace::dynamics {

namespace {

// Abel means of single-site probabilities at one T, filled outward from the
// origin on demand.
class SiteMassCache {
 public:
  SiteMassCache(const EigenSystem& sys, double T, double prune)
      : sys_(&sys), T_(T), prune_(prune),
        masses_(2 * static_cast<std::size_t>(sys.N()) + 1, 0.0) {}

  double window(double L) {
    if (L + 1.0 > sys_->N()) {
      throw std::out_of_range("window radius " + std::to_string(L) + " does not fit in N = " +
                              std::to_string(sys_->N()));
    }
    ensure(static_cast<std::int64_t>(std::floor(L)) + 1);
    return windowed_sum(masses_, sys_->N(), L);
  }

 private:
  void ensure(std::int64_t radius) {
    if (radius <= done_) return;
    const std::int64_t target = std::min<std::int64_t>(std::max(radius, done_ + 8), sys_->N());
    std::vector<std::int64_t> sites;
    for (std::int64_t n = done_ + 1; n <= target; ++n) {
      if (n == 0) {
        sites.push_back(0);
      } else {
        sites.push_back(-n);
        sites.push_back(n);
      }
    }
    const auto m = abel_site_masses(*sys_, sites, T_, prune_);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      masses_[static_cast<std::size_t>(sites[i] + sys_->N())] = m[i];
    }
    done_ = target;
  }

  const EigenSystem* sys_;
  double T_;
  double prune_;
  std::vector<double> masses_;
  std::int64_t done_ = -1;
};

void check_grid(std::span<const double> T_grid, const char* where) {
  if (T_grid.empty()) throw std::invalid_argument(std::string(where) + ": empty T grid");
  for (double T : T_grid) {
    if (!(T > 0.0) || !std::isfinite(T)) {
      throw std::invalid_argument(std::string(where) + ": T values must be finite and > 0");
    }
  }
}

int choose_N(const BoundOptions& options, std::span<const double> T_grid) {
  if (options.N > 0) return options.N;
  return auto_truncation(*std::max_element(T_grid.begin(), T_grid.end()), options.N_limit);
}

// Runs job(i) for i in [0, count) on up to `jobs` threads; rethrows the first
// failure in index order.
template <class Job>
void run_indexed(std::size_t count, int jobs, Job job) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<AbelRecord> phase_records(double lambda, PhasePoint theta, std::span<const double> T_grid,
                                      double C1, double p_used, const BoundOptions& options) {
  int N = choose_N(options, T_grid);
  std::vector<AbelRecord> records(T_grid.size());
  std::vector<bool> pending(T_grid.size(), true);
  for (int attempt = 1; attempt <= 2; ++attempt) {
    const auto sys = diagonalize(build_truncation(N, lambda, theta));
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
      if (!pending[i]) continue;
      const double T = T_grid[i];
      AbelRecord& r = records[i];
      r.lambda = lambda;
      r.theta = theta;
      r.T = T;
      r.L = C1 * std::pow(T, p_used);
      r.N = N;
      r.attempts = attempt;
      SiteMassCache cache(sys, T, kModePrune);
      r.mass = cache.window(r.L);
      r.edge_mass = abel_edge_mass(sys, T, options.edge_width);
      r.valid = r.edge_mass < options.edge_tol;
      pending[i] = !r.valid;
    }
    const bool retry = std::find(pending.begin(), pending.end(), true) != pending.end();
    const int bigger = std::min(2 * N, std::max(options.N_limit, N));
    if (!retry || bigger == N) break;
    N = bigger;
  }
  return records;
}

}  // namespace

int auto_truncation(double T, int N_limit) {
  const double rule = std::ceil(2.0 * abel_cutoff(T)) + 100.0;
  return static_cast<int>(std::min(rule, static_cast<double>(N_limit)));
}

double abel_window_mass(const EigenSystem& sys, double T, double L, double prune) {
  SiteMassCache cache(sys, T, prune);
  return cache.window(L);
}

double BoundReport::max_theta_ratio() const noexcept {
  double worst = 0.0;
  for (double r : theta_ratio) worst = std::max(worst, r);
  return worst;
}

BoundReport dynamical_bound_check(double lambda, std::span<const PhasePoint> thetas,
                                  std::span<const double> T_grid, double C1, double p_used,
                                  const BoundOptions& options) {
  if (thetas.empty()) throw std::invalid_argument("dynamical_bound_check: empty theta list");
  check_grid(T_grid, "dynamical_bound_check");
  if (!(C1 > 0.0) || !(p_used >= 0.0) || !std::isfinite(C1) || !std::isfinite(p_used)) {
    throw std::invalid_argument("dynamical_bound_check: C1 must be > 0 and p_used >= 0");
  }

  std::vector<std::vector<AbelRecord>> per_theta(thetas.size());
  run_indexed(thetas.size(), options.jobs, [&](std::size_t i) {
    per_theta[i] = phase_records(lambda, thetas[i], T_grid, C1, p_used, options);
  });

  BoundReport report;
  report.lambda = lambda;
  report.C1 = C1;
  report.p_used = p_used;
  report.theta_list.assign(thetas.begin(), thetas.end());
  report.T_grid.assign(T_grid.begin(), T_grid.end());
  report.G_emp = std::numeric_limits<double>::infinity();
  report.all_valid = true;
  for (const auto& rows : per_theta) {
    for (const auto& r : rows) {
      report.table.push_back(r);
      report.G_emp = std::min(report.G_emp, r.mass);
      report.all_valid = report.all_valid && r.valid;
    }
  }
  for (std::size_t t = 0; t < T_grid.size(); ++t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& rows : per_theta) {
      lo = std::min(lo, rows[t].mass);
      hi = std::max(hi, rows[t].mass);
    }
    report.theta_ratio.push_back(lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
  }
  return report;
}

std::vector<TrendRow> exponent_trend(std::span<const double> lambdas, PhasePoint theta,
                                     std::span<const double> T_grid, const TrendOptions& options) {
  if (lambdas.empty()) throw std::invalid_argument("exponent_trend: empty lambda list");
  check_grid(T_grid, "exponent_trend");
  std::vector<double> p_grid = options.p_grid;
  if (p_grid.empty()) {
    for (int i = 1; i <= 20; ++i) p_grid.push_back(i / 20.0);
  }
  std::sort(p_grid.begin(), p_grid.end());
  for (double lambda : lambdas) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("exponent_trend: lambda must be finite and > 0");
    }
  }

  std::vector<TrendRow> rows(lambdas.size());
  run_indexed(lambdas.size(), options.bound.jobs, [&](std::size_t li) {
    const double lambda = lambdas[li];
    TrendRow& row = rows[li];
    row.lambda = lambda;
    int N = choose_N(options.bound, T_grid);
    EigenSystem sys;
    for (int attempt = 1; attempt <= 2; ++attempt) {
      sys = diagonalize(build_truncation(N, lambda, theta));
      row.valid = true;
      for (double T : T_grid) {
        if (!(abel_edge_mass(sys, T, options.bound.edge_width) < options.bound.edge_tol)) row.valid = false;
      }
      const int bigger = std::min(2 * N, std::max(options.bound.N_limit, N));
      if (row.valid || bigger == N) break;
      N = bigger;
    }
    row.N = N;

    std::vector<SiteMassCache> caches;
    caches.reserve(T_grid.size());
    for (double T : T_grid) caches.emplace_back(sys, T, kModePrune);
    row.p_fit = std::numeric_limits<double>::quiet_NaN();
    for (double p : p_grid) {
      std::vector<double> mass;
      bool above = true;
      for (std::size_t t = 0; t < T_grid.size() && above; ++t) {
        mass.push_back(caches[t].window(std::pow(T_grid[t], p)));
        above = mass.back() >= options.floor;
      }
      if (above) {
        row.p_fit = p;
        row.mass = std::move(mass);
        break;
      }
    }
    row.p_log_lambda = row.p_fit * std::log(lambda);
  });
  return rows;
}

}  // namespace quasitrace::dynamics
