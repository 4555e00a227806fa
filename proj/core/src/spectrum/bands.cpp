#include "quasitrace/spectrum/bands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "quasitrace/words/fibonacci.hpp"

namespace quasitrace::spectrum {

namespace {

struct Interval {
  Real lo;
  Real hi;
};

enum class Zone { below = -1, inside = 0, above = 1 };

Zone zone_of(Real x) {
  if (x > 2) return Zone::above;
  if (x < -2) return Zone::below;
  return Zone::inside;
}

Real level_value(int k, Real energy, Real lambda) { return trace_map(k, energy, lambda).x; }

// Root of x_k(E) - target on [l, r], given opposite signs at the ends.
// Bisects until the midpoint no longer separates the endpoints.
Real bisect(int k, Real lambda, Real target, Real l, Real r) {
  const bool left_positive = level_value(k, l, lambda) - target > 0;
  for (;;) {
    const Real m = (l + r) / 2;
    if (!(m > l && m < r)) break;
    if ((level_value(k, m, lambda) - target > 0) == left_positive) {
      l = m;
    } else {
      r = m;
    }
  }
  const Real fl = level_value(k, l, lambda) - target;
  const Real fr = level_value(k, r, lambda) - target;
  return (fl < 0 ? -fl : fl) <= (fr < 0 ? -fr : fr) ? l : r;
}

std::vector<Interval> merge_sorted(std::vector<Interval> xs, Real gap) {
  std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& x : xs) {
    if (!out.empty() && x.lo <= out.back().hi + gap) {
      out.back().hi = std::max(out.back().hi, x.hi);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

// Sampling plan: merged padded segments, each with its sorted sample points.
struct Segment {
  Real lo;
  Real hi;
  std::vector<Real> points;
};

std::vector<Segment> plan_cover(const std::vector<Band>& a, const std::vector<Band>& b,
                                int points_per_interval, double padding) {
  std::vector<Interval> padded;
  padded.reserve(a.size() + b.size());
  for (const auto* level : {&a, &b}) {
    for (const auto& band : *level) {
      Real pad = band.width() * static_cast<Real>(padding);
      if (pad <= 0) pad = 1e-30Q;
      padded.push_back({band.lo - pad, band.hi + pad});
    }
  }
  const auto merged = merge_sorted(padded, 0);

  std::vector<Segment> segments;
  segments.reserve(merged.size());
  for (const auto& m : merged) segments.push_back({m.lo, m.hi, {}});

  const int n = std::max(points_per_interval, 2);
  for (const auto& p : padded) {
    auto it = std::upper_bound(segments.begin(), segments.end(), p.lo,
                               [](Real v, const Segment& s) { return v < s.lo; });
    Segment& seg = *std::prev(it);
    for (int i = 0; i < n; ++i) {
      seg.points.push_back(p.lo + (p.hi - p.lo) * static_cast<Real>(i) / static_cast<Real>(n - 1));
    }
  }
  for (auto& seg : segments) {
    std::sort(seg.points.begin(), seg.points.end());
    seg.points.erase(std::unique(seg.points.begin(), seg.points.end()), seg.points.end());
  }
  return segments;
}

std::vector<Segment> plan_uniform(Real lo, Real hi, int points) {
  Segment seg{lo, hi, {}};
  seg.points.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    seg.points.push_back(lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(points - 1));
  }
  return {seg};
}

[[noreturn]] void edge_failure(int k, double lambda) {
  throw std::runtime_error("bands: level " + std::to_string(k) + " at lambda = " +
                           std::to_string(lambda) + " reaches the edge of its scan window");
}

void scan_segment(int k, double lambda, const Segment& seg, bool locate,
                  std::vector<Interval>& found) {
  const Real lam = lambda;
  const auto& pts = seg.points;
  std::vector<Zone> zones(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) zones[i] = zone_of(level_value(k, pts[i], lam));
  if (zones.front() == Zone::inside || zones.back() == Zone::inside) edge_failure(k, lambda);

  Real open_at = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Zone prev = zones[i - 1];
    const Zone cur = zones[i];
    if (prev == cur) continue;
    const Real l = pts[i - 1];
    const Real r = pts[i];
    if (prev != Zone::inside && cur == Zone::inside) {
      open_at = locate ? bisect(k, lam, prev == Zone::above ? 2 : -2, l, r) : l;
    } else if (prev == Zone::inside && cur != Zone::inside) {
      const Real close_at = locate ? bisect(k, lam, cur == Zone::above ? 2 : -2, l, r) : r;
      found.push_back({open_at, close_at});
    } else {
      // Passed through [-2, 2] between two samples.
      const Real first = prev == Zone::above ? 2 : -2;
      if (locate) {
        const Real enter = bisect(k, lam, first, l, r);
        found.push_back({enter, bisect(k, lam, -first, enter, r)});
      } else {
        found.push_back({l, r});
      }
    }
  }
}

std::vector<Interval> scan(int k, double lambda, const std::vector<Segment>& segments, bool locate,
                           int jobs) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), segments.size());
  std::vector<std::vector<Interval>> parts(std::max<std::size_t>(workers, 1));
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < segments.size(); i += parts.size()) {
      std::vector<Interval> local;
      scan_segment(k, lambda, segments[i], locate, local);
      parts[w].insert(parts[w].end(), local.begin(), local.end());
    }
  };
  if (parts.size() == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(parts.size());
    for (std::size_t w = 0; w < parts.size(); ++w) {
      threads.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<Interval> found;
  for (const auto& part : parts) found.insert(found.end(), part.begin(), part.end());
  std::sort(found.begin(), found.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return found;
}

std::vector<Band> to_bands(const std::vector<Interval>& xs, int k, double lambda) {
  std::vector<Band> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back({k, lambda, x.lo, x.hi});
  return out;
}

std::vector<Segment> plan_level(int k, double lambda, const std::vector<std::vector<Band>>& levels,
                                const BandScanOptions& options, int refinement) {
  if (k <= 1) {
    const Real eps = 0.25Q + static_cast<Real>(options.cover_padding) * (lambda + 4);
    const int points = std::max(options.base_grid_points,
                                options.points_per_interval * static_cast<int>(words::fib_length(k))) *
                       refinement;
    return plan_uniform(-2 - eps, static_cast<Real>(lambda) + 2 + eps, points);
  }
  return plan_cover(levels[static_cast<std::size_t>(k - 1)], levels[static_cast<std::size_t>(k - 2)],
                    options.points_per_interval * refinement, options.cover_padding);
}

}  // namespace

std::vector<std::vector<Band>> band_levels(int k_max, double lambda, const BandScanOptions& options) {
  if (k_max < 0 || k_max > kMaxBandLevel) {
    throw std::out_of_range("band_levels: k_max must lie in [0, " + std::to_string(kMaxBandLevel) +
                            "], got " + std::to_string(k_max));
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("band_levels: coupling must be finite and non-negative");
  }
  if (options.points_per_interval < 2 || options.base_grid_points < 2 || !(options.cover_padding > 0.0)) {
    throw std::invalid_argument("band_levels: invalid scan options");
  }

  // At lambda = 0 neighbouring bands touch; rounding may leave a tiny gap.
  const Real gap = lambda == 0.0 ? 1e-12Q : 0;

  std::vector<std::vector<Band>> levels;
  levels.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const auto found = scan(k, lambda, plan_level(k, lambda, levels, options, 1), true,
                            options.jobs);
    if (options.check_refinement) {
      const auto fine = scan(k, lambda, plan_level(k, lambda, levels, options, 2), false,
                             options.jobs);
      if (fine.size() != found.size()) {
        throw std::runtime_error("bands: level " + std::to_string(k) + " at lambda = " +
                                 std::to_string(lambda) + " has " + std::to_string(found.size()) +
                                 " bands on the base grid but " + std::to_string(fine.size()) +
                                 " on the doubled grid");
      }
    }
    levels.push_back(to_bands(merge_sorted(found, gap), k, lambda));
  }
  return levels;
}

std::vector<Band> bands(int k, double lambda, const BandScanOptions& options) {
  auto levels = band_levels(k, lambda, options);
  return std::move(levels.back());
}

std::vector<Band> merge_cover(const std::vector<Band>& a, const std::vector<Band>& b, int k) {
  std::vector<Interval> xs;
  xs.reserve(a.size() + b.size());
  double lambda = 0.0;
  for (const auto* level : {&a, &b}) {
    for (const auto& band : *level) {
      xs.push_back({band.lo, band.hi});
      lambda = band.lambda;
    }
  }
  return to_bands(merge_sorted(std::move(xs), 0), k, lambda);
}

std::vector<Band> spectrum_cover(int K, double lambda, const BandScanOptions& options) {
  const auto levels = band_levels(K + 1, lambda, options);
  return merge_cover(levels[static_cast<std::size_t>(K)], levels[static_cast<std::size_t>(K + 1)], K);
}

BandCheck verify_band(const Band& band, int samples, double tol) {
  if (samples < 1) throw std::invalid_argument("verify_band: samples must be positive");
  const Real lam = band.lambda;
  auto absq = [](Real x) { return x < 0 ? -x : x; };
  BandCheck out;
  for (int i = 0; i < samples; ++i) {
    const Real e = band.lo + band.width() * (static_cast<Real>(i) + 0.5Q) / static_cast<Real>(samples);
    out.max_abs_interior = std::max(out.max_abs_interior, absq(level_value(band.k, e, lam)));
  }
  out.edge_residual_lo = absq(absq(level_value(band.k, band.lo, lam)) - 2);
  out.edge_residual_hi = absq(absq(level_value(band.k, band.hi, lam)) - 2);
  const Real t = tol;
  out.ok = out.max_abs_interior <= 2 + t && out.edge_residual_lo <= t && out.edge_residual_hi <= t;
  return out;
}

}  // namespace quasitrace::spectrum
