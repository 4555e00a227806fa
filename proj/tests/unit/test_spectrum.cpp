#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "quasitrace/spectrum/bands.hpp"
#include "quasitrace/spectrum/growth.hpp"
#include "quasitrace/spectrum/trace_map.hpp"
#include "quasitrace/words/fibonacci.hpp"

using namespace quasitrace;
using namespace quasitrace::spectrum;

namespace {

double d(Real x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("trace map agrees with direct products") {
  for (double lambda : {0.0, 2.0, 10.0}) {
    for (double E : {-1.9, 0.4, lambda + 0.7}) {
      for (int k = 0; k <= 9; ++k) {
        const auto t = trace_map(k, Real(E), Real(lambda));
        const long double ref = oracle::trace_direct(k, E, lambda);
        CHECK(std::abs(d(t.x) - double(ref)) <= 1e-9 * std::max(1.0L, std::abs(ref)));
        auto f = [&](long double e) { return oracle::trace_direct(k, e, lambda); };
        const long double fd = oracle::derivative(f, E);
        CHECK(std::abs(d(t.dx) - double(fd)) <= 1e-5 * std::max(1.0L, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("closed-form band examples") {
  const auto b0 = bands(0, 2);
  REQUIRE(b0.size() == 1);
  CHECK(d(b0[0].lo) == doctest::Approx(0).epsilon(1e-12));
  CHECK(d(b0[0].hi) == doctest::Approx(4));

  const auto b1 = bands(1, 2);
  REQUIRE(b1.size() == 2);
  CHECK(d(b1[0].lo) == doctest::Approx(1 - std::sqrt(5.0)).epsilon(1e-14));
  CHECK(std::abs(d(b1[0].hi)) < 1e-14);
  CHECK(d(b1[1].lo) == doctest::Approx(2).epsilon(1e-14));
  CHECK(d(b1[1].hi) == doctest::Approx(1 + std::sqrt(5.0)).epsilon(1e-14));

  const auto free1 = bands(1, 0);
  REQUIRE(free1.size() == 1);
  CHECK(d(free1[0].lo) == doctest::Approx(-2));
  CHECK(d(free1[0].hi) == doctest::Approx(2));

  const auto cover = spectrum_cover(6, 0);
  REQUIRE(cover.size() == 1);
  CHECK(d(cover[0].lo) == doctest::Approx(-2));
  CHECK(d(cover[0].hi) == doctest::Approx(2));
}

TEST_CASE("band counts, invariants and nesting") {
  for (double lambda : {5.0, 10.0}) {
    const auto levels = band_levels(12, lambda);
    for (int k = 0; k <= 12; ++k) {
      CHECK(levels[k].size() == words::fib_length(k));
      for (const auto& b : levels[k]) {
        CHECK(b.lo < b.hi);
        const auto check = verify_band(b);
        CHECK(check.ok);
        // Independent evaluation at the midpoint by explicit products.
        CHECK(std::abs(oracle::trace_direct(k, d(b.center()), lambda)) <= 2 + 1e-9);
      }
      for (std::size_t i = 1; i < levels[k].size(); ++i) CHECK(levels[k][i - 1].hi < levels[k][i].lo);
    }
    double prev_measure = 1e300;
    for (int K = 4; K <= 11; ++K) {
      const auto cover = merge_cover(levels[K], levels[K + 1], K);
      double measure = 0;
      for (const auto& b : cover) measure += d(b.width());
      CHECK(measure < prev_measure);
      prev_measure = measure;
      if (K >= 5) {
        const auto outer = merge_cover(levels[K - 1], levels[K], K - 1);
        for (const auto& b : cover) {
          bool inside = false;
          for (const auto& o : outer) inside = inside || (b.lo >= o.lo - 1e-12 && b.hi <= o.hi + 1e-12);
          CHECK(inside);
        }
      }
    }
  }
  CHECK_THROWS_AS(band_levels(26, 10), std::out_of_range);
  CHECK_THROWS_AS(band_levels(4, -1), std::invalid_argument);
}

TEST_CASE("derivative growth fit") {
  const auto levels = band_levels(19, 10);
  const auto fit10 = derivative_growth_scan(10, 6, 18, levels);
  CHECK(fit10.xi_hat >= 5);
  CHECK(fit10.xi_hat <= 20);
  CHECK(fit10.zeta_hat > 0);
  CHECK(fit10.zeta_hat == doctest::Approx(zeta_from_xi(fit10.xi_hat)));
  CHECK(zeta_from_xi(1.0 / (0.6180339887498949 * 0.6180339887498949 * 0.6180339887498949 *
                            0.6180339887498949 * 0.6180339887498949 * 0.6180339887498949)) ==
        doctest::Approx(1.0));
  for (const auto& lvl : fit10.levels) {
    CHECK(lvl.k % 2 == 0);
    CHECK(lvl.min_abs_dx > 0);
    CHECK(lvl.samples > 0);
  }
  for (std::size_t i = 1; i < fit10.levels.size(); ++i) {
    const double slope = std::log(fit10.levels[i].min_abs_dx / fit10.levels[i - 1].min_abs_dx) /
                         (fit10.levels[i].k - fit10.levels[i - 1].k);
    CHECK(slope >= 0.5 * std::log(10.0 / 2));
  }
  const auto fit20 = derivative_growth_scan(20, 6, 14);
  CHECK(fit20.xi_hat > derivative_growth_scan(10, 6, 14, levels).xi_hat);
  CHECK_THROWS_AS(derivative_growth_scan(0, 6, 12), std::domain_error);
}

TEST_CASE("norm growth against a power law") {
  std::vector<double> L;
  for (int k = 4; k <= 18; ++k) L.push_back(double(words::fib_length(k)));
  const auto sigma = bands(12, 10);
  const double E = d(sigma[sigma.size() / 3].center());
  const auto t0 = norm_growth_check(10, words::PhasePoint{}, E, L, 1.0);
  const auto t3 = norm_growth_check(10, words::PhasePoint::parse("1/3"), E, L, 1.0);
  CHECK(t0.ok());
  CHECK(t3.ok());
  CHECK(t0.rows.size() == 2 * L.size());
  for (const auto& r : t0.rows) {
    CHECK(r.norm_sq >= r.L * (1 - 1e-12));
    CHECK(r.norm_sq >= r.bound * (1 - 1e-12));
  }
  CHECK(t0.c_fit == doctest::Approx(std::min(t0.c_fit_left, t0.c_fit_right)));
}
