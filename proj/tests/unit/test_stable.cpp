#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/stable.hpp"

using namespace lltlab;

TEST_SUITE("stable") {
  TEST_CASE("inversion matches the closed-form Levy density") {
    const StableDensity g(StableParams{});
    for (double x : {0.05, 0.2, 0.5, 1.0, 2.0, 3.0, 5.0, 20.0})
      CHECK(g(x) == doctest::Approx(oracle::levy_half_density(x)).epsilon(1e-8));
    for (double x : {0.3, 1.5, 2.5})
      CHECK(g.by_inversion(x) == doctest::Approx(oracle::levy_half_density(x)).epsilon(1e-8));
  }

  TEST_CASE("series branch agrees with inversion above the threshold") {
    const StableDensity g(StableParams{0.7, 1.0, true});
    const double x = 1.5 * g.series_threshold();
    CHECK(g.by_series(x) == doctest::Approx(g.by_inversion(x)).epsilon(1e-7));
  }

  TEST_CASE("one-sided support") {
    const StableDensity g(StableParams{});
    for (double x : {-3.0, -0.5, -0.01}) CHECK(std::abs(g(x)) < 1e-4);
  }

  TEST_CASE("normalization") { CHECK(stable_mass(StableDensity(StableParams{})) == doctest::Approx(1.0).epsilon(1e-4)); }

  TEST_CASE("unsupported parameters") {
    CHECK_THROWS_AS(StableDensity(StableParams{1.0, 1.0, true}), PreconditionError);
    CHECK_THROWS_AS(StableDensity(StableParams{1.5, 1.0, true}), PreconditionError);
  }

  TEST_CASE("table interpolation") {
    const StableDensity g(StableParams{});
    const StableTable t = default_table(g);
    for (double x : {0.031, 0.44, 1.7, 2.9}) CHECK(t(x) == doctest::Approx(oracle::levy_half_density(x)).epsilon(1e-8));
  }

  TEST_CASE("windowed sums are exact inside the window") {
    const PowerTailFamily f{0.5, 1.0};
    const DenseWindow w = power_tail_sum_window(f, 2, 50);
    // P(S_2 = m) = sum_{j=1}^{m-1} p(j) p(m-j).
    for (Index m : {2, 7, 50}) {
      double ref = 0.0;
      for (Index j = 1; j < m; ++j) ref += f.mass(j) * f.mass(m - j);
      CHECK(w.at(m) == doctest::Approx(ref).epsilon(1e-13));
    }
  }

  TEST_CASE("LLT error decreases and the scaled pmf stays bounded") {
    const StableDensity g(StableParams{});
    const StableTable t = default_table(g);
    const PowerTailFamily f{0.5, 1.0};
    const StableLltReport one = stable_llt_error(f, 1, 16.0, &t);
    CHECK(std::isfinite(one.report.error));
    double prev = INFINITY, peak = 0.0;
    for (Index n : {8, 16, 32, 64}) {
      const StableLltReport r = stable_llt_error(f, n, 16.0, &t);
      CHECK(r.report.error < prev);
      prev = r.report.error;
      peak = std::max(peak, r.peak);
      CHECK(r.B == doctest::Approx(static_cast<double>(n * n)));
    }
    CHECK(peak < 1.0);
  }

  TEST_CASE("Doney ratio") {
    const PowerTailFamily f{1.5, 1.0};
    double prev = INFINITY;
    for (Index m : {200, 400, 800}) {
      const double r = doney_ratio(f, 32, m);
      CHECK(r > 0.0);
      CHECK(std::abs(r - 1.0) < prev);
      prev = std::abs(r - 1.0);
    }
    // n = 1 with a mean-zero law: the ratio is 1 on the support.
    const LatticePmf z(0.0, 1.0, {{-2, 0.25}, {0, 0.5}, {2, 0.25}});
    for (Index m : {2}) CHECK(doney_ratio(z, 1, m, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(doney_ratio(f, 32, 10), PreconditionError);
  }
}
