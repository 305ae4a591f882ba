#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "../oracles.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/poisson.hpp"
#include "lltlab/rng.hpp"

using namespace lltlab;

TEST_SUITE("poisson") {
  TEST_CASE("laws") {
    const IntLaw p = poisson_law(3.2);
    for (int k = 0; k < 15; ++k) CHECK(p[k] == doctest::Approx(oracle::poisson(3.2, k)).epsilon(1e-13));
    const IntLaw b = poisson_binomial_law({0.3, 0.3, 0.3, 0.3});
    for (int k = 0; k <= 4; ++k) CHECK(b[k] == doctest::Approx(oracle::binomial(4, k, 0.3)));
    CHECK(to_int_law(LatticePmf::uniform(0, 3))[2] == doctest::Approx(0.25));
    CHECK_THROWS_AS(to_int_law(LatticePmf::uniform(-1, 3)), PreconditionError);
  }

  TEST_CASE("distances on the worked example") {
    const IntLaw bin{0.81, 0.18, 0.01};
    IntLaw poi;
    for (int k = 0; k < 30; ++k) poi.push_back(oracle::poisson(0.2, k));
    const IntLaw a = poisson_binomial_law({0.1, 0.1});
    CHECK(tv_distance(a, poisson_law(0.2)) == doctest::Approx(tv_distance(bin, poi)).epsilon(1e-12));
    CHECK(tv_distance(bin, poi) == doctest::Approx(0.01625).epsilon(1e-3));
    CHECK(d0_distance(bin, poi) == doctest::Approx(std::abs(0.18 - 0.2 * std::exp(-0.2))).epsilon(1e-12));
    CHECK(d0_distance(bin, poi) == doctest::Approx(0.016253).epsilon(1e-4));
    CHECK(d0_distance(bin, poi) <= tv_distance(bin, poi) + 1e-15);
    CHECK(tv_distance(bin, bin) == 0.0);
    CHECK(d0_distance(bin, bin) == 0.0);
    CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
  }

  TEST_CASE("subset form of total variation") {
    CounterRng rng(9, 0);
    for (int c = 0; c < 10; ++c) {
      IntLaw a(8), b(8);
      double sa = 0.0, sb = 0.0;
      for (int k = 0; k < 8; ++k) {
        sa += a[k] = rng.uniform();
        sb += b[k] = rng.uniform();
      }
      for (int k = 0; k < 8; ++k) {
        a[k] /= sa;
        b[k] /= sb;
      }
      CHECK(tv_by_subsets(a, b) == doctest::Approx(tv_distance(a, b)).epsilon(1e-12));
      CHECK(hodges_lecam_D(a, b) <= tv_distance(a, b) + 1e-15);
    }
  }

  TEST_CASE("Le Cam bound") {
    const LeCamRecord r = lecam_check({0.1, 0.1});
    CHECK(r.bound == doctest::Approx(0.04));
    CHECK(r.full_sum <= 0.04);
    CHECK(lecam_bound({0.2, 0.1, 0.05}) == doctest::Approx(2.0 * (0.04 + 0.01 + 0.0025)));
  }

  TEST_CASE("coupling table") {
    const CouplingTable t = coupling({0.1});
    const CouplingRow& r = t.rows.front();
    CHECK(r.x1y1 == doctest::Approx(0.090484).epsilon(1e-5));
    CHECK(r.x1y0 == doctest::Approx(0.009516).epsilon(1e-4));
    CHECK(r.x0y0 == doctest::Approx(std::exp(-0.1) - 0.1 * (1.0 - std::exp(-0.1))).epsilon(1e-14));
    double rest = 0.0;
    for (double m : r.x0y) rest += m;
    CHECK(rest == doctest::Approx(0.004679).epsilon(1e-3));
    CHECK(r.total() == doctest::Approx(1.0).epsilon(1e-14));
    for (Index y = 0; y < 8; ++y) CHECK(r.marginal_y(y) == doctest::Approx(oracle::poisson(0.1, static_cast<int>(y))));
    CHECK(r.marginal_x(1) == doctest::Approx(0.1));
    // P(X = Y) -> 1 as p -> 0.
    const CouplingTable small = coupling({1e-4});
    const CouplingRow& s = small.rows.front();
    CHECK(s.x1y1 + s.x0y0 > 1.0 - 3e-8);
    CHECK_THROWS_AS(coupling({0.1, 0.9}), InfeasibleError);
    try {
      coupling({0.1, 0.9});
    } catch (const InfeasibleError& e) {
      CHECK(e.row() == 1);
    }
  }

  TEST_CASE("Franken bound") {
    const FrankenRecord r = franken_check({{0.8, 0.2}});
    CHECK(r.bound == doctest::Approx(2.0 / std::numbers::pi * 0.2).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(0.1273).epsilon(1e-3));
    CHECK(r.holds());
    const FrankenRecord z = franken_check({{1.0}, {1.0}});
    CHECK(z.bound == 0.0);
    CHECK(z.d0 == 0.0);
  }

  TEST_CASE("csv") {
    std::ostringstream out;
    write_poisson_csv(out, {0.81, 0.18, 0.01}, poisson_law(0.2));
    CHECK(out.str().find("k,exactMass,poissonMass,absGap") != std::string::npos);
  }
}
