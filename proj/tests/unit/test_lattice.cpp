#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lltlab/errors.hpp"
#include "lltlab/lattice.hpp"

using namespace lltlab;

TEST_SUITE("lattice") {
  TEST_CASE("maximal span from index offsets") {
    CHECK(maximal_span(LatticePmf(0.0, 1.0, {{0, 0.5}, {1, 0.5}})) == 1.0);
    CHECK(maximal_span(LatticePmf(0.0, 1.0, {{0, 0.2}, {2, 0.3}, {4, 0.5}})) == 2.0);
    CHECK(maximal_span(LatticePmf(3.0, 1.0, {{0, 0.5}, {4, 0.5}})) == 4.0);
    CHECK(maximal_span(LatticePmf(0.0, 0.5, {{1, 0.5}, {7, 0.5}})) == 3.0);
    CHECK_THROWS_AS(maximal_span(LatticePmf::point_mass(2.0)), DegenerateError);
  }

  TEST_CASE("constructor rejects bad input") {
    CHECK_THROWS_AS(LatticePmf(0.0, 1.0, {{0, 0.5}, {1, 0.4}}), PreconditionError);
    CHECK_THROWS_AS(LatticePmf(0.0, 1.0, {{0, 1.2}, {1, -0.2}}), PreconditionError);
    CHECK_THROWS_AS(LatticePmf(0.0, 0.0, {{0, 1.0}}), PreconditionError);
    CHECK_THROWS_AS(LatticePmf(0.0, 1.0, {}), PreconditionError);
  }

  TEST_CASE("moments by direct summation") {
    const MomentSummary b = moments(LatticePmf::bernoulli(0.5));
    CHECK(b.mean() == doctest::Approx(0.5));
    CHECK(b.variance() == doctest::Approx(0.25));
    const MomentSummary pt = moments(LatticePmf::point_mass(5.0));
    CHECK(pt.mean() == doctest::Approx(5.0));
    CHECK(pt.variance() == doctest::Approx(0.0));
    const MomentSummary die = moments(LatticePmf::uniform(1, 6));
    CHECK(die.mean() == doctest::Approx(3.5));
    CHECK(die.variance() == doctest::Approx(35.0 / 12.0));
    CHECK(die.third_central() == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("moments respect v0 and span") {
    // Values 1 and 4 with masses 1/3, 2/3.
    const MomentSummary m = moments(LatticePmf(1.0, 3.0, {{0, 1.0 / 3.0}, {1, 2.0 / 3.0}}));
    CHECK(m.mean() == doctest::Approx(3.0));
    CHECK(m.variance() == doctest::Approx(2.0));
  }

  TEST_CASE("power-tail moments are absent below their order") {
    const LatticePmf heavy = LatticePmf::power_tail({0.5, 1.0, 1e-2});
    CHECK_FALSE(moments(heavy).mu.has_value());
    const LatticePmf mid = LatticePmf::power_tail({1.5, 1.0, 1e-4});
    REQUIRE(moments(mid).mu.has_value());
    CHECK(*moments(mid).mu == doctest::Approx(std::riemann_zeta(1.5)));
    CHECK_FALSE(moments(mid).sigma2.has_value());
  }

  TEST_CASE("power-tail truncation records discarded mass") {
    const PowerTailFamily f{1.5, 1.0, 1e-4};
    const LatticePmf p = LatticePmf::power_tail(f);
    REQUIRE(p.tail().has_value());
    CHECK(p.tail()->discarded_mass < 1e-4);
    CHECK(p.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    // Truncation index is the smallest J with tail below the threshold.
    const Index J = p.tail()->truncation_index;
    CHECK(f.tail_above(J) < 1e-4);
    CHECK(f.tail_above(J - 1) >= 1e-4);
    CHECK_THROWS_AS(LatticePmf::power_tail({0.5, 1.0, 1e-10}), ResourceError);
  }

  TEST_CASE("family masses telescope") {
    const PowerTailFamily f{0.5, 1.0};
    double s = 0.0;
    for (Index j = 1; j <= 1000; ++j) s += f.mass(j);
    CHECK(s + f.tail_above(1000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.mass(1) == doctest::Approx(1.0 - std::pow(2.0, -0.5)));
  }

  TEST_CASE("characteristic function") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    CHECK(std::abs(char_fn(b, std::numbers::pi)) == doctest::Approx(0.0).epsilon(1e-15));
    for (double t : {0.3, 1.1, 2.5}) CHECK(std::abs(char_fn(b, t)) == doctest::Approx(std::abs(std::cos(t / 2.0))));
    CHECK(char_fn(LatticePmf::uniform(-3, 9), 0.0) == std::complex<double>(1.0, 0.0));
    for (double t : {0.7, 2.0, 5.0}) CHECK(std::abs(char_fn(LatticePmf::point_mass(4.0), t)) == doctest::Approx(1.0));
  }

  TEST_CASE("maximal span is a period of the modulus") {
    const LatticePmf p(0.0, 1.0, {{0, 0.2}, {3, 0.5}, {9, 0.3}});
    CHECK(std::abs(char_fn(p, 2.0 * std::numbers::pi / maximal_span(p))) == doctest::Approx(1.0));
    CHECK(std::abs(char_fn(p, 2.0 * std::numbers::pi / 6.0)) < 0.999);
  }

  TEST_CASE("relabeled and reflected") {
    const LatticePmf p(2.0, 0.5, {{1, 0.25}, {4, 0.75}});
    const LatticePmf r = p.relabeled();
    CHECK(r.v0() == 0.0);
    CHECK(r.span() == 1.0);
    CHECK(r.mass(4) == 0.75);
    const LatticePmf m = p.reflected();
    CHECK(moments(m).mean() == doctest::Approx(-moments(p).mean()));
  }

  TEST_CASE("json round trip and shorthands") {
    const LatticePmf p(1.5, 2.0, {{0, 0.1}, {2, 0.6}, {5, 0.3}});
    const LatticePmf q = pmf_from_json(to_json(p));
    CHECK(q.v0() == p.v0());
    CHECK(q.span() == p.span());
    REQUIRE(q.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(q.atoms()[i].index == p.atoms()[i].index);
      CHECK(q.atoms()[i].mass == p.atoms()[i].mass);
    }
    CHECK(parse_distribution("bernoulli:0.3").mass(1) == doctest::Approx(0.3));
    CHECK(parse_distribution("uniform:1:6").size() == 6);
    CHECK(parse_distribution("pmf:0=0.3,1=0.4,2=0.3").mass(1) == doctest::Approx(0.4));
    CHECK(parse_distribution("power_tail:1.5:1:1e-4").tail().has_value());
    CHECK_THROWS_AS(parse_distribution("bernoulli:x"), SpecError);
    CHECK_THROWS_AS(parse_distribution("cauchy:1"), SpecError);
    CHECK_THROWS_AS(pmf_from_json(nlohmann::json{{"v0", 0}}), SpecError);
  }
}
