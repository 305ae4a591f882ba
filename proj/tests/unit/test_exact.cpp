#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../oracles.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/rng.hpp"
#include "lltlab/verify.hpp"

using namespace lltlab;

namespace {

std::vector<std::pair<long, double>> atoms_of(const LatticePmf& p) {
  std::vector<std::pair<long, double>> out;
  for (const Atom& a : p.atoms()) out.emplace_back(a.index, a.mass);
  return out;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("binomial masses") {
    const SumLawTable t = sum_law(LatticePmf::bernoulli(0.5), 10);
    CHECK(t.base.mass(5) == doctest::Approx(252.0 / 1024.0).epsilon(1e-14));
    for (int k = 0; k <= 10; ++k) CHECK(t.base.mass(k) == doctest::Approx(oracle::binomial(10, k, 0.5)).epsilon(1e-13));
    const SumLawTable u = sum_law(LatticePmf::bernoulli(0.3), 37);
    for (int k = 0; k <= 37; k += 3) CHECK(u.base.mass(k) == doctest::Approx(oracle::binomial(37, k, 0.3)).epsilon(1e-10));
  }

  TEST_CASE("point mass and dice") {
    const SumLawTable t = sum_law(LatticePmf::point_mass(1.0), 5);
    REQUIRE(t.base.size() == 1);
    CHECK(t.base.value(t.base.min_index()) == doctest::Approx(5.0));
    CHECK(sum_law(LatticePmf::uniform(1, 6), 2).base.mass(7) == doctest::Approx(6.0 / 36.0));
  }

  TEST_CASE("sum law against tuple enumeration") {
    CounterRng rng(11, 0);
    for (int c = 0; c < 10; ++c) {
      const LatticePmf p = random_span1_pmf(rng, 5);
      for (int n : {2, 3, 5}) {
        const auto ref = oracle::enumerate_sum(atoms_of(p), n);
        const SumLawTable t = sum_law(p, n);
        for (const auto& [k, m] : ref) CHECK(t.base.mass(k) == doctest::Approx(m).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("value points carry n v0") {
    const LatticePmf p(0.5, 2.0, {{0, 0.5}, {1, 0.5}});
    const SumLawTable t = sum_law(p, 3);
    CHECK(t.base.value(0) == doctest::Approx(1.5));
    CHECK(t.base.value(3) == doctest::Approx(7.5));
    CHECK(t.meta.mean() == doctest::Approx(3 * 1.5));
  }

  TEST_CASE("associativity") {
    const LatticePmf p(0.0, 1.0, {{0, 0.2}, {1, 0.5}, {3, 0.3}});
    const SumLawTable a = sum_law(p, 7), b = sum_law(p, 5), ab = sum_law(p, 12);
    const DenseWindow c = convolve(a.base.dense(), b.base.dense());
    for (Index k = 0; k <= 36; ++k) CHECK(c.at(k) == doctest::Approx(ab.base.mass(k)).epsilon(1e-10));
  }

  TEST_CASE("convolution methods agree") {
    CounterRng rng(12, 0);
    DenseWindow a{3, {}}, b{-2, {}};
    for (int i = 0; i < 5000; ++i) a.mass.push_back(rng.uniform());
    for (int i = 0; i < 700; ++i) b.mass.push_back(rng.uniform());
    const DenseWindow s = convolve(a, b, ConvolutionMethod::Sparse);
    const DenseWindow d = convolve(a, b, ConvolutionMethod::Dense);
    const DenseWindow f = convolve(a, b, ConvolutionMethod::Fft);
    REQUIRE(s.first == d.first);
    REQUIRE(s.first == f.first);
    REQUIRE(s.mass.size() == f.mass.size());
    double worst_d = 0.0, worst_f = 0.0;
    for (std::size_t i = 0; i < s.mass.size(); ++i) {
      worst_d = std::max(worst_d, std::abs(s.mass[i] - d.mass[i]));
      worst_f = std::max(worst_f, std::abs(s.mass[i] - f.mass[i]) / 5000.0);
    }
    CHECK(worst_d < 1e-9);
    CHECK(worst_f < 1e-9);
  }

  TEST_CASE("underflow floor records lost mass") {
    DenseWindow w{0, {1e-320, 0.5, 1e-310, 0.5, 1e-305}};
    const double lost = apply_floor(w);
    CHECK(lost == doctest::Approx(1e-320 + 1e-310 + 1e-305));
    CHECK(w.first == 1);
    CHECK(w.mass.size() == 3);
  }

  TEST_CASE("window budget") {
    CHECK_THROWS_AS(sum_law(LatticePmf(0.0, 1.0, {{0, 0.5}, {Index{1} << 40, 0.5}}), 4), ResourceError);
  }

  TEST_CASE("weighted sums") {
    std::vector<Index> w;
    std::vector<double> q;
    for (Index k = 1; k <= 3; ++k) {
      w.push_back(k);
      q.push_back(1.0 / static_cast<double>(k));
    }
    CHECK(weighted_sum_law(w, q).base.mass(3) == doctest::Approx(1.0 / 3.0));
    CHECK(weighted_sum_law({1, 2}, {1.0, 0.5}).base.mass(1) == doctest::Approx(0.5));
    const SumLawTable zero = weighted_sum_law({1, 2, 3}, {0.0, 0.0, 0.0});
    CHECK(zero.base.size() == 1);
    CHECK(zero.base.mass(0) == 1.0);
    // Unit weights with a common probability reproduce the binomial sum law.
    const SumLawTable unit = weighted_sum_law(std::vector<Index>(9, 1), std::vector<double>(9, 0.4));
    const SumLawTable bin = sum_law(LatticePmf::bernoulli(0.4), 9);
    for (Index k = 0; k <= 9; ++k) CHECK(unit.base.mass(k) == doctest::Approx(bin.base.mass(k)).epsilon(1e-12));
  }

  TEST_CASE("joint law of partial sums") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    const JointCell j12 = joint_law(b, 1, 2);
    CHECK(j12.at(1, 2) == doctest::Approx(0.25));
    CHECK(j12.at(0, 2) == 0.0);
    const JointCell j24 = joint_law(b, 2, 4);
    // Independent increments: P(S_2 = 1) P(S_4 - S_2 = 1) = (1/2)(1/2).
    CHECK(j24.at(1, 2) == doctest::Approx(0.25));
    CHECK(j24.at(2, 3) == doctest::Approx(0.25 * 0.5));
    const LatticePmf p(0.0, 1.0, {{-1, 0.3}, {0, 0.1}, {2, 0.6}});
    const JointCell j = joint_law(p, 3, 5);
    const auto rows = j.row_marginal();
    const auto cols = j.col_marginal();
    const SumLawTable s3 = sum_law(p, 3), s5 = sum_law(p, 5);
    for (Index a = 0; a < j.rows; ++a) CHECK(rows[a] == doctest::Approx(s3.base.mass(j.a_lo + a)).epsilon(1e-10));
    for (Index b2 = 0; b2 < j.cols; ++b2) CHECK(cols[b2] == doctest::Approx(s5.base.mass(j.b_lo + b2)).epsilon(1e-10));
    CHECK_THROWS_AS(joint_law(p, 5, 3), PreconditionError);
  }

  TEST_CASE("sup cdf distance") {
    const SumLawTable b100 = sum_law(LatticePmf::bernoulli(0.5), 100);
    const double d = sup_cdf_distance(b100);
    CHECK(d > 0.0);
    CHECK(d < 0.08);
    CHECK(sup_cdf_distance(LatticePmf::bernoulli(0.5), 0.0, 1.0) == doctest::Approx(0.5));
    CHECK(sup_cdf_distance(b100.base, b100.base) == 0.0);
    CHECK_THROWS_AS(sup_cdf_distance(sum_law(LatticePmf::point_mass(1.0), 3)), DegenerateError);
  }

  TEST_CASE("csv export is deterministic") {
    const SumLawTable t = sum_law(LatticePmf::uniform(0, 2), 3);
    std::ostringstream a, b;
    write_csv(a, t);
    write_csv(b, t);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("k,value_point,mass") != std::string::npos);
  }
}
