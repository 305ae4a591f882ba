#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "../oracles.hpp"
#include "lltlab/bernoulli_part.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/llt.hpp"
#include "lltlab/verify.hpp"

using namespace lltlab;

TEST_SUITE("bernoulli_part") {
  TEST_CASE("fair coin decomposition") {
    const Decomposition d = decompose(LatticePmf::bernoulli(0.5), 0.5);
    CHECK(d.tau_at(0) == doctest::Approx(0.5));
    CHECK(d.joint(0, 1) == doctest::Approx(0.5));
    CHECK(d.joint(0, 0) == doctest::Approx(0.25));
    CHECK(d.joint(1, 0) == doctest::Approx(0.25));
    CHECK(d.joint(1, 1) == 0.0);
    const LatticePmf r = reconstruct(d);
    CHECK(r.mass(0) == doctest::Approx(0.5));
    CHECK(r.mass(1) == doctest::Approx(0.5));
  }

  TEST_CASE("no Bernoulli component") {
    CHECK_THROWS_WITH_AS(decompose(LatticePmf(0.0, 1.0, {{0, 0.5}, {2, 0.5}})), "no Bernoulli component",
                         PreconditionError);
    CHECK_THROWS_AS(decompose(LatticePmf::bernoulli(0.5), 0.7), PreconditionError);
  }

  TEST_CASE("sampling") {
    const LatticePmf p(0.0, 1.0, {{0, 0.3}, {1, 0.4}, {2, 0.3}});
    const Decomposition d = decompose(p);
    CounterRng rng(5, 0);
    const DecomposedSample zero = sample_decomposed_sum(d, 0, rng);
    CHECK(zero.w_index == 0);
    CHECK(zero.b_count == 0);
    CHECK(zero.m_count == 0);
    std::map<Index, double> freq;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
      const DecomposedSample s = sample_decomposed_sum(d, 5, rng);
      CHECK(s.m_count <= s.b_count);
      freq[s.w_index + s.m_count] += 1.0 / kDraws;
    }
    const SumLawTable exact = sum_law(p, 5);
    double tv = 0.0;
    for (Index k = 0; k <= 10; ++k) tv += 0.5 * std::abs(freq[k] - exact.base.mass(k));
    CHECK(tv < 0.01);
  }

  TEST_CASE("S' moments") {
    const LatticePmf p(0.0, 1.0, {{0, 0.3}, {1, 0.4}, {2, 0.3}});
    const Decomposition d = decompose(p);
    for (Index n : {1, 6, 40}) {
      const MomentSummary m = moments(exact_Sprime_law(d, n).base);
      const double nd = static_cast<double>(n);
      CHECK(m.mean() == doctest::Approx(nd * 1.0));
      CHECK(m.variance() == doctest::Approx(nd * 0.6 - nd * 0.6 / 4.0));
    }
  }

  TEST_CASE("rho exact and bound") {
    const std::vector<double> th(40, 0.5);
    const double h = 0.3;
    double ref = 0.0;
    for (int b = 0; b <= 40; ++b)
      if (std::abs(b - 20.0) > h * 20.0) ref += oracle::binomial(40, b, 0.5);
    CHECK(rho_exact(h, th) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(rho_exact(h, th) <= rho_bound(h, 20.0));
  }

  TEST_CASE("Chernoff tails on random cases") {
    CounterRng rng(6, 0);
    for (int c = 0; c < 20; ++c) {
      std::vector<double> probs(5 + static_cast<std::size_t>(rng.uniform() * 60));
      for (double& q : probs) q = rng.uniform();
      for (double eps : {0.1, 0.3, 0.8}) CHECK(chernoff_check(probs, eps).holds());
    }
  }

  TEST_CASE("bounds collapse to the Gaussian term") {
    EffectiveRateInput inp;
    inp.n = 100;
    inp.VarSn = 25.0;
    inp.ESn = 50.0;
    inp.Theta = 1e30;
    inp.h = 0.0;
    inp.H = 0.0;
    inp.rho = 0.0;
    inp.C0 = 0.3;
    for (double k : {50.0, 53.0, 41.0}) {
      const SandwichBounds b = effective_bounds(inp, k);
      const double g = gaussian_local_term(k, 50.0, 25.0, 1.0);
      CHECK(b.upper == doctest::Approx(g).epsilon(1e-12));
      CHECK(b.lower == doctest::Approx(g).epsilon(1e-12));
    }
  }

  TEST_CASE("sandwich near the mean") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    const Decomposition d = decompose(b);
    for (Index n : {64, 256}) {
      const EffectiveRateInput inp = effective_input(d, n, ger2_h(n * 0.5), effective_C0());
      const SumLawTable law = sum_law(b, n);
      for (Index k = n / 2 - 3; k <= n / 2 + 3; ++k) {
        const SandwichBounds s = effective_bounds(inp, static_cast<double>(k));
        CHECK(law.base.mass(k) >= s.lower);
        CHECK(law.base.mass(k) <= s.upper);
      }
    }
  }

  TEST_CASE("sandwich width shrinks") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    const Decomposition d = decompose(b);
    double prev = INFINITY;
    for (Index n = 256; n <= 4096; n *= 2) {
      const EffectiveRateInput inp = effective_input(d, n, ger2_h(n * 0.5), effective_C0());
      const SandwichBounds s = effective_bounds(inp, inp.ESn);
      const double width = (s.upper - s.lower) * std::sqrt(static_cast<double>(n));
      CHECK(width < prev);
      prev = width;
    }
  }

  TEST_CASE("transfer formula") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    for (Index n : {4, 16, 64}) {
      const SumLawTable law = sum_law(b, n);
      const double sd = std::sqrt(n * 0.25);
      // Standardized sum on the lattice -n/(2 sd) + Z / sd.
      std::vector<Atom> atoms(law.base.atoms().begin(), law.base.atoms().end());
      const LatticePmf y(-static_cast<double>(n) / (2.0 * sd), 1.0 / sd, atoms);
      for (double a : {0.1, 1.0, 5.0})
        for (double bb : {-1.0, 0.0, 0.7, 2.0}) CHECK(transfer_formula_check(a, bb, y) >= 0.0);
    }
    // Y = 0: the expectation is 1.
    const LatticePmf pt = LatticePmf::point_mass(0.0);
    CHECK(transfer_formula_lhs(1.0, 0.0, pt) == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)));
  }
}
