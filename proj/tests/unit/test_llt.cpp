#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/llt.hpp"

using namespace lltlab;

TEST_SUITE("llt") {
  TEST_CASE("gaussian local term") {
    CHECK(gaussian_local_term(3.0, 3.0, 4.0, 1.0) == doctest::Approx(1.0 / std::sqrt(8.0 * std::numbers::pi)));
    CHECK(gaussian_local_term(5.0, 5.0, 2.5, 1.0) == doctest::Approx(0.252313).epsilon(1e-6));
    CHECK(gaussian_local_term(7.5, 5.0, 3.0, 2.0) == doctest::Approx(gaussian_local_term(2.5, 5.0, 3.0, 2.0)));
    CHECK_THROWS_AS(gaussian_local_term(0.0, 0.0, 0.0, 1.0), PreconditionError);
  }

  TEST_CASE("Delta_n against the binomial oracle") {
    for (int n : {10, 33, 128}) {
      const double B = std::sqrt(n * 0.25);
      double ref = 0.0;
      for (int k = -1; k <= n + 1; ++k) {
        const double exact = (k < 0 || k > n) ? 0.0 : oracle::binomial(n, k, 0.5);
        const double g = std::exp(-(k - n / 2.0) * (k - n / 2.0) / (2.0 * B * B)) / std::sqrt(2.0 * std::numbers::pi);
        ref = std::max(ref, std::abs(B * exact - g));
      }
      CHECK(delta_n(LatticePmf::bernoulli(0.5), n).value == doctest::Approx(ref).epsilon(1e-10));
      CHECK(llt_sup_error(LatticePmf::bernoulli(0.5), n) == doctest::Approx(ref / B).epsilon(1e-10));
    }
  }

  TEST_CASE("De Moivre bound") {
    const DeMoivreRecord r = demoivre_bound(100, 0.5, 50, 0.5);
    CHECK(r.bound == doctest::Approx(0.01));
    CHECK(r.exact == doctest::Approx(oracle::binomial(100, 50, 0.5)).epsilon(1e-12));
    CHECK(r.exact == doctest::Approx(0.0795892).epsilon(1e-6));
    CHECK(r.gaussian == doctest::Approx(0.0797885).epsilon(1e-6));
    CHECK(std::abs(r.E) == doctest::Approx(0.0025).epsilon(0.01));
    CHECK(std::abs(r.E) <= r.bound);
    const DeMoivreRecord z = demoivre_bound(40, 0.25, 10, 0.3);
    CHECK(z.bound == doctest::Approx(1.0 / (4.0 * 40 * 0.25 * 0.7)));
    CHECK_THROWS_WITH_AS(demoivre_bound(3, 0.1, 0, 0.5), doctest::Contains("n >= max(p/q, q/p)"), PreconditionError);
    CHECK_THROWS_WITH_AS(demoivre_bound(100, 0.5, 70, 0.5), doctest::Contains("|k - np|"), PreconditionError);
  }

  TEST_CASE("Stirling remainder sandwich") {
    for (Index n = 2; n <= 50; ++n) {
      const double e = stirling_remainder(n);
      CHECK(e > 1.0 / (12.0 * n + 1.0));
      CHECK(e < 1.0 / (12.0 * n));
    }
  }

  TEST_CASE("Edgeworth term") {
    // Symmetric law: no correction.
    const LatticePmf sym = LatticePmf::uniform(-2, 2);
    const double s = std::sqrt(2.0 * 10);
    for (double N : {-3.0, 0.0, 4.0})
      CHECK(edgeworth3_term(sym, 10, N) == doctest::Approx(gaussian_local_term(N, 0.0, s * s, 1.0)));
    // Skewed law: correction vanishes at the mean and at y = +-sqrt(3).
    const LatticePmf b = LatticePmf::bernoulli(0.3);
    const Index n = 50;
    const double M = 15.0, B = std::sqrt(50 * 0.21);
    CHECK(edgeworth3_term(b, n, M) == doctest::Approx(gaussian_local_term(M, M, B * B, 1.0)));
    for (double y : {std::sqrt(3.0), -std::sqrt(3.0)})
      CHECK(edgeworth3_term(b, n, M + y * B) == doctest::Approx(gaussian_local_term(M + y * B, M, B * B, 1.0)));
  }

  TEST_CASE("Edgeworth rates for a skewed coin") {
    const LatticePmf b = LatticePmf::bernoulli(0.3);
    double lo_plain = INFINITY, hi_corr = 0.0;
    for (Index n = 64; n <= 1024; n *= 2) {
      const double nd = static_cast<double>(n);
      lo_plain = std::min(lo_plain, std::sqrt(nd) * edgeworth_sup_error(b, n, false));
      hi_corr = std::max(hi_corr, nd * edgeworth_sup_error(b, n, true));
    }
    CHECK(lo_plain > 0.05);
    CHECK(hi_corr < 1.0);
  }

  TEST_CASE("variation distance") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    double prev = INFINITY;
    for (Index n : {16, 64, 256, 1024}) {
      const SumLawTable t = sum_law(b, n);
      const double v = variation_distance(t.base, t.meta.mean(), std::sqrt(t.meta.variance()));
      CHECK(v < prev);
      prev = v;
    }
    // Two atoms at distance 1 from A over B = 1/2: each local term is 2 phi(1).
    const double local = 2.0 * std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi);
    CHECK(variation_distance(b, 0.5, 0.5) == doctest::Approx(2.0 * std::abs(0.5 - local)).epsilon(1e-12));
    CHECK(variation_distance(b, b) == 0.0);
  }

  TEST_CASE("Mukhin criterion") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    double prev = INFINITY;
    for (Index n : {64, 256, 1024}) {
      const double v = mukhin_criterion(b, n).value;
      CHECK(v < prev);
      prev = v;
    }
    const LatticePmf two(0.0, 1.0, {{0, 0.5}, {2, 0.5}});
    for (Index n : {64, 256, 1024}) CHECK(mukhin_criterion(two, n).value > 0.3);
  }

  TEST_CASE("Gamkrelidze lower bound") {
    const LatticePmf b = LatticePmf::bernoulli(0.5);
    CHECK(gamkrelidze_lower_check(b, 64, 8).holds());
    CHECK(gamkrelidze_lower_check(b, 4, 1).holds());
    // Large k: the integral over [2 pi/(2k+1), pi] tends to the full half-period one.
    const GamkrelidzeRecord big = gamkrelidze_lower_check(b, 16, 4000);
    CHECK(big.rhs == doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi) * big.B) + 2.0 * big.lambda / big.B)
                         .epsilon(1e-3));
  }

  TEST_CASE("Azlarov uniform family") {
    // xi_k uniform on {-N_k..N_k} with N_k cycling through 1..4; lambda_n = B_n / max N_k.
    double lo = INFINITY, hi = 0.0;
    for (Index n : {32, 64, 128, 256, 512}) {
      std::vector<LatticePmf> summands;
      double B2 = 0.0;
      Index Nmax = 0;
      for (Index k = 0; k < n; ++k) {
        const Index N = 1 + k % 4;
        summands.push_back(LatticePmf::uniform(-N, N));
        B2 += static_cast<double>(N * (N + 1)) / 3.0;
        Nmax = std::max(Nmax, N);
      }
      const double lambda = std::sqrt(B2) / static_cast<double>(Nmax);
      REQUIRE(lambda >= 2.0);
      const double v = delta_for_law(sum_law_of(summands).base, 0.0, B2).value * lambda;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi < 10.0 * lo);
    CHECK(hi < 1.0);
  }

  TEST_CASE("a.u.d. and Rozanov diagnostics") {
    const LatticePmf two(0.0, 1.0, {{0, 0.3}, {2, 0.7}});
    for (Index n : {1, 5, 40}) CHECK(aud_diagnostics(two, n, 2).residues[0] == doctest::Approx(1.0));
    const AudRecord b = aud_diagnostics(LatticePmf::bernoulli(0.5), 1, 2);
    CHECK(b.dw_products[0] == doctest::Approx(0.0).epsilon(1e-15));
    const AudRecord c = aud_diagnostics(LatticePmf::bernoulli(0.3), 200, 3);
    for (double r : c.residues) CHECK(r == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    const std::vector<double> q = residue_law(LatticePmf::uniform(-4, 1), 3);
    for (double r : q) CHECK(r == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("report csv") {
    std::ostringstream out;
    write_csv(out, {make_report(4, "delta_n", 0.3, 0.25, "B_n")}, "sup |B P - g|");
    CHECK(out.str().find("n,metric,exact,approx,error,normalization") != std::string::npos);
  }
}
