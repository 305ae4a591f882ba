#include "lltlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "lltlab/asllt.hpp"
#include "lltlab/bernoulli_part.hpp"
#include "lltlab/characteristics.hpp"
#include "lltlab/dickman.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/llt.hpp"
#include "lltlab/parallel.hpp"
#include "lltlab/poisson.hpp"
#include "lltlab/stable.hpp"

namespace lltlab {

namespace {

// Master seeds, fixed once; every randomized check draws from its own stream.
constexpr std::uint64_t kPmfSeed = 20240611;
constexpr std::uint64_t kMcSeed = 1;

// Pinned tolerances.
constexpr double kIdentityTol = 1e-10;
constexpr double kInequalitySlack = 1e-12;
constexpr double kGrowthTol = 1.01;
constexpr double kLeCamExample = 0.0163;
constexpr double kLeCamExampleTol = 5e-5;
constexpr double kLeCamExampleBound = 0.04;
constexpr double kGnedenkoSpan1 = 0.05;
constexpr double kGnedenkoSublattice = 0.2;
constexpr double kAudTol = 1e-4;
constexpr double kDickmanRho2Tol = 1e-8;
constexpr double kDickmanIntegralTol = 1e-4;
constexpr double kDickmanLltFinal = 0.01;
constexpr double kExpectationTol = 0.05;
constexpr double kMedianTol = 0.25;
constexpr double kShapeRatio = 3.0;
constexpr double kStableMassTol = 1e-4;

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

/// Collects sub-check outcomes into one criterion line.
struct Tally {
  bool pass = true;
  std::ostringstream detail;
  void item(bool ok, const std::string& text) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << text << (ok ? "" : " [violated]");
  }
};

template <class F>
CriterionResult timed(int id, std::string name, F body) {
  const auto t0 = Clock::now();
  Tally t;
  try {
    body(t);
  } catch (const std::exception& e) {
    t.item(false, std::string("exception: ") + e.what());
  }
  return {id, std::move(name), t.pass, t.detail.str(), std::chrono::duration<double>(Clock::now() - t0).count()};
}

double law_tv(const LatticePmf& a, const LatticePmf& b) { return 0.5 * variation_distance(a, b); }

std::vector<double> random_probs(CounterRng& rng, std::size_t count, double p_max) {
  std::vector<double> p(count);
  for (double& x : p) x = p_max * (0.01 + 0.99 * rng.uniform());
  return p;
}

double poisson_mass(double lambda, Index y) {
  return std::exp(-lambda + static_cast<double>(y) * std::log(lambda) - std::lgamma(static_cast<double>(y) + 1.0));
}

// 1. Exact identities on randomized pmfs.
void exact_identities(Tally& t) {
  constexpr int kCases = 60;
  CounterRng rng(kPmfSeed, 1);
  double err_delta = 0.0, err_rec = 0.0, err_sum = 0.0, err_var = 0.0, err_mean = 0.0, err_coupling = 0.0;
  for (int c = 0; c < kCases; ++c) {
    const LatticePmf p = random_span1_pmf(rng);
    err_delta = std::max(err_delta, std::abs(delta_char(p) - 2.0 * (1.0 - theta_char(p))));
    const Decomposition full = decompose(p);
    for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const Decomposition d = decompose(p, frac * full.theta_max);
      err_rec = std::max(err_rec, law_tv(reconstruct(d), p));
    }
    for (Index n = 1; n <= 8; ++n) {
      err_sum = std::max(err_sum, law_tv(exact_decomposed_sum_law(full, n), sum_law(p, n).base));
      const MomentSummary ms = moments(p);
      const MomentSummary mp = moments(exact_Sprime_law(full, n).base);
      const double nd = static_cast<double>(n);
      err_mean = std::max(err_mean, std::abs(mp.mean() - nd * ms.mean()));
      err_var = std::max(err_var, std::abs(mp.variance() - (nd * ms.variance() - nd * full.theta / 4.0)));
    }
    const std::vector<double> probs = random_probs(rng, 1 + static_cast<std::size_t>(rng.uniform() * 10), 0.5);
    const CouplingTable table = coupling(probs);
    for (const CouplingRow& row : table.rows) {
      err_coupling = std::max(err_coupling, std::abs(row.marginal_x(1) - row.p));
      err_coupling = std::max(err_coupling, std::abs(row.marginal_x(0) - (1.0 - row.p)));
      for (Index y = 0; y < static_cast<Index>(row.x0y.size()) + 2; ++y)
        err_coupling = std::max(err_coupling, std::abs(row.marginal_y(y) - poisson_mass(row.p, y)));
    }
  }
  t.item(err_delta <= kIdentityTol, "delta=2(1-theta) max err " + fmt(err_delta));
  t.item(err_rec <= kIdentityTol, "reconstruction TV " + fmt(err_rec));
  t.item(err_sum <= kIdentityTol, "W_n+D M_n = S_n (n<=8) TV " + fmt(err_sum));
  t.item(err_mean <= kIdentityTol, "E S'_n err " + fmt(err_mean));
  t.item(err_var <= kIdentityTol, "Var S'_n err " + fmt(err_var));
  t.item(err_coupling <= kIdentityTol, "coupling marginals err " + fmt(err_coupling));
  t.item(true, std::to_string(kCases) + " pmfs");
}

// 2. De Moivre bound on a 100-point admissible grid.
void demoivre_grid(Tally& t) {
  int points = 0, violations = 0;
  double worst = 0.0;
  // n is a multiple of 20, so k = np is admissible for every p below.
  for (Index n : {20, 40, 60, 100, 200, 500, 1000, 2000, 5000, 10000}) {
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      for (auto [gamma, u] : {std::pair{0.25, 0.9}, std::pair{0.75, -0.9}}) {
        const double nd = static_cast<double>(n);
        const double npq = nd * p * (1.0 - p);
        Index k = std::llround(nd * p + u * gamma * npq);
        const Index center = std::llround(nd * p);
        while (k != center && std::abs(static_cast<double>(k) - nd * p) > gamma * npq) k += (k > center) ? -1 : 1;
        const DeMoivreRecord r = demoivre_bound(n, p, k, gamma);
        ++points;
        if (std::abs(r.E) > r.bound) ++violations;
        worst = std::max(worst, std::abs(r.E) / r.bound);
      }
    }
  }
  t.item(points == 100, std::to_string(points) + " grid points");
  t.item(violations == 0, std::to_string(violations) + " violations, max |E|/bound " + fmt(worst));
}

std::vector<std::pair<Index, double>> bernoulli_scaled_errors() {
  const LatticePmf b = LatticePmf::bernoulli(0.5);
  std::vector<std::pair<Index, double>> out;
  for (Index n = 16; n <= 4096; n *= 2)
    out.emplace_back(n, std::pow(static_cast<double>(n), 1.5) * llt_sup_error(b, n));
  return out;
}

// 3. n^{3/2} scaling for the fair coin.
void bernoulli_scaling(Tally& t) {
  const auto rows = bernoulli_scaled_errors();
  double c0 = 0.0;
  std::ostringstream s;
  for (const auto& [n, v] : rows) {
    c0 = std::max(c0, v);
    s << n << ":" << fmt(v) << " ";
  }
  const std::size_t last = rows.size() - 1;
  const double g1 = rows[last].second / rows[last - 1].second;
  const double g2 = rows[last - 1].second / rows[last - 2].second;
  t.item(std::isfinite(c0), "C(n) " + s.str());
  t.item(g1 < kGrowthTol && g2 < kGrowthTol, "growth over last doublings " + fmt(g2) + ", " + fmt(g1));
  t.item(true, "C0_emp=" + fmt(c0) + " C0=" + fmt(1.5 * c0));
}

// 4. Characteristic inequalities.
void inequality_web(Tally& t) {
  constexpr int kCases = 100;
  CounterRng rng(kPmfSeed, 4);
  int checks = 0, violations = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++violations;
  };
  const std::vector<double> ds{0.05, 0.1, 0.2, 0.25, 1.0 / 3.0, 0.45, 0.5};
  std::vector<double> ts;
  for (int i = 1; i <= 64; ++i) ts.push_back(std::numbers::pi * i / 64.0);
  LatticePmf prev = LatticePmf::bernoulli(0.5);
  for (int c = 0; c < kCases; ++c) {
    const LatticePmf p = random_span1_pmf(rng);
    const double theta = theta_char(p);
    const double delta = delta_char(p);
    check(moments(p).variance() >= theta / 4.0 - kInequalitySlack);
    for (double d : ds) check(mukhin_D(p, d) >= d * d / 4.0 * theta - kInequalitySlack);
    for (Index h : {2, 3, 4, 5}) {
      const double nu = nu_char(p, h);
      const double D = mukhin_D(p, 1.0 / static_cast<double>(h));
      const double hd = static_cast<double>(h);
      check(nu / (2.0 * hd * hd * hd) <= D + kInequalitySlack && D <= nu / 4.0 + kInequalitySlack);
    }
    for (double tt : ts) {
      const double H = mukhin_H(p, tt / (2.0 * std::numbers::pi));
      const double phi = std::abs(char_fn(p, tt));
      check(1.0 - 2.0 * std::numbers::pi * std::numbers::pi * H <= phi + kInequalitySlack);
      check(phi <= 1.0 - 4.0 * H + kInequalitySlack);
      check(phi <= delta / (2.0 * std::abs(std::sin(tt / 2.0))) + kInequalitySlack);
    }
    const LatticePmf both = sum_law_of({p, prev}).base;
    check(delta_char(both) <= std::min(delta, delta_char(prev)) + kInequalitySlack);
    prev = p;
  }
  t.item(violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " checks on " +
                              std::to_string(kCases) + " pmfs");
}

// 5. Effective-rate sandwich and its Gaussian-error corollary.
void effective_sandwich(Tally& t) {
  const double C0 = effective_C0();
  const std::vector<std::pair<std::string, LatticePmf>> laws{
      {"bernoulli(1/2)", LatticePmf::bernoulli(0.5)}, {"{0:.3,1:.4,2:.3}", LatticePmf(0.0, 1.0, {{0, 0.3}, {1, 0.4}, {2, 0.3}})}};
  for (const auto& [name, p] : laws) {
    const Decomposition d = decompose(p);
    for (Index n : {64, 256, 1024}) {
      const double Theta = static_cast<double>(n) * d.theta;
      const double hn = ger2_h(Theta);
      const EffectiveRateInput inp = effective_input(d, n, hn < 1.0 ? hn : 0.5, C0);
      const Ger2Record g2 = ger2_bound(inp);
      const double window = std::sqrt(Theta / (14.0 * std::log(Theta)));
      const SumLawTable law = sum_law(p, n);
      int points = 0, outside = 0, dominated = 0, g2_points = 0;
      double worst = 0.0;
      for (Index k = law.base.min_index(); k <= law.base.max_index(); ++k) {
        const double x = law.base.value(k);
        const double dev2 = (x - inp.ESn) * (x - inp.ESn);
        if (dev2 / inp.VarSn > window) continue;
        ++points;
        const double exact = law.base.mass(k);
        const SandwichBounds b = effective_bounds(inp, x);
        if (exact < b.lower || exact > b.upper) ++outside;
        if (g2.applicable) {
          ++g2_points;
          const double g = inp.D / std::sqrt(2.0 * std::numbers::pi * inp.VarSn) * std::exp(-dev2 / (2.0 * inp.VarSn));
          const double err = std::abs(exact - g);
          worst = std::max(worst, err / g2.bound);
          if (err > g2.bound) ++dominated;
        }
      }
      std::ostringstream s;
      s << name << " n=" << n << ": " << points << " pts, " << outside << " outside";
      if (g2.applicable)
        s << ", corollary " << dominated << " exceed (max err/bound " << fmt(worst) << ")";
      else
        s << ", corollary not applicable (log Theta/Theta > 1/14)";
      t.item(points > 0 && outside == 0 && dominated == 0, s.str());
    }
  }
}

// 6. Le Cam and Franken bounds.
void poisson_bounds(Tally& t) {
  const IntLaw bin = poisson_binomial_law({0.1, 0.1});
  const IntLaw poi = poisson_law(0.2);
  const double tv = tv_distance(bin, poi);
  const LeCamRecord ex = lecam_check({0.1, 0.1});
  t.item(std::abs(tv - kLeCamExample) <= kLeCamExampleTol, "Bin(2,0.1) vs Poisson(0.2) TV " + fmt(tv));
  t.item(ex.full_sum <= kLeCamExampleBound && ex.holds(), "full sum " + fmt(ex.full_sum) + " <= 0.04");
  CounterRng rng(kPmfSeed, 6);
  int violations = 0;
  for (int c = 0; c < 25; ++c) {
    const auto probs = random_probs(rng, 1 + static_cast<std::size_t>(rng.uniform() * 30), 0.4);
    if (!lecam_check(probs).holds()) ++violations;
  }
  for (int c = 0; c < 25; ++c) {
    std::vector<IntLaw> laws;
    const auto count = 1 + static_cast<std::size_t>(rng.uniform() * 20);
    for (std::size_t i = 0; i < count; ++i) {
      const double a = 0.2 * rng.uniform(), b = 0.05 * rng.uniform();
      laws.push_back({1.0 - a - b, a, b});
    }
    if (!franken_check(laws).holds()) ++violations;
  }
  t.item(violations == 0, std::to_string(violations) + " violations in 50 randomized cases");
}

// 7. Gamkrelidze lower bound.
void gamkrelidze_grid(Tally& t) {
  int checks = 0, violations = 0;
  for (double p : {0.5, 0.2}) {
    const LatticePmf b = LatticePmf::bernoulli(p);
    for (Index n = 4; n <= 256; n *= 2)
      for (Index k = 1; k <= 16; ++k) {
        ++checks;
        if (!gamkrelidze_lower_check(b, n, k).holds()) ++violations;
      }
  }
  t.item(violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " checks");
}

// 8. Span-1 convergence against sub-lattice failure.
void gnedenko(Tally& t) {
  CounterRng rng(kPmfSeed, 8);
  double worst_delta = 0.0, worst_aud = 0.0;
  for (int c = 0; c < 10; ++c) {
    const LatticePmf p = random_span1_pmf(rng, 6);
    worst_delta = std::max(worst_delta, delta_n(p, 2048).value);
    for (Index h : {2, 3, 5}) {
      const AudRecord a = aud_diagnostics(p, 2048, h);
      for (double r : a.residues) worst_aud = std::max(worst_aud, std::abs(r - 1.0 / static_cast<double>(h)));
    }
  }
  t.item(worst_delta < kGnedenkoSpan1, "span-1 max Delta_2048 " + fmt(worst_delta));
  t.item(worst_aud < kAudTol, "max residue gap " + fmt(worst_aud));
  double min_sub = 1.0;
  for (int c = 0; c < 3; ++c) {
    const double a = 0.2 + 0.6 * rng.uniform();
    const LatticePmf p(0.0, 1.0, {{0, a * 0.5}, {2, 1.0 - a}, {4, a * 0.5}});
    for (Index n = 16; n <= 2048; n *= 2) min_sub = std::min(min_sub, delta_n(p, n).value);
  }
  t.item(min_sub > kGnedenkoSublattice, "sub-lattice min Delta_n over n=16..2048 " + fmt(min_sub));
}

// 9. Dickman function and LLTs.
void dickman(Tally& t) {
  const DickmanRho rho;
  const double e2 = std::abs(rho(2.0) - (1.0 - std::log(2.0)));
  const double ei = std::abs(rho.integral() - std::exp(kEulerGamma));
  t.item(e2 <= kDickmanRho2Tol, "|rho(2)-(1-ln2)| " + fmt(e2));
  t.item(ei <= kDickmanIntegralTol, "|int rho - e^gamma| " + fmt(ei));
  std::vector<double> errs;
  for (Index n : {250, 500, 1000, 2000}) errs.push_back(dickman_llt_check(n, 1.0, rho).error);
  bool dec = true;
  for (std::size_t i = 1; i < errs.size(); ++i) dec = dec && errs[i] < errs[i - 1];
  t.item(dec && errs.back() < kDickmanLltFinal,
         "LLT errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]) + ", " + fmt(errs[3]));
  std::vector<double> s;
  for (Index n : {100, 400, 1600}) s.push_back(dickman_strong_llt(n, rho));
  t.item(s[1] < s[0] && s[2] < s[1], "strong sums " + fmt(s[0]) + ", " + fmt(s[1]) + ", " + fmt(s[2]));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Relative median error per checkpoint; passes when strictly shrinking and the last is below the bound.
void median_check(Tally& t, const std::string& kind, const std::vector<PathEstimate>& paths, double target) {
  std::vector<double> errs;
  for (std::size_t i = 0; i < paths.front().checkpoints.size(); ++i) {
    std::vector<double> v;
    for (const PathEstimate& p : paths) v.push_back(p.checkpoints[i].second);
    errs.push_back(std::abs(median(v) - target) / target);
  }
  bool dec = true;
  for (std::size_t i = 1; i < errs.size(); ++i) dec = dec && errs[i] < errs[i - 1];
  t.item(dec && errs.back() < kMedianTol,
         kind + " MC median rel err " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]));
}

// 10. ASLLT expectations and Monte Carlo medians.
void asllt(Tally& t) {
  const LatticePmf coin = LatticePmf::bernoulli(0.5);
  const LatticePmf lazy(0.0, 1.0, {{-1, 0.25}, {0, 0.5}, {1, 0.25}});
  const TwoStateChain chain(0.3, 0.2);
  const KappaRule rule{};
  const DickmanRho rho;
  const double t1_target = asllt_target(coin, rule);
  const double markov_target = normal_pdf(rule.kappa);
  const double dickman_target = std::exp(-kEulerGamma) * rho(1.0);

  auto rel = [](double v, double target) { return std::abs(v - target) / target; };
  const double e_t1 = asllt_expectation(coin, rule, {10000}).back().second;
  t.item(rel(e_t1, t1_target) < kExpectationTol, "t1 E at 1e4 " + fmt(e_t1) + " vs " + fmt(t1_target));
  const double e_mk = markov_asllt_expectation(chain, rule, {10000}).back().second;
  t.item(rel(e_mk, markov_target) < kExpectationTol, "Markov E at 1e4 " + fmt(e_mk) + " vs " + fmt(markov_target));
  const double e_dk = asllt_dickman_expectation(1.0, {10000}).back().second;
  t.item(rel(e_dk, dickman_target) < kExpectationTol, "Dickman E at 1e4 " + fmt(e_dk) + " vs " + fmt(dickman_target));
  const auto ce = chung_erdos_expectation(lazy, 0, {100, 1000, 10000});
  t.item(std::abs(ce[2].second - 1.0) < std::abs(ce[1].second - 1.0) &&
             std::abs(ce[1].second - 1.0) < std::abs(ce[0].second - 1.0),
         "CE E " + fmt(ce[0].second) + ", " + fmt(ce[1].second) + ", " + fmt(ce[2].second) + " toward 1");

  constexpr std::size_t kPaths = 20;
  const std::vector<Index> cps{1000, 10000, 100000};
  std::vector<PathEstimate> t1(kPaths), mk(kPaths), dk(kPaths);
  parallel_for(kPaths, [&](std::size_t i) {
    t1[i] = asllt_path(coin, rule, cps, kMcSeed, i);
    mk[i] = markov_asllt_path(chain, rule, cps, kMcSeed, i);
    dk[i] = asllt_dickman_path(1.0, cps, rho, kMcSeed, i);
  });
  const std::vector<PathEstimate> cep = chung_erdos_paths(lazy, 0, cps, kMcSeed, 0, kPaths);
  median_check(t, "t1", t1, t1_target);
  median_check(t, "CE", cep, 1.0);
  median_check(t, "Markov", mk, markov_target);
  median_check(t, "Dickman", dk, dickman_target);
}

// 11. Covariance shapes.
void covariance_shape(Tally& t) {
  const LatticePmf coin = LatticePmf::bernoulli(0.5);
  const KappaRule rule{};
  std::vector<double> c_bracket, c_shape;
  for (Index n = 16; n <= 512; n *= 2)
    for (Index m : {n / 2, n / 4}) {
      const CovarianceRecord r = covariance_check(coin, m, n, rule);
      c_bracket.push_back(r.lhs / r.bracket);
      c_shape.push_back(r.lhs / r.shape);
    }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0.0 ? *hi / *lo : INFINITY;
  };
  const double sb = spread(c_bracket), ss = spread(c_shape);
  t.item(std::isfinite(sb) && sb < kShapeRatio, "pairwise-bracket max/min C " + fmt(sb));
  t.item(std::isfinite(ss) && ss < kShapeRatio, "sqrt(m/n) max/min C " + fmt(ss));
}

// 12. Stable branch.
void stable(Tally& t) {
  const StableDensity g(StableParams{0.5, 1.0, true});
  const double mass = stable_mass(g);
  t.item(std::abs(mass - 1.0) <= kStableMassTol, "density mass " + fmt(mass));
  const StableTable table = default_table(g);
  const PowerTailFamily family{0.5, 1.0};
  std::vector<double> sup;
  for (Index n : {8, 16, 32, 64}) sup.push_back(stable_llt_error(family, n, 16.0, &table).report.error);
  bool dec = true;
  for (std::size_t i = 1; i < sup.size(); ++i) dec = dec && sup[i] < sup[i - 1];
  t.item(dec, "sup errors n=8..64 " + fmt(sup[0]) + ", " + fmt(sup[1]) + ", " + fmt(sup[2]) + ", " + fmt(sup[3]));
  const PowerTailFamily heavy{1.5, 1.0};
  std::vector<double> gap;
  std::ostringstream s;
  for (Index m : {100, 200, 400, 800, 1600}) {
    const double r = doney_ratio(heavy, 32, m);
    gap.push_back(std::abs(r - 1.0));
    s << m << ":" << fmt(r) << " ";
  }
  bool toward = true;
  for (std::size_t i = 1; i < gap.size(); ++i) toward = toward && gap[i] < gap[i - 1];
  t.item(toward, "Doney ratio alpha=1.5 n=32 " + s.str());
}

}  // namespace

LatticePmf random_span1_pmf(CounterRng& rng, Index max_width) {
  const Index width = 2 + static_cast<Index>(rng.uniform() * static_cast<double>(max_width - 1));
  std::vector<Atom> atoms;
  for (Index k = 0; k < width; ++k) {
    const bool keep = k < 2 || k == width - 1 || rng.uniform() < 0.75;
    if (keep) atoms.push_back({k, 0.05 + rng.uniform()});
  }
  double total = 0.0;
  for (const Atom& a : atoms) total += a.mass;
  for (Atom& a : atoms) a.mass /= total;
  return LatticePmf(0.0, 1.0, std::move(atoms));
}

double measured_C0_empirical() {
  double c0 = 0.0;
  for (const auto& [n, v] : bernoulli_scaled_errors()) c0 = std::max(c0, v);
  return c0;
}

double effective_C0() {
  static const double c0 = 1.5 * measured_C0_empirical();
  return c0;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only) {
  using Body = void (*)(Tally&);
  const std::vector<std::tuple<int, const char*, Body>> all{
      {1, "exact-identity suite", exact_identities},
      {2, "De Moivre bound", demoivre_grid},
      {3, "Bernoulli n^{3/2} scaling", bernoulli_scaling},
      {4, "inequality web", inequality_web},
      {5, "effective-rate sandwich", effective_sandwich},
      {6, "Le Cam / Franken", poisson_bounds},
      {7, "Gamkrelidze lower bound", gamkrelidze_grid},
      {8, "Gnedenko dichotomy", gnedenko},
      {9, "Dickman", dickman},
      {10, "ASLLT expectation and MC", asllt},
      {11, "covariance shape", covariance_shape},
      {12, "stable branch", stable},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, name, body] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(timed(id, name, body));
  }
  return out;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    out << (r.pass ? "[PASS] " : "[FAIL] ") << "#" << r.id << " " << r.name << ": " << r.detail << " ("
        << std::fixed << std::setprecision(1) << r.seconds << " s)" << std::defaultfloat << "\n";
}

}  // namespace lltlab
