#include "lltlab/asllt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/rng.hpp"

namespace lltlab {

void write_csv(std::ostream& out, const std::vector<PathEstimate>& paths) {
  out << "# metric: logarithmic-average path estimator; "
      << (paths.empty() ? std::string() : "kappa rule " + paths.front().kappa_rule) << '\n';
  out << "kind,seed,N,estimate,target\n";
  out.precision(12);
  for (const PathEstimate& p : paths)
    for (const auto& [N, v] : p.checkpoints)
      out << p.kind << ',' << p.seed << ',' << N << ',' << v << ',' << p.target << '\n';
}

Index KappaRule::index(Index n, double v0, double D, double mu, double sigma) const {
  const double nd = static_cast<double>(n);
  if (custom) {
    const double k_real = (custom(n) - nd * v0) / D;
    const double k = std::nearbyint(k_real);
    if (std::abs(k_real - k) > 1e-9 * std::max(1.0, std::abs(k_real)))
      throw PreconditionError("kappa rule emitted an off-lattice point at n=" + std::to_string(n));
    return static_cast<Index>(k);
  }
  const double target = nd * mu + kappa * sigma * std::sqrt(nd);
  return static_cast<Index>(std::floor((target - nd * v0) / D + 0.5));
}

std::string KappaRule::describe() const {
  if (custom) return "custom";
  std::ostringstream os;
  os << "nearest lattice point to n*mu+" << kappa << "*sigma*sqrt(n)";
  return os.str();
}

std::vector<Index> dyadic_checkpoints(Index N) {
  std::vector<Index> out;
  for (Index c = 4; c < N; c *= 2) out.push_back(c);
  if (N >= 2) out.push_back(N);
  return out;
}

namespace {

void validate_checkpoints(const std::vector<Index>& cps) {
  if (cps.empty()) throw PreconditionError("checkpoints must be nonempty");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 2) throw PreconditionError("estimator undefined for N < 2 (log N = 0)");
    if (i > 0 && cps[i] <= cps[i - 1]) throw PreconditionError("checkpoints must be strictly increasing");
  }
}

class IndexSampler {
 public:
  explicit IndexSampler(const LatticePmf& p) {
    double acc = 0.0;
    for (const Atom& a : p.atoms()) {
      acc += a.mass;
      cdf_.push_back(acc);
      idx_.push_back(a.index);
    }
  }
  Index draw(CounterRng& rng) const {
    const double u = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return idx_[std::min(static_cast<std::size_t>(it - cdf_.begin()), idx_.size() - 1)];
  }

 private:
  std::vector<double> cdf_;
  std::vector<Index> idx_;
};

struct SumContext {
  double v0, D, mu, sigma;
};

SumContext context_of(const LatticePmf& p) {
  const MomentSummary m = moments(p);
  const double sigma = std::sqrt(m.variance());
  if (!(sigma > 0.0)) throw DegenerateError("asllt: degenerate summand law");
  return {p.v0(), p.span(), m.mean(), sigma};
}

}  // namespace

double asllt_target(const LatticePmf& p, const KappaRule& rule) {
  const SumContext c = context_of(p);
  return c.D / (std::sqrt(2.0 * std::numbers::pi) * c.sigma) * std::exp(-rule.kappa * rule.kappa / 2.0);
}

PathEstimate asllt_path(const LatticePmf& p, const KappaRule& rule, const std::vector<Index>& checkpoints,
                        std::uint64_t seed, std::uint64_t path) {
  validate_checkpoints(checkpoints);
  const SumContext c = context_of(p);
  PathEstimate est{"t1", seed, path, asllt_target(p, rule), rule.describe(), {}};
  const IndexSampler sampler(p);
  CounterRng rng(seed, path);
  Index s = 0;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index n = 1; n <= checkpoints.back(); ++n) {
    s += sampler.draw(rng);
    if (s == rule.index(n, c.v0, c.D, c.mu, c.sigma)) sum += 1.0 / std::sqrt(static_cast<double>(n));
    if (n == checkpoints[next]) {
      est.checkpoints.emplace_back(n, sum / std::log(static_cast<double>(n)));
      ++next;
    }
  }
  return est;
}

namespace {

// Edge masses below this are trimmed from the running law; the trimmed total stays below
// N * width * 1e-60 and cannot move any reported digit.
constexpr double kEdgeTrim = 1e-60;

void trim_edges(DenseWindow& w) {
  std::size_t lo = 0, hi = w.mass.size();
  while (lo < hi && w.mass[lo] < kEdgeTrim) ++lo;
  while (hi > lo && w.mass[hi - 1] < kEdgeTrim) --hi;
  if (lo == 0 && hi == w.mass.size()) return;
  w.mass = std::vector<double>(w.mass.begin() + static_cast<std::ptrdiff_t>(lo),
                               w.mass.begin() + static_cast<std::ptrdiff_t>(hi));
  w.first += static_cast<Index>(lo);
}

/// Calls visit(n, law of S_n) for n = 1..N.
template <class Visit>
void walk_sum_laws(const LatticePmf& p, Index N, Visit visit) {
  const DenseWindow base = p.dense();
  DenseWindow acc{0, {1.0}};
  for (Index n = 1; n <= N; ++n) {
    acc = convolve(acc, base, ConvolutionMethod::Sparse);
    trim_edges(acc);
    visit(n, acc);
  }
}

}  // namespace

std::vector<std::pair<Index, double>> asllt_expectation(const LatticePmf& p, const KappaRule& rule,
                                                        const std::vector<Index>& checkpoints) {
  validate_checkpoints(checkpoints);
  const SumContext c = context_of(p);
  std::vector<std::pair<Index, double>> out;
  double sum = 0.0;
  std::size_t next = 0;
  walk_sum_laws(p, checkpoints.back(), [&](Index n, const DenseWindow& law) {
    sum += law.at(rule.index(n, c.v0, c.D, c.mu, c.sigma)) / std::sqrt(static_cast<double>(n));
    if (n == checkpoints[next]) {
      out.emplace_back(n, sum / std::log(static_cast<double>(n)));
      ++next;
    }
  });
  return out;
}

std::vector<double> hitting_masses(const LatticePmf& p, Index a, Index N) {
  std::vector<double> m;
  m.reserve(static_cast<std::size_t>(N));
  walk_sum_laws(p, N, [&](Index, const DenseWindow& law) { m.push_back(law.at(a)); });
  return m;
}

namespace {

std::vector<double> cumulative(const std::vector<double>& m) {
  std::vector<double> M(m.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) M[i] = (acc += m[i]);
  return M;
}

void check_ce_mass(const std::vector<double>& M) {
  if (M.empty() || M.back() < 2.0) throw PreconditionError("insufficient mass, increase N");
}

}  // namespace

namespace {

PathEstimate chung_erdos_walk(const LatticePmf& p, Index a, const std::vector<double>& M,
                              const std::vector<Index>& checkpoints, std::uint64_t seed, std::uint64_t path) {
  PathEstimate est{"CE", seed, path, 1.0, "fixed point a=" + std::to_string(a), {}};
  const IndexSampler sampler(p);
  CounterRng rng(seed, path);
  Index s = 0;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index k = 1; k <= checkpoints.back(); ++k) {
    s += sampler.draw(rng);
    const double Mk = M[static_cast<std::size_t>(k - 1)];
    if (s == a && Mk > 0.0) sum += 1.0 / Mk;
    if (k == checkpoints[next]) {
      if (!(Mk > 1.0)) throw PreconditionError("insufficient mass, increase N");
      est.checkpoints.emplace_back(k, sum / std::log(Mk));
      ++next;
    }
  }
  return est;
}

}  // namespace

PathEstimate chung_erdos_path(const LatticePmf& p, Index a, const std::vector<Index>& checkpoints,
                              std::uint64_t seed, std::uint64_t path) {
  return chung_erdos_paths(p, a, checkpoints, seed, path, 1).front();
}

std::vector<PathEstimate> chung_erdos_paths(const LatticePmf& p, Index a, const std::vector<Index>& checkpoints,
                                            std::uint64_t seed, std::uint64_t first_path, std::uint64_t count) {
  validate_checkpoints(checkpoints);
  if (p.degenerate()) throw DegenerateError("chung_erdos: degenerate summand law");
  const std::vector<double> M = cumulative(hitting_masses(p, a, checkpoints.back()));
  check_ce_mass(M);
  std::vector<PathEstimate> out;
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(chung_erdos_walk(p, a, M, checkpoints, seed, first_path + i));
  return out;
}

std::vector<std::pair<Index, double>> chung_erdos_expectation(const LatticePmf& p, Index a,
                                                              const std::vector<Index>& checkpoints) {
  validate_checkpoints(checkpoints);
  if (p.degenerate()) throw DegenerateError("chung_erdos: degenerate summand law");
  const std::vector<double> m = hitting_masses(p, a, checkpoints.back());
  const std::vector<double> M = cumulative(m);
  check_ce_mass(M);
  std::vector<std::pair<Index, double>> out;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index k = 1; k <= checkpoints.back(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    if (M[i] > 0.0) sum += m[i] / M[i];
    if (k == checkpoints[next]) {
      if (!(M[i] > 1.0)) throw PreconditionError("insufficient mass, increase N");
      out.emplace_back(k, sum / std::log(M[i]));
      ++next;
    }
  }
  return out;
}

TwoStateChain::TwoStateChain(double p12_, double p21_) : p12(p12_), p21(p21_) {
  if (!(p12 > 0.0 && p12 <= 1.0 && p21 > 0.0 && p21 <= 1.0))
    throw PreconditionError("two-state chain: transition probabilities must lie in (0, 1]");
  if (!(std::abs(gamma()) < 1.0)) throw PreconditionError("two-state chain: requires |gamma| < 1");
}

Index markov_kappa_index(const TwoStateChain& chain, const KappaRule& rule, Index nu) {
  // S_nu = -nu pi1 + (visits to state 1): lattice v0 = -pi1, D = 1, mean 0.
  return rule.index(nu, -chain.pi1(), 1.0, 0.0, std::sqrt(chain.sigma2()));
}

PathEstimate markov_asllt_path(const TwoStateChain& chain, const KappaRule& rule,
                               const std::vector<Index>& checkpoints, std::uint64_t seed, std::uint64_t path) {
  validate_checkpoints(checkpoints);
  const double sigma = std::sqrt(chain.sigma2());
  PathEstimate est{"markov", seed, path, normal_pdf(rule.kappa), rule.describe(), {}};
  CounterRng rng(seed, path);
  int state = rng.bernoulli(chain.pi1()) ? 1 : 0;
  Index ones = 0;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index nu = 1; nu <= checkpoints.back(); ++nu) {
    if (nu > 1) state = state ? (rng.bernoulli(chain.p21) ? 0 : 1) : (rng.bernoulli(chain.p12) ? 1 : 0);
    ones += state;
    if (ones == markov_kappa_index(chain, rule, nu)) sum += sigma / std::sqrt(static_cast<double>(nu));
    if (nu == checkpoints[next]) {
      est.checkpoints.emplace_back(nu, sum / std::log(static_cast<double>(nu)));
      ++next;
    }
  }
  return est;
}

namespace {

/// Calls visit(nu, a0, a1) with a_s[c] = P(visits to 1 = c, xi_nu = s).
template <class Visit>
void walk_markov(const TwoStateChain& chain, Index N, Visit visit) {
  std::vector<double> a0(static_cast<std::size_t>(N) + 2, 0.0), a1(a0.size(), 0.0);
  a0[0] = chain.pi0();
  a1[1] = chain.pi1();
  visit(Index{1}, a0, a1);
  const double s00 = 1.0 - chain.p12, s11 = 1.0 - chain.p21;
  for (Index nu = 2; nu <= N; ++nu) {
    for (Index c = nu; c >= 0; --c) {
      const auto i = static_cast<std::size_t>(c);
      const double from0 = a0[i], from1 = a1[i];
      const double into1 = (c >= 1) ? a0[i - 1] * chain.p12 + a1[i - 1] * s11 : 0.0;
      a0[i] = from0 * s00 + from1 * chain.p21;
      a1[i] = into1;
    }
    visit(nu, a0, a1);
  }
}

}  // namespace

std::vector<double> markov_count_law(const TwoStateChain& chain, Index nu) {
  std::vector<double> out;
  walk_markov(chain, nu, [&](Index t, const std::vector<double>& a0, const std::vector<double>& a1) {
    if (t != nu) return;
    out.resize(static_cast<std::size_t>(nu) + 1);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = a0[c] + a1[c];
  });
  return out;
}

std::vector<double> markov_hitting_masses(const TwoStateChain& chain, const KappaRule& rule, Index N) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N));
  walk_markov(chain, N, [&](Index nu, const std::vector<double>& a0, const std::vector<double>& a1) {
    const Index k = markov_kappa_index(chain, rule, nu);
    out.push_back((k < 0 || k > nu) ? 0.0 : a0[static_cast<std::size_t>(k)] + a1[static_cast<std::size_t>(k)]);
  });
  return out;
}

std::vector<std::pair<Index, double>> markov_asllt_expectation(const TwoStateChain& chain, const KappaRule& rule,
                                                               const std::vector<Index>& checkpoints) {
  validate_checkpoints(checkpoints);
  const std::vector<double> m = markov_hitting_masses(chain, rule, checkpoints.back());
  const double sigma = std::sqrt(chain.sigma2());
  std::vector<std::pair<Index, double>> out;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index nu = 1; nu <= checkpoints.back(); ++nu) {
    sum += sigma / std::sqrt(static_cast<double>(nu)) * m[static_cast<std::size_t>(nu - 1)];
    if (nu == checkpoints[next]) {
      out.emplace_back(nu, sum / std::log(static_cast<double>(nu)));
      ++next;
    }
  }
  return out;
}

Index dickman_kappa(double x, Index n) { return static_cast<Index>(std::llround(x * static_cast<double>(n))); }

PathEstimate asllt_dickman_path(double x, const std::vector<Index>& checkpoints, const DickmanRho& rho,
                                std::uint64_t seed, std::uint64_t path) {
  validate_checkpoints(checkpoints);
  if (!(x > 0.0)) throw PreconditionError("asllt_dickman: requires x > 0");
  std::ostringstream rule;
  rule << "kappa_n=round(" << x << "*n)";
  PathEstimate est{"dickman", seed, path, std::exp(-kEulerGamma) * rho(x), rule.str(), {}};
  CounterRng rng(seed, path);
  Index t = 0;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index n = 1; n <= checkpoints.back(); ++n) {
    if (n == 1 || rng.bernoulli(1.0 / static_cast<double>(n))) t += n;
    if (t == dickman_kappa(x, n)) sum += 1.0;
    if (n == checkpoints[next]) {
      est.checkpoints.emplace_back(n, sum / std::log(static_cast<double>(n)));
      ++next;
    }
  }
  return est;
}

std::vector<double> dickman_hitting_masses(double x, Index N) {
  const Index W = dickman_kappa(x, N);
  std::vector<double> f(static_cast<std::size_t>(W) + 1, 0.0);
  f[0] = 1.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N));
  for (Index n = 1; n <= N; ++n) {
    const double q = 1.0 / static_cast<double>(n);
    for (Index j = W; j >= 0; --j) {
      const auto i = static_cast<std::size_t>(j);
      f[i] = (1.0 - q) * f[i] + (j >= n ? q * f[i - static_cast<std::size_t>(n)] : 0.0);
    }
    const Index k = dickman_kappa(x, n);
    out.push_back(k <= W ? f[static_cast<std::size_t>(k)] : 0.0);
  }
  return out;
}

std::vector<std::pair<Index, double>> asllt_dickman_expectation(double x, const std::vector<Index>& checkpoints) {
  validate_checkpoints(checkpoints);
  const std::vector<double> m = dickman_hitting_masses(x, checkpoints.back());
  std::vector<std::pair<Index, double>> out;
  double sum = 0.0;
  std::size_t next = 0;
  for (Index n = 1; n <= checkpoints.back(); ++n) {
    sum += m[static_cast<std::size_t>(n - 1)];
    if (n == checkpoints[next]) {
      out.emplace_back(n, sum / std::log(static_cast<double>(n)));
      ++next;
    }
  }
  return out;
}

CovarianceRecord covariance_check(const LatticePmf& p, Index m, Index n, const KappaRule& rule) {
  if (!(m >= 1 && m < n)) throw PreconditionError("covariance_check: requires 1 <= m < n");
  const SumContext c = context_of(p);
  const Index km = rule.index(m, c.v0, c.D, c.mu, c.sigma);
  const Index kn = rule.index(n, c.v0, c.D, c.mu, c.sigma);
  const double pm = sum_law(p, m).base.mass(km);
  const double pn = sum_law(p, n).base.mass(kn);
  const double joint = pm * sum_law(p, n - m).base.mass(kn - km);
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  CovarianceRecord r;
  r.m = m;
  r.n = n;
  r.lhs = std::sqrt(nd * md) * std::abs(joint - pn * pm);
  r.bracket = 1.0 / (std::sqrt(nd / md) - 1.0) + std::sqrt(nd) / std::pow(nd - md, 1.5);
  r.shape = std::sqrt(md / nd);
  return r;
}

}  // namespace lltlab
