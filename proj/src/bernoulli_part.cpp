#include "lltlab/bernoulli_part.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lltlab/characteristics.hpp"
#include "lltlab/errors.hpp"

namespace lltlab {

double Decomposition::tau_at(Index k) const {
  const Index i = k - tau_first;
  return (i < 0 || i >= static_cast<Index>(tau.size())) ? 0.0 : tau[static_cast<std::size_t>(i)];
}

double Decomposition::joint(Index k, int eps) const {
  const Index i = k - source.min_index();
  const auto& v = eps ? joint1 : joint0;
  return (i < 0 || i >= static_cast<Index>(v.size())) ? 0.0 : v[static_cast<std::size_t>(i)];
}

Decomposition decompose(const LatticePmf& p, std::optional<double> theta) {
  const double theta_x = theta_char(p);
  if (!(theta_x > 0.0)) throw PreconditionError("no Bernoulli component");
  const double th = theta.value_or(theta_x);
  if (!(th > 0.0 && th <= theta_x * (1.0 + 1e-15)))
    throw PreconditionError("decompose: theta must lie in (0, theta_X]");
  const DenseWindow f = p.dense();
  Decomposition d{p, th, theta_x, f.first, {}, {}, {}};
  const double scale = th / theta_x;
  d.tau.assign(f.mass.size() > 1 ? f.mass.size() - 1 : 0, 0.0);
  for (std::size_t i = 0; i < d.tau.size(); ++i) d.tau[i] = scale * std::min(f.mass[i], f.mass[i + 1]);
  d.joint0.resize(f.mass.size());
  d.joint1.resize(f.mass.size());
  for (std::size_t i = 0; i < f.mass.size(); ++i) {
    const Index k = f.first + static_cast<Index>(i);
    d.joint1[i] = d.tau_at(k);
    d.joint0[i] = std::max(0.0, f.mass[i] - 0.5 * (d.tau_at(k - 1) + d.tau_at(k)));
  }
  return d;
}

LatticePmf reconstruct(const Decomposition& d) {
  std::vector<Atom> atoms;
  const Index lo = d.source.min_index(), hi = d.source.max_index();
  for (Index k = lo; k <= hi + 1; ++k) {
    const double m = d.joint(k, 0) + 0.5 * d.joint(k, 1) + 0.5 * d.joint(k - 1, 1);
    if (m > 0.0) atoms.push_back({k, m});
  }
  return LatticePmf(d.source.v0(), d.source.span(), std::move(atoms), 1e-12);
}

DecomposedSample sample_decomposed_sum(const Decomposition& d, Index n, CounterRng& rng) {
  DecomposedSample s;
  if (n <= 0) return s;
  // Cells ordered (k, 0), (k, 1) for increasing k.
  std::vector<double> cdf;
  cdf.reserve(2 * d.joint0.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < d.joint0.size(); ++i) {
    acc += d.joint0[i];
    cdf.push_back(acc);
    acc += d.joint1[i];
    cdf.push_back(acc);
  }
  for (Index j = 0; j < n; ++j) {
    const double u = rng.uniform() * acc;
    const auto cell = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const std::size_t c = std::min(cell, cdf.size() - 1);
    const Index k = d.source.min_index() + static_cast<Index>(c / 2);
    s.w_index += k;
    if (c % 2 == 1) {
      ++s.b_count;
      if (rng.bernoulli(0.5)) ++s.m_count;
    }
  }
  s.w_value = static_cast<double>(n) * d.source.v0() + static_cast<double>(s.w_index) * d.source.span();
  return s;
}

SumLawTable exact_Sprime_law(const Decomposition& d, Index n) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < d.joint0.size(); ++i) {
    const Index k = d.source.min_index() + static_cast<Index>(i);
    atoms.push_back({2 * k, d.joint0[i]});
    atoms.push_back({2 * k + 1, d.joint1[i]});
  }
  const LatticePmf one(d.source.v0(), 0.5 * d.source.span(), std::move(atoms), 1e-12);
  return sum_law(one, n);
}

LatticePmf exact_decomposed_sum_law(const Decomposition& d, Index n) {
  if (n < 1) throw PreconditionError("exact_decomposed_sum_law: n must be positive");
  const Index lo = d.source.min_index();
  const auto width = static_cast<Index>(d.joint0.size());
  // table[b][w - n*lo] = P(B_n = b, W_n index = w)
  const Index cols = n * (width - 1) + 1;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(n) + 1,
                                         std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  table[0][0] = 1.0;
  for (Index j = 0; j < n; ++j) {
    std::vector<std::vector<double>> next(table.size(), std::vector<double>(static_cast<std::size_t>(cols), 0.0));
    for (Index b = 0; b <= j; ++b)
      for (Index w = 0; w <= j * (width - 1); ++w) {
        const double m = table[static_cast<std::size_t>(b)][static_cast<std::size_t>(w)];
        if (m == 0.0) continue;
        for (Index i = 0; i < width; ++i) {
          next[static_cast<std::size_t>(b)][static_cast<std::size_t>(w + i)] += m * d.joint0[static_cast<std::size_t>(i)];
          next[static_cast<std::size_t>(b + 1)][static_cast<std::size_t>(w + i)] +=
              m * d.joint1[static_cast<std::size_t>(i)];
        }
      }
    table = std::move(next);
  }
  std::vector<double> out(static_cast<std::size_t>(cols + n), 0.0);
  for (Index b = 0; b <= n; ++b) {
    // M_n given B_n = b is Binomial(b, 1/2).
    std::vector<double> binom(static_cast<std::size_t>(b) + 1);
    for (Index m = 0; m <= b; ++m)
      binom[static_cast<std::size_t>(m)] =
          std::exp(std::lgamma(b + 1.0) - std::lgamma(m + 1.0) - std::lgamma(b - m + 1.0) - b * std::log(2.0));
    for (Index w = 0; w < cols; ++w) {
      const double pw = table[static_cast<std::size_t>(b)][static_cast<std::size_t>(w)];
      if (pw == 0.0) continue;
      for (Index m = 0; m <= b; ++m) out[static_cast<std::size_t>(w + m)] += pw * binom[static_cast<std::size_t>(m)];
    }
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] > 0.0) atoms.push_back({n * lo + static_cast<Index>(i), out[i]});
  return LatticePmf(static_cast<double>(n) * d.source.v0(), d.source.span(), std::move(atoms), 1e-10);
}

double rho_bound(double h, double Theta) {
  if (!(h > 0.0 && h < 1.0)) throw PreconditionError("rho_bound: requires 0 < h < 1");
  if (!(Theta > 0.0)) throw PreconditionError("rho_bound: requires Theta > 0");
  return 2.0 * std::exp(-h * h * Theta / (2.0 * (1.0 + h / 3.0)));
}

namespace {

DenseWindow poisson_binomial(const std::vector<double>& probs) {
  return weighted_sum_window(std::vector<Index>(probs.size(), 1), probs, static_cast<Index>(probs.size()));
}

}  // namespace

double rho_exact(double h, const std::vector<double>& thetas) {
  double Theta = 0.0;
  for (double t : thetas) Theta += t;
  const DenseWindow law = poisson_binomial(thetas);
  double r = 0.0;
  for (Index b = 0; b <= law.last(); ++b)
    if (std::abs(static_cast<double>(b) - Theta) > h * Theta) r += law.at(b);
  return r;
}

ChernoffRecord chernoff_check(const std::vector<double>& probs, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("chernoff_check: eps must be positive");
  double mu = 0.0;
  for (double p : probs) mu += p;
  const DenseWindow law = poisson_binomial(probs);
  ChernoffRecord r;
  for (Index b = 0; b <= law.last(); ++b) {
    const double bd = static_cast<double>(b);
    // Boundary atoms counted on the exact side, so ties never favour the bound.
    if (bd >= (1.0 + eps) * mu - 1e-9) r.upper_exact += law.at(b);
    if (bd <= (1.0 - eps) * mu + 1e-9) r.lower_exact += law.at(b);
  }
  r.upper_bound = std::exp(-eps * eps * mu / (2.0 * (1.0 + eps / 3.0)));
  r.lower_bound = std::exp(-eps * eps * mu / 2.0);
  return r;
}

double EffectiveRateInput::C1() const { return std::max(8.0 / std::sqrt(2.0 * std::numbers::pi), C0); }

double EffectiveRateInput::C2() const { return std::pow(2.0, 3.5) * C1(); }

EffectiveRateInput effective_input(const Decomposition& d, Index n, double h, double C0) {
  if (!(h > 0.0 && h < 1.0)) throw PreconditionError("effective_input: requires 0 < h < 1");
  const MomentSummary m = moments(d.source);
  const double nd = static_cast<double>(n);
  EffectiveRateInput inp;
  inp.n = n;
  inp.VarSn = nd * m.variance();
  inp.ESn = nd * m.mean();
  inp.Theta = nd * d.theta;
  inp.h = h;
  inp.D = d.source.span();
  inp.C0 = C0;
  const SumLawTable sp = exact_Sprime_law(d, n);
  const double var_prime = inp.VarSn - inp.D * inp.D * inp.Theta / 4.0;
  inp.H = sup_cdf_distance(sp.base, inp.ESn, std::sqrt(var_prime));
  inp.rho = rho_exact(h, std::vector<double>(static_cast<std::size_t>(n), d.theta));
  return inp;
}

double ger2_h(double Theta) { return std::sqrt(7.0 * std::log(Theta) / (2.0 * Theta)); }

SandwichBounds effective_bounds(const EffectiveRateInput& inp, double kappa) {
  const double h = inp.h;
  const double dev2 = (kappa - inp.ESn) * (kappa - inp.ESn);
  const double g = inp.D / std::sqrt(2.0 * std::numbers::pi * inp.VarSn);
  const double pre = inp.C1() / std::sqrt((1.0 - h) * inp.Theta);
  const double inv = 1.0 / ((1.0 - h) * inp.Theta);
  SandwichBounds b;
  b.upper = (1.0 + h) / (1.0 - h) * g * std::exp(-dev2 / (2.0 * (1.0 + h) * inp.VarSn)) + pre * (inp.H + inv) + inp.rho;
  b.lower = (1.0 - h) / (1.0 + h) * g * std::exp(-dev2 / (2.0 * (1.0 - h) * inp.VarSn)) -
            pre * (inp.H + inv + 2.0 * inp.rho) - inp.rho;
  return b;
}

Ger2Record ger2_bound(const EffectiveRateInput& inp) {
  Ger2Record r;
  const double lt = std::log(inp.Theta);
  r.applicable = inp.Theta > 1.0 && lt / inp.Theta <= 1.0 / 14.0;
  if (inp.Theta > 1.0) r.window = std::sqrt(inp.Theta / (14.0 * lt));
  r.bound = inp.C2() * (inp.D * std::sqrt(lt / (inp.VarSn * inp.Theta)) + (inp.H + 1.0 / inp.Theta) / std::sqrt(inp.Theta));
  return r;
}

bool in_ger2_window(const EffectiveRateInput& inp, double kappa) {
  const Ger2Record r = ger2_bound(inp);
  return r.applicable && (kappa - inp.ESn) * (kappa - inp.ESn) / inp.VarSn <= r.window;
}

double transfer_formula_lhs(double a, double b, const LatticePmf& y) {
  if (!(a > 0.0)) throw PreconditionError("transfer formula: requires a > 0");
  double e = 0.0;
  for (const Atom& at : y.atoms()) {
    const double d = b - y.value(at.index);
    e += at.mass * std::exp(-a * d * d);
  }
  return std::abs(e - std::exp(-b * b / (2.0 + 1.0 / a)) / std::sqrt(1.0 + 2.0 * a));
}

double transfer_formula_check(double a, double b, const LatticePmf& y) {
  return 4.0 * sup_cdf_distance(y, 0.0, 1.0) - transfer_formula_lhs(a, b, y);
}

nlohmann::json to_json(const Decomposition& d) {
  nlohmann::json j;
  j["theta"] = d.theta;
  nlohmann::json tau = nlohmann::json::array();
  for (std::size_t i = 0; i < d.tau.size(); ++i)
    if (d.tau[i] > 0.0) tau.push_back(nlohmann::json::array({d.tau_first + static_cast<Index>(i), d.tau[i]}));
  j["tau"] = std::move(tau);
  nlohmann::json joint = nlohmann::json::array();
  for (std::size_t i = 0; i < d.joint0.size(); ++i) {
    const Index k = d.source.min_index() + static_cast<Index>(i);
    if (d.joint0[i] > 0.0) joint.push_back(nlohmann::json::array({k, 0, d.joint0[i]}));
    if (d.joint1[i] > 0.0) joint.push_back(nlohmann::json::array({k, 1, d.joint1[i]}));
  }
  j["joint"] = std::move(joint);
  return j;
}

}  // namespace lltlab
