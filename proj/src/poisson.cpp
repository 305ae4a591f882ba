#include "lltlab/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "lltlab/exact.hpp"

namespace lltlab {

namespace {

constexpr std::size_t kPoissonCap = 200;

double mass_or_zero(const IntLaw& a, std::size_t k) { return k < a.size() ? a[k] : 0.0; }

IntLaw convolve_int(const IntLaw& a, const IntLaw& b) {
  IntLaw out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

IntLaw poisson_law(double lambda) {
  if (!(lambda >= 0.0)) throw PreconditionError("poisson_law: lambda must be nonnegative");
  IntLaw out;
  double term = std::exp(-lambda);
  double cum = 0.0;
  for (std::size_t k = 0; k <= kPoissonCap; ++k) {
    if (k > 0) term *= lambda / static_cast<double>(k);
    out.push_back(term);
    cum += term;
    if (1.0 - cum < 1e-14 && k >= static_cast<std::size_t>(lambda)) break;
  }
  return out;
}

IntLaw to_int_law(const LatticePmf& p) {
  if (p.min_index() < 0) throw PreconditionError("to_int_law: law must live on the nonnegative integers");
  IntLaw out(static_cast<std::size_t>(p.max_index()) + 1, 0.0);
  for (const Atom& a : p.atoms()) out[static_cast<std::size_t>(a.index)] = a.mass;
  return out;
}

IntLaw poisson_binomial_law(const std::vector<double>& probs) {
  return weighted_sum_window(std::vector<Index>(probs.size(), 1), probs, static_cast<Index>(probs.size())).mass;
}

double tv_distance(const IntLaw& a, const IntLaw& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) s += std::abs(mass_or_zero(a, k) - mass_or_zero(b, k));
  return 0.5 * s;
}

double d0_distance(const IntLaw& a, const IntLaw& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k)
    s = std::max(s, std::abs(mass_or_zero(a, k) - mass_or_zero(b, k)));
  return s;
}

double hodges_lecam_D(const IntLaw& a, const IntLaw& b) {
  double fa = 0.0, fb = 0.0, s = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    fa += mass_or_zero(a, k);
    fb += mass_or_zero(b, k);
    s = std::max(s, std::abs(fa - fb));
  }
  return s;
}

double tv_by_subsets(const IntLaw& a, const IntLaw& b) {
  const std::size_t n = std::max(a.size(), b.size());
  if (n > 20) throw ResourceError("tv_by_subsets: window larger than 20 cells");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) s += mass_or_zero(a, k) - mass_or_zero(b, k);
    best = std::max(best, std::abs(s));
  }
  return best;
}

double lecam_bound(const std::vector<double>& probs) {
  double s = 0.0;
  for (double p : probs) s += p * p;
  return 2.0 * s;
}

LeCamRecord lecam_check(const std::vector<double>& probs) {
  double lambda = 0.0;
  for (double p : probs) lambda += p;
  LeCamRecord r;
  r.full_sum = 2.0 * tv_distance(poisson_binomial_law(probs), poisson_law(lambda));
  r.bound = lecam_bound(probs);
  return r;
}

double CouplingRow::total() const {
  double s = x1y1 + x1y0 + x0y0;
  for (double m : x0y) s += m;
  return s;
}

double CouplingRow::marginal_x(int x) const {
  if (x == 1) return x1y1 + x1y0;
  double s = x0y0;
  for (double m : x0y) s += m;
  return s;
}

double CouplingRow::marginal_y(Index y) const {
  if (y == 0) return x1y0 + x0y0;
  if (y == 1) return x1y1;
  const auto i = static_cast<std::size_t>(y - 2);
  return i < x0y.size() ? x0y[i] : 0.0;
}

CouplingTable coupling(const std::vector<double>& probs) {
  CouplingTable t;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("coupling: p must lie in [0, 1]");
    const double e = std::exp(-p);
    CouplingRow row;
    row.p = p;
    row.x1y1 = p * e;
    row.x1y0 = p * (1.0 - e);
    row.x0y0 = e - p * (1.0 - e);
    if (row.x0y0 < 0.0)
      throw InfeasibleError(i, "coupling infeasible at row " + std::to_string(i) + ": P(X=Y=0) < 0 for p=" +
                                   std::to_string(p));
    const IntLaw pois = poisson_law(p);
    for (std::size_t y = 2; y < pois.size(); ++y) row.x0y.push_back(pois[y]);
    t.lambda += p;
    t.rows.push_back(std::move(row));
  }
  return t;
}

double franken_bound(const std::vector<IntLaw>& laws) {
  double s = 0.0;
  for (const IntLaw& l : laws)
    for (std::size_t k = 0; k < l.size(); ++k) {
      const double kd = static_cast<double>(k);
      s += l[k] * (kd * kd + kd * (kd - 1.0));
    }
  return 2.0 / std::numbers::pi * s;
}

FrankenRecord franken_check(const std::vector<IntLaw>& laws) {
  IntLaw sum{1.0};
  double lambda = 0.0;
  for (const IntLaw& l : laws) {
    sum = convolve_int(sum, l);
    for (std::size_t k = 0; k < l.size(); ++k) lambda += static_cast<double>(k) * l[k];
  }
  FrankenRecord r;
  r.d0 = d0_distance(sum, poisson_law(lambda));
  r.bound = franken_bound(laws);
  return r;
}

void write_poisson_csv(std::ostream& out, const IntLaw& exact, const IntLaw& poisson) {
  out << "# metric: pointwise gap to Poisson; absGap=|P(S=k)-e^{-lambda}lambda^k/k!|\n";
  out << "k,exactMass,poissonMass,absGap\n";
  out.precision(15);
  for (std::size_t k = 0; k < std::max(exact.size(), poisson.size()); ++k) {
    const double a = mass_or_zero(exact, k), b = mass_or_zero(poisson, k);
    out << k << ',' << a << ',' << b << ',' << std::abs(a - b) << '\n';
  }
}

}  // namespace lltlab
