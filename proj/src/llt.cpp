#include "lltlab/llt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <ostream>

#include "lltlab/errors.hpp"
#include "lltlab/quadrature.hpp"

namespace lltlab {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

}  // namespace

ApproxReport make_report(Index n, std::string metric, double exact, double approx, std::string normalization,
                         double location) {
  return ApproxReport{n, std::move(metric), exact, approx, std::abs(exact - approx), std::move(normalization),
                      location};
}

void write_csv(std::ostream& out, const std::vector<ApproxReport>& rows, const std::string& formula) {
  out << "# metric: " << (rows.empty() ? std::string("none") : rows.front().metric) << "; " << formula << '\n';
  out << "n,metric,exact,approx,error,normalization\n";
  out.precision(12);
  for (const ApproxReport& r : rows)
    out << r.n << ',' << r.metric << ',' << r.exact << ',' << r.approx << ',' << r.error << ',' << r.normalization
        << '\n';
}

double gaussian_local_term(double N, double M, double B2, double D) {
  if (!(B2 > 0.0)) throw PreconditionError("gaussian_local_term: variance must be positive");
  const double d = N - M;
  return D * kInvSqrt2Pi / std::sqrt(B2) * std::exp(-d * d / (2.0 * B2));
}

DeltaResult delta_for_law(const LatticePmf& law, double M, double B2) {
  if (law.degenerate()) throw DegenerateError("delta_n: degenerate law");
  if (!(B2 > 0.0)) throw PreconditionError("delta_n: variance must be positive");
  const double B = std::sqrt(B2);
  const double D = law.span();
  DeltaResult r;
  const DenseWindow w = law.dense();
  for (Index k = w.first - 1; k <= w.last() + 1; ++k) {
    const double N = law.value(k);
    const double g = D * kInvSqrt2Pi * std::exp(-(N - M) * (N - M) / (2.0 * B2));
    const double e = std::abs(B * w.at(k) - g);
    if (e > r.value) {
      r.value = e;
      r.argmax = N;
    }
  }
  const auto g = [&](Index k) {
    const double N = law.value(k);
    return D * kInvSqrt2Pi * std::exp(-(N - M) * (N - M) / (2.0 * B2));
  };
  r.tail = std::max(g(w.first - 2), g(w.last() + 2));
  return r;
}

DeltaResult delta_n(const LatticePmf& p, Index n) {
  const MomentSummary m = moments(p);
  const SumLawTable law = sum_law(p, n);
  const double nd = static_cast<double>(n);
  return delta_for_law(law.base, nd * m.mean(), nd * m.variance());
}

double llt_sup_error(const LatticePmf& p, Index n) {
  const double sigma = std::sqrt(moments(p).variance());
  return delta_n(p, n).value / (sigma * std::sqrt(static_cast<double>(n)));
}

DeMoivreRecord demoivre_bound(Index n, double p, Index k, double gamma) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("demoivre: requires 0 < p < 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("demoivre: requires 0 < gamma < 1");
  if (k < 0 || k > n) throw PreconditionError("demoivre: requires 0 <= k <= n");
  const double q = 1.0 - p;
  const double nd = static_cast<double>(n);
  if (nd < std::max(p / q, q / p)) throw PreconditionError("demoivre: violated n >= max(p/q, q/p)");
  const double npq = nd * p * q;
  const double dev = static_cast<double>(k) - nd * p;
  if (std::abs(dev) > gamma * npq) throw PreconditionError("demoivre: violated |k - np| <= gamma*npq");
  DeMoivreRecord r;
  r.x = dev / std::sqrt(npq);
  r.gaussian = kInvSqrt2Pi / std::sqrt(npq) * std::exp(-0.5 * r.x * r.x);
  const double kd = static_cast<double>(k);
  const double log_exact = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                           kd * std::log(p) + (nd - kd) * std::log(q);
  r.exact = std::exp(log_exact);
  r.E = log_exact - std::log(r.gaussian);
  const double ax = std::abs(r.x);
  r.bound = (3.0 * ax + 2.0 * ax * ax * ax) / ((1.0 - gamma) * std::sqrt(npq)) +
            1.0 / (4.0 * nd * std::min(p, q) * (1.0 - gamma));
  return r;
}

double stirling_remainder(Index n) {
  if (n < 1) throw PreconditionError("stirling_remainder: n must be positive");
  double log_fact = 0.0;
  for (Index i = 2; i <= n; ++i) log_fact += std::log(static_cast<double>(i));
  const double nd = static_cast<double>(n);
  return log_fact - (nd + 0.5) * std::log(nd) + nd - 0.5 * std::log(2.0 * std::numbers::pi);
}

namespace {

double edgeworth_value(double D, double mu, double sigma, double mu3, Index n, double N, bool corrected) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double y = (N - static_cast<double>(n) * mu) / (sigma * rn);
  double factor = 1.0;
  if (corrected) factor += (y * y * y - 3.0 * y) * mu3 / (6.0 * sigma * sigma * sigma * rn);
  return D / (sigma * rn) * normal_pdf(y) * factor;
}

}  // namespace

double edgeworth3_term(const LatticePmf& p, Index n, double N) {
  const MomentSummary m = moments(p);
  const double sigma = std::sqrt(m.variance());
  if (!(sigma > 0.0)) throw DegenerateError("edgeworth3_term: degenerate law");
  return edgeworth_value(p.span(), m.mean(), sigma, m.third_central(), n, N, true);
}

double edgeworth_sup_error(const LatticePmf& p, Index n, bool corrected) {
  const MomentSummary m = moments(p);
  const double sigma = std::sqrt(m.variance());
  if (!(sigma > 0.0)) throw DegenerateError("edgeworth_sup_error: degenerate law");
  const double mu3 = corrected ? m.third_central() : 0.0;
  const SumLawTable law = sum_law(p, n);
  const DenseWindow w = law.base.dense();
  double sup = 0.0;
  for (Index k = w.first - 1; k <= w.last() + 1; ++k) {
    const double approx = edgeworth_value(p.span(), m.mean(), sigma, mu3, n, law.base.value(k), corrected);
    sup = std::max(sup, std::abs(w.at(k) - approx));
  }
  return sup * sigma * std::sqrt(static_cast<double>(n));
}

double variation_distance(const LatticePmf& law, double A, double B) {
  if (!(B > 0.0)) throw PreconditionError("variation_distance: B must be positive");
  // Interior zeros count: a law on a strict sub-lattice pays the Gaussian term there.
  const DenseWindow w = law.dense();
  double s = 0.0;
  for (Index k = w.first; k <= w.last(); ++k)
    s += std::abs(w.at(k) - gaussian_local_term(law.value(k), A, B * B, law.span()));
  return s;
}

double variation_distance(const LatticePmf& law, const LatticePmf& reference) {
  double s = 0.0;
  for (const Atom& a : law.atoms()) s += std::abs(a.mass - reference.mass(a.index));
  for (const Atom& a : reference.atoms())
    if (law.mass(a.index) == 0.0) s += a.mass;
  return s;
}

Index mukhin_window(double eps, double b) {
  return std::max<Index>(1, static_cast<Index>(std::floor(std::sqrt(eps) * b)));
}

double mukhin_criterion(const LatticePmf& law, double b, Index v) {
  if (v < 1) throw PreconditionError("mukhin_criterion: window radius must be positive");
  const DenseWindow w = law.dense();
  const Index lo = w.first - v, hi = w.last() + v;
  // Sliding max/min over [k - v, k + v].
  std::deque<Index> maxq, minq;
  double sup = 0.0;
  Index next = lo;
  for (Index k = lo; k <= hi; ++k) {
    while (next <= std::min(k + v, hi)) {
      const double x = w.at(next);
      while (!maxq.empty() && w.at(maxq.back()) <= x) maxq.pop_back();
      while (!minq.empty() && w.at(minq.back()) >= x) minq.pop_back();
      maxq.push_back(next);
      minq.push_back(next);
      ++next;
    }
    while (maxq.front() < k - v) maxq.pop_front();
    while (minq.front() < k - v) minq.pop_front();
    const double pk = w.at(k);
    sup = std::max({sup, w.at(maxq.front()) - pk, pk - w.at(minq.front())});
  }
  return b * sup;
}

MukhinRecord mukhin_criterion(const LatticePmf& p, Index n) {
  const MomentSummary m = moments(p);
  const SumLawTable law = sum_law(p, n);
  MukhinRecord r;
  r.b = std::sqrt(m.variance() * static_cast<double>(n));
  r.eps = sup_cdf_distance(law.base, static_cast<double>(n) * m.mean(), r.b);
  r.v = mukhin_window(r.eps, r.b);
  r.value = mukhin_criterion(law.base, r.b, r.v);
  return r;
}

GamkrelidzeRecord gamkrelidze_lower_check(const LatticePmf& p, Index n, Index k) {
  if (p.v0() != 0.0 || p.span() != 1.0) throw PreconditionError("gamkrelidze: summands must be integer valued");
  if (k < 1 || n < 1) throw PreconditionError("gamkrelidze: requires n, k >= 1");
  GamkrelidzeRecord r;
  const MomentSummary m = moments(p);
  const double nd = static_cast<double>(n);
  r.B = std::sqrt(nd * m.variance());
  r.delta = delta_n(p, n).value;
  const auto integrand = [&](double t) { return std::pow(std::norm(char_fn(p, t)), nd); };
  const double lo = 2.0 * std::numbers::pi / static_cast<double>(2 * k + 1);
  // Symmetric in t: (1/4pi) * 2 * integral over [lo, pi].
  r.lhs = adaptive_simpson(integrand, lo, std::numbers::pi, 1e-9).value / (2.0 * std::numbers::pi);
  const double inv2sqrtpi = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  r.lambda = 2.01 * (r.delta + inv2sqrtpi * std::exp(-std::numbers::pi * std::numbers::pi * r.B * r.B));
  const double kd = static_cast<double>(k);
  r.rhs = inv2sqrtpi / r.B * (1.0 - std::exp(-kd * kd / (4.0 * r.B * r.B))) + 2.0 * r.lambda / r.B;
  return r;
}

std::vector<double> residue_law(const LatticePmf& p, Index h) {
  if (h < 2) throw PreconditionError("residue_law: h must be at least 2");
  std::vector<double> r(static_cast<std::size_t>(h), 0.0);
  for (const Atom& a : p.atoms()) r[static_cast<std::size_t>(((a.index % h) + h) % h)] += a.mass;
  return r;
}

AudRecord aud_diagnostics(const std::vector<LatticePmf>& summands, Index h) {
  if (h < 2) throw PreconditionError("aud_diagnostics: h must be at least 2");
  AudRecord rec;
  rec.h = h;
  const std::size_t hs = static_cast<std::size_t>(h);
  rec.residues.assign(hs, 0.0);
  rec.residues[0] = 1.0;
  rec.dw_products.assign(hs - 1, 1.0);
  for (const LatticePmf& p : summands) {
    const std::vector<double> q = residue_law(p, h);
    std::vector<double> next(hs, 0.0);
    for (std::size_t i = 0; i < hs; ++i)
      for (std::size_t j = 0; j < hs; ++j) next[(i + j) % hs] += rec.residues[i] * q[j];
    rec.residues = std::move(next);
    for (std::size_t r = 1; r < hs; ++r) {
      std::complex<double> z;
      for (std::size_t m = 0; m < hs; ++m)
        z += q[m] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r * m) / static_cast<double>(h));
      rec.dw_products[r - 1] *= std::abs(z);
    }
    rec.rozanov_product *= *std::max_element(q.begin(), q.end());
    rec.divergence_sum += *std::min_element(q.begin(), q.end());
  }
  return rec;
}

AudRecord aud_diagnostics(const LatticePmf& p, Index n, Index h) {
  return aud_diagnostics(std::vector<LatticePmf>(static_cast<std::size_t>(n), p), h);
}

}  // namespace lltlab
