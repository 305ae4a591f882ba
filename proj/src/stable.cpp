#include "lltlab/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/quadrature.hpp"

namespace lltlab {

double StableParams::B(Index n) const { return std::pow(static_cast<double>(n) * c, 1.0 / alpha); }

StableDensity::StableDensity(StableParams params)
    : params_(params), clipped_(std::make_shared<std::atomic<long>>(0)) {
  if (params.alpha == 1.0) throw PreconditionError("stable density: alpha = 1 is not supported");
  if (!(params.alpha > 0.0 && params.alpha < 1.0) || !params.one_sided)
    throw PreconditionError("stable density: only the one-sided branch with 0 < alpha < 1 is implemented");
  const double al = params.alpha;
  scale_ = std::tgamma(1.0 - al);
  a_ = scale_ * std::cos(std::numbers::pi * al / 2.0);
  b_ = scale_ * std::sin(std::numbers::pi * al / 2.0);
  // |f(t)| = exp(-a s) with s = t^alpha; the Jacobian adds s^{1/alpha - 1}.
  const double jac = 1.0 / al - 1.0;
  s_max_ = std::log(1e14) / a_;
  while (std::exp(-a_ * s_max_) * std::pow(s_max_, jac) / al >= 1e-14) s_max_ *= 1.1;
  x_series_ = std::pow(scale_, 1.0 / al);
}

std::complex<double> StableDensity::char_fn(double t) const {
  if (t == 0.0) return {1.0, 0.0};
  const double s = std::pow(std::abs(t), params_.alpha);
  const double sg = t > 0.0 ? 1.0 : -1.0;
  return std::exp(std::complex<double>(-a_ * s, sg * b_ * s));
}

double StableDensity::by_inversion(double x) const {
  const double al = params_.alpha;
  const double jac = 1.0 / al - 1.0;
  // g(x) = (1/pi) int_0^inf Re(e^{-itx} f(t)) dt, substituted t = s^{1/alpha}.
  const auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double t = std::pow(s, 1.0 / al);
    return std::exp(-a_ * s) * std::cos(b_ * s - x * t) * std::pow(s, jac);
  };
  const double phase_range = std::abs(b_) * s_max_ + std::abs(x) * std::pow(s_max_, 1.0 / al);
  const int panels = 8 + static_cast<int>(std::ceil(phase_range / std::numbers::pi));
  // Panels equally spaced in t so each spans a bounded number of oscillations.
  const double t_max = std::pow(s_max_, 1.0 / al);
  double total = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= panels; ++i) {
    const double t_hi = t_max * static_cast<double>(i) / panels;
    const double s_hi = std::pow(t_hi, al);
    if (i == 1) {
      // s^{1/alpha - 1} has a derivative cusp at 0: dyadic pieces down to where their mass is below 1e-16.
      double hi = s_hi;
      while (std::pow(hi, jac + 1.0) > 1e-16) {
        total += adaptive_simpson(integrand, 0.5 * hi, hi, 1e-11 / panels, 40).value;
        hi *= 0.5;
      }
    } else {
      total += adaptive_simpson(integrand, prev, s_hi, 1e-10 / panels, 40).value;
    }
    prev = s_hi;
  }
  return total / (std::numbers::pi * al);
}

double StableDensity::by_series(double x) const {
  if (!(x > 0.0)) return std::nan("");
  const double al = params_.alpha;
  const double z = std::log(scale_) - al * std::log(x);
  double sum = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double kd = k;
    const double sn = std::sin(std::numbers::pi * kd * al);
    const double mag = std::exp(std::lgamma(kd * al + 1.0) - std::lgamma(kd + 1.0) + kd * z);
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * sn;
    sum += term;
    if (k > 4 && mag < 1e-17 * std::abs(sum)) return sum / (std::numbers::pi * x);
  }
  return std::nan("");
}

double StableDensity::tail_by_series(double x) const {
  if (!(x > 0.0)) return std::nan("");
  const double al = params_.alpha;
  const double z = std::log(scale_) - al * std::log(x);
  double sum = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double kd = k;
    const double sn = std::sin(std::numbers::pi * kd * al);
    const double mag = std::exp(std::lgamma(kd * al) - std::lgamma(kd + 1.0) + kd * z);
    sum += ((k % 2 == 1) ? 1.0 : -1.0) * mag * sn;
    if (k > 4 && mag < 1e-17 * std::abs(sum)) return sum / std::numbers::pi;
  }
  return std::nan("");
}

double StableDensity::operator()(double x) const {
  double v = std::nan("");
  if (x >= x_series_) v = by_series(x);
  if (std::isnan(v)) v = by_inversion(x);
  if (v < 0.0) {
    if (v < -1e-8) clipped_->fetch_add(1);
    v = 0.0;
  }
  return v;
}

StableTable::StableTable(const StableDensity& g, double x_lo, double x_hi, int nodes)
    : g_(&g), y_lo_(std::log(x_lo)), dy_((std::log(x_hi) - std::log(x_lo)) / (nodes - 1)) {
  if (!(x_lo > 0.0 && x_hi > x_lo) || nodes < 4) throw PreconditionError("stable table: bad range");
  values_.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) values_[static_cast<std::size_t>(i)] = g(std::exp(y_lo_ + i * dy_));
}

double StableTable::operator()(double x) const {
  if (!(x > 0.0)) return (*g_)(x);
  const double u = (std::log(x) - y_lo_) / dy_;
  const int last = static_cast<int>(values_.size()) - 1;
  if (u < 0.0 || u > last) return (*g_)(x);
  // Four-point Lagrange stencil inside the table.
  const int i0 = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, last - 3);
  const double t = u - i0;
  const double* v = values_.data() + i0;
  const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double l1 = t * (t - 2) * (t - 3) / 2.0;
  const double l2 = -t * (t - 1) * (t - 3) / 2.0;
  const double l3 = t * (t - 1) * (t - 2) / 6.0;
  return std::max(0.0, l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3]);
}

StableTable default_table(const StableDensity& g) { return StableTable(g, 0.02, g.series_threshold(), 1024); }

double stable_mass(const StableDensity& g, double x_lo, double x_hi) {
  const auto f = [&](double y) {
    const double x = std::exp(y);
    return g(x) * x;
  };
  const double y_lo = std::log(x_lo), y_hi = std::log(x_hi);
  // Split at the series threshold where the density evaluator changes branch.
  const double y_mid = std::clamp(std::log(g.series_threshold()), y_lo, y_hi);
  return adaptive_simpson(f, y_lo, y_mid, 1e-9).value + adaptive_simpson(f, y_mid, y_hi, 1e-9).value;
}

DenseWindow power_tail_sum_window(const PowerTailFamily& family, Index n, Index max_index) {
  if (!(family.alpha > 0.0) || !(family.c > 0.0 && family.c <= 1.0))
    throw PreconditionError("power_tail: need alpha > 0 and 0 < c <= 1");
  return sum_law_window(family.window(max_index), n, max_index);
}

StableLltReport stable_llt_error(const PowerTailFamily& family, Index n, double window_factor,
                                 const StableTable* table) {
  const StableParams params{family.alpha, family.c, true};
  const StableDensity g(params);
  std::optional<StableTable> own;
  if (!table) table = &own.emplace(default_table(g));
  StableLltReport r;
  r.B = params.B(n);
  r.window = std::max<Index>(16, static_cast<Index>(std::ceil(window_factor * r.B)));
  const DenseWindow w = power_tail_sum_window(family, n, r.window);
  r.outside_mass = std::max(0.0, 1.0 - w.total());
  double sup = 0.0, at = 0.0, exact = 0.0, approx = 0.0;
  for (Index m = 0; m <= w.last(); ++m) {
    const double lhs = r.B * w.at(m);
    const double rhs = (*table)(static_cast<double>(m) / r.B);
    r.peak = std::max(r.peak, lhs);
    if (std::abs(lhs - rhs) > sup) {
      sup = std::abs(lhs - rhs);
      at = static_cast<double>(m);
      exact = lhs;
      approx = rhs;
    }
  }
  r.report = make_report(n, "stable_llt_sup", exact, approx, "B_n=(nc)^(1/alpha)", at);
  return r;
}

double doney_ratio(const PowerTailFamily& family, Index n, Index m, double eps) {
  if (!(family.alpha > 1.0)) throw PreconditionError("doney_ratio: requires alpha > 1 (finite mean)");
  const double mu = family.c * std::riemann_zeta(family.alpha);
  if (static_cast<double>(m) < (mu + eps) * static_cast<double>(n))
    throw PreconditionError("doney_ratio: requires m >= (mu + eps) n");
  const DenseWindow w = power_tail_sum_window(family, n, m);
  const Index shift = m - static_cast<Index>(std::llround(static_cast<double>(n) * mu));
  const double denom = static_cast<double>(n) * family.mass(shift);
  if (!(denom > 0.0)) throw PreconditionError("doney_ratio: zero denominator");
  return w.at(m) / denom;
}

double doney_ratio(const LatticePmf& p, Index n, Index m, double eps) {
  const double mu = moments(p).mean();
  if (static_cast<double>(m) < (mu + eps) * static_cast<double>(n))
    throw PreconditionError("doney_ratio: requires m >= (mu + eps) n");
  const SumLawTable law = sum_law(p, n);
  const Index shift = m - static_cast<Index>(std::llround(static_cast<double>(n) * mu));
  const double denom = static_cast<double>(n) * p.mass(shift);
  if (!(denom > 0.0)) throw PreconditionError("doney_ratio: zero denominator");
  return law.base.mass(m) / denom;
}

}  // namespace lltlab
