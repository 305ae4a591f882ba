#pragma once

#include <atomic>
#include <complex>
#include <memory>
#include <vector>

#include "lltlab/lattice.hpp"
#include "lltlab/llt.hpp"

namespace lltlab {

/// One-sided stable limit of the discretised power-tail family, alpha in (0, 1).
struct StableParams {
  double alpha = 0.5;
  double c = 1.0;
  bool one_sided = true;

  /// B_n = (n c)^{1/alpha}.
  double B(Index n) const;
};

/// Density of the limit law of S_n / B_n for the power-tail family, by Fourier inversion
/// of f(t) = exp{-Gamma(1-alpha) |t|^alpha (cos(pi alpha/2) - i sgn(t) sin(pi alpha/2))}.
class StableDensity {
 public:
  explicit StableDensity(StableParams params);

  const StableParams& params() const { return params_; }
  std::complex<double> char_fn(double t) const;
  /// Inversion integral; values below zero are clipped and counted.
  double operator()(double x) const;
  /// Inversion only, without the large-x series or clipping.
  double by_inversion(double x) const;
  /// Convergent large-x series; NaN when it fails to converge.
  double by_series(double x) const;
  /// P(Y > x) from the convergent series (valid for x >= series_threshold()).
  double tail_by_series(double x) const;
  /// Abscissa above which the series is used.
  double series_threshold() const { return x_series_; }
  /// Number of negative inversion values clipped to zero so far.
  long clipped() const { return clipped_->load(); }

 private:
  StableParams params_;
  double scale_;  // Gamma(1 - alpha)
  double a_;      // scale * cos(pi alpha / 2)
  double b_;      // scale * sin(pi alpha / 2)
  double s_max_;  // cutoff in s = t^alpha where |f| < 1e-14
  double x_series_;
  std::shared_ptr<std::atomic<long>> clipped_;
};

/// Cubic interpolation of g on log-spaced nodes over [x_lo, x_hi]; direct evaluation outside.
class StableTable {
 public:
  StableTable(const StableDensity& g, double x_lo, double x_hi, int nodes = 1024);
  double operator()(double x) const;

 private:
  const StableDensity* g_;
  double y_lo_, dy_;
  std::vector<double> values_;
};

/// Table over [0.02, series threshold], where inversion is the expensive branch.
StableTable default_table(const StableDensity& g);

/// integral of g over (0, x_hi], integrated in log x.
double stable_mass(const StableDensity& g, double x_lo = 1e-3, double x_hi = 1e10);

struct StableLltReport {
  ApproxReport report;
  double B = 0.0;
  /// max_m B_n P(S_n = m) over the window.
  double peak = 0.0;
  /// Family mass beyond the window (the computation is exact inside it).
  double outside_mass = 0.0;
  Index window = 0;
};

/// sup_{0 <= m <= window_factor * B_n} |B_n P(S_n = m) - g(m / B_n)| for the power-tail family.
/// `table` must interpolate the density of the same alpha; built internally when null.
StableLltReport stable_llt_error(const PowerTailFamily& family, Index n, double window_factor = 16.0,
                                 const StableTable* table = nullptr);

/// P(S_n = m) / (n P(X = m - round(n mu))), exact via a window on [0, m].
double doney_ratio(const PowerTailFamily& family, Index n, Index m, double eps = 0.5);
/// Same ratio for an explicit pmf with finite mean.
double doney_ratio(const LatticePmf& p, Index n, Index m, double eps = 0.5);

/// P(S_n = m) for m in [0, max_index] for the family, exact.
DenseWindow power_tail_sum_window(const PowerTailFamily& family, Index n, Index max_index);

}  // namespace lltlab
