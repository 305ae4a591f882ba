#pragma once

#include <iosfwd>
#include <vector>

#include "lltlab/llt.hpp"

namespace lltlab {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Dickman function on [0, u_max]: rho = 1 on [0, 1], u rho'(u) + rho(u - 1) = 0.
/// Grid nodes fall on every integer, so the delay is read from stored nodes.
class DickmanRho {
 public:
  explicit DickmanRho(double u_max = 20.0, int steps_per_unit = 1024);

  /// Cubic interpolation inside the unit interval containing u; 0 for u beyond u_max,
  /// 1 for u in [0, 1], and 0 for u < 0.
  double operator()(double u) const;
  double u_max() const { return u_max_; }
  double step() const { return 1.0 / steps_; }
  int steps_per_unit() const { return steps_; }
  const std::vector<double>& nodes() const { return rho_; }
  /// integral of rho over [0, u_max].
  double integral() const;

 private:
  double u_max_;
  int steps_;
  std::vector<double> rho_;
};

/// Rows (u, rho) at every `stride`-th node.
void write_csv(std::ostream& out, const DickmanRho& rho, int stride = 16);

/// T_n = sum_{k<=n} k Z_k with Z_k ~ Bernoulli(1/k); P(T_n = m) for m in [0, max_index].
DenseWindow dickman_sum_window(Index n, Index max_index, double* lost = nullptr);

/// n P(T_n = round(x n)) against e^{-gamma} rho(x).
ApproxReport dickman_llt_check(Index n, double x, const DickmanRho& rho);

/// sum_k |P(T_n = k) - e^{-gamma} rho(k/n) / n| over k <= 30 n, plus the mass of T_n beyond.
double dickman_strong_llt(Index n, const DickmanRho& rho);

}  // namespace lltlab
