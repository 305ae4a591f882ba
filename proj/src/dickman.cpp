#include "lltlab/dickman.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"

namespace lltlab {

namespace {

// w[a][m] = integral over [a, a+1] of the Lagrange basis polynomial L_m on nodes 0, 1, 2, 3.
std::array<std::array<double, 4>, 3> cubic_weights() {
  std::array<std::array<double, 4>, 3> w{};
  const double g = std::sqrt(3.0 / 5.0);
  const std::array<double, 3> xs{-g, 0.0, g};
  const std::array<double, 3> ws{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 4; ++m) {
      double s = 0.0;
      for (int q = 0; q < 3; ++q) {
        const double t = a + 0.5 + 0.5 * xs[static_cast<std::size_t>(q)];
        double l = 1.0;
        for (int j = 0; j < 4; ++j)
          if (j != m) l *= (t - j) / static_cast<double>(m - j);
        s += 0.5 * ws[static_cast<std::size_t>(q)] * l;
      }
      w[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)] = s;
    }
  return w;
}

}  // namespace

DickmanRho::DickmanRho(double u_max, int steps_per_unit) : u_max_(u_max), steps_(steps_per_unit) {
  if (steps_per_unit < 1000) throw PreconditionError("dickman_rho: step must be at most 1e-3");
  if (!(u_max >= 1.0)) throw PreconditionError("dickman_rho: u_max must be at least 1");
  const double h = 1.0 / steps_;
  const auto total = static_cast<std::size_t>(std::ceil(u_max * steps_));
  rho_.assign(total + 1, 1.0);
  const auto w = cubic_weights();
  const auto S = static_cast<std::size_t>(steps_);
  // F(u) = rho(u - 1) / u on node i.
  const auto F = [&](std::size_t i) { return rho_[i - S] / (static_cast<double>(i) * h); };
  for (std::size_t i = S; i < total; ++i) {
    // Step [i, i+1] sits inside the unit interval [base, base + S]; pick 4 nodes inside it.
    const std::size_t base = (i / S) * S;
    const std::size_t start = std::clamp<std::size_t>(i >= 1 ? i - 1 : 0, base, base + S - 3);
    const std::size_t a = i - start;
    double integral = 0.0;
    for (std::size_t m = 0; m < 4; ++m) integral += w[a][m] * F(start + m);
    rho_[i + 1] = rho_[i] - h * integral;
  }
}

double DickmanRho::operator()(double u) const {
  if (u < 0.0) return 0.0;
  if (u <= 1.0) return 1.0;
  if (u > u_max_) return 0.0;
  const double pos = u * steps_;
  const auto S = static_cast<std::size_t>(steps_);
  const auto i = std::min(static_cast<std::size_t>(pos), rho_.size() - 2);
  // Keep the stencil inside one unit interval, where rho is smooth.
  std::size_t base = (i / S) * S;
  if (base + S >= rho_.size()) base = rho_.size() - 1 - S;
  const std::size_t start = std::clamp<std::size_t>(i >= 1 ? i - 1 : 0, base, base + S - 3);
  const double t = pos - static_cast<double>(start);
  const double* v = rho_.data() + start;
  const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double l1 = t * (t - 2) * (t - 3) / 2.0;
  const double l2 = -t * (t - 1) * (t - 3) / 2.0;
  const double l3 = t * (t - 1) * (t - 2) / 6.0;
  return l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3];
}

double DickmanRho::integral() const {
  // Composite Simpson on each unit interval (steps_per_unit is even).
  const double h = 1.0 / steps_;
  const auto S = static_cast<std::size_t>(steps_);
  double total = 0.0;
  for (std::size_t base = 0; base + S < rho_.size(); base += S) {
    double s = rho_[base] + rho_[base + S];
    for (std::size_t j = 1; j < S; ++j) s += (j % 2 ? 4.0 : 2.0) * rho_[base + j];
    total += s * h / 3.0;
  }
  return total;
}

void write_csv(std::ostream& out, const DickmanRho& rho, int stride) {
  out << "# metric: Dickman rho; u rho'(u) + rho(u-1) = 0, rho = 1 on [0,1]\n";
  out << "u,rho\n";
  out.precision(15);
  for (std::size_t i = 0; i < rho.nodes().size(); i += static_cast<std::size_t>(stride))
    out << static_cast<double>(i) * rho.step() << ',' << rho.nodes()[i] << '\n';
}

DenseWindow dickman_sum_window(Index n, Index max_index, double* lost) {
  if (n < 1) throw PreconditionError("dickman: n must be positive");
  std::vector<Index> weights(static_cast<std::size_t>(n));
  std::vector<double> probs(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) {
    weights[static_cast<std::size_t>(k - 1)] = k;
    probs[static_cast<std::size_t>(k - 1)] = 1.0 / static_cast<double>(k);
  }
  return weighted_sum_window(weights, probs, max_index, lost);
}

ApproxReport dickman_llt_check(Index n, double x, const DickmanRho& rho) {
  if (n < 2) throw PreconditionError("dickman_llt_check: requires n >= 2");
  const auto kappa = static_cast<Index>(std::llround(x * static_cast<double>(n)));
  const DenseWindow w = dickman_sum_window(n, kappa);
  const double exact = static_cast<double>(n) * w.at(kappa);
  return make_report(n, "dickman_llt", exact, std::exp(-kEulerGamma) * rho(x), "n", static_cast<double>(kappa));
}

double dickman_strong_llt(Index n, const DickmanRho& rho) {
  if (n < 2) throw PreconditionError("dickman_strong_llt: requires n >= 2");
  double lost = 0.0;
  const Index top = std::min<Index>(30 * n, n * (n + 1) / 2);
  const DenseWindow w = dickman_sum_window(n, top, &lost);
  const double nd = static_cast<double>(n);
  const double c = std::exp(-kEulerGamma) / nd;
  double s = 0.0;
  for (Index k = 0; k <= top; ++k) s += std::abs(w.at(k) - c * rho(static_cast<double>(k) / nd));
  return s + lost;
}

}  // namespace lltlab
