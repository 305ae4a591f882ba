#pragma once

// Independent reference computations. Nothing here calls into the library's numerics.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double binomial(int n, int k, double p) { return choose(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k); }

inline double poisson(double lambda, int k) {
  double r = std::exp(-lambda);
  for (int i = 1; i <= k; ++i) r *= lambda / i;
  return r;
}

/// Law of the sum of n draws from `atoms` (index -> mass), by recursive enumeration of all tuples.
inline std::map<long, double> enumerate_sum(const std::vector<std::pair<long, double>>& atoms, int n) {
  std::map<long, double> out;
  std::function<void(int, long, double)> rec = [&](int left, long s, double w) {
    if (left == 0) {
      out[s] += w;
      return;
    }
    for (const auto& [k, m] : atoms) rec(left - 1, s + k, w * m);
  };
  rec(n, 0, 1.0);
  return out;
}

/// P(T_n = m) for T_n = sum k Z_k, Z_k ~ Bernoulli(1/k), by enumerating all 2^n outcomes.
inline std::map<long, double> dickman_enumerate(int n) {
  std::map<long, double> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 1.0;
    long s = 0;
    for (int k = 1; k <= n; ++k) {
      const bool z = (mask >> (k - 1)) & 1u;
      const double q = 1.0 / k;
      w *= z ? q : 1.0 - q;
      if (z) s += k;
    }
    if (w > 0.0) out[s] += w;
  }
  return out;
}

/// One-sided stable density with index 1/2 and Laplace exponent Gamma(1/2) sqrt(s): the Levy law.
inline double levy_half_density(double x) {
  if (x <= 0.0) return 0.0;
  return 0.5 * std::pow(x, -1.5) * std::exp(-std::numbers::pi / (4.0 * x));
}

/// P(S_k = 0) for the lazy walk with steps -1, 0, 1 of masses 1/4, 1/2, 1/4: C(2k, k) / 4^k.
inline double lazy_return(int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (2.0 * i - 1.0) / (2.0 * i);
  return r;
}

/// Visits to state 1 among xi_1..xi_nu of a stationary two-state chain, by enumerating all 2^nu paths.
inline std::vector<double> markov_count_enumerate(double p12, double p21, int nu) {
  const double pi1 = p12 / (p12 + p21);
  std::vector<double> out(nu + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << nu); ++mask) {
    int prev = mask & 1u;
    double w = prev ? pi1 : 1.0 - pi1;
    int count = prev;
    for (int i = 1; i < nu; ++i) {
      const int cur = (mask >> i) & 1u;
      const double stay = prev ? 1.0 - p21 : 1.0 - p12;
      w *= (cur == prev) ? stay : 1.0 - stay;
      count += cur;
      prev = cur;
    }
    out[count] += w;
  }
  return out;
}

/// min over a of E <(X - a) d>^2 by a plain scan at the given step over one period.
inline double mukhin_D_scan(const std::vector<std::pair<long, double>>& atoms, double d, double step) {
  const auto dist = [](double x) { return std::abs(x - std::nearbyint(x)); };
  double best = INFINITY;
  for (double a = 0.0; a < 1.0 / d; a += step) {
    double v = 0.0;
    for (const auto& [k, m] : atoms) {
      const double r = dist((k - a) * d);
      v += m * r * r;
    }
    best = std::min(best, v);
  }
  return best;
}

/// |E e^{itX}| summed directly.
inline double char_modulus(const std::vector<std::pair<long, double>>& atoms, double t) {
  double re = 0.0, im = 0.0;
  for (const auto& [k, m] : atoms) {
    re += m * std::cos(t * k);
    im += m * std::sin(t * k);
  }
  return std::hypot(re, im);
}

}  // namespace oracle
