#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lltlab/dickman.hpp"
#include "lltlab/lattice.hpp"

namespace lltlab {

struct PathEstimate {
  std::string kind;  // t1 | CE | markov | dickman
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  double target = 0.0;
  std::string kappa_rule;
  /// (N, estimator value), N strictly increasing.
  std::vector<std::pair<Index, double>> checkpoints;

  double final_value() const { return checkpoints.empty() ? 0.0 : checkpoints.back().second; }
};

/// Rows (kind, seed, N, estimate, target).
void write_csv(std::ostream& out, const std::vector<PathEstimate>& paths);

/// kappa_n = lattice point of n v0 + D Z nearest to n mu + kappa sigma sqrt(n), ties rounded up.
/// A custom rule returns the value kappa_n directly and is checked for lattice membership.
struct KappaRule {
  double kappa = 0.0;
  std::function<double(Index)> custom;

  /// Lattice index k with kappa_n = n v0 + k D.
  Index index(Index n, double v0, double D, double mu, double sigma) const;
  std::string describe() const;
};

/// Powers of two from 4 up to N, plus N.
std::vector<Index> dyadic_checkpoints(Index N);

/// Target D/(sqrt(2 pi) sigma) exp(-kappa^2/2) of the i.i.d. estimator.
double asllt_target(const LatticePmf& p, const KappaRule& rule);
/// (1/log N) sum_{n<=N} 1{S_n = kappa_n} / sqrt(n) along one simulated path.
PathEstimate asllt_path(const LatticePmf& p, const KappaRule& rule, const std::vector<Index>& checkpoints,
                        std::uint64_t seed, std::uint64_t path = 0);
/// (1/log N) sum_{n<=N} P(S_n = kappa_n) / sqrt(n) at each checkpoint, exact.
std::vector<std::pair<Index, double>> asllt_expectation(const LatticePmf& p, const KappaRule& rule,
                                                        const std::vector<Index>& checkpoints);

/// P(S_k = a) for k = 1..N.
std::vector<double> hitting_masses(const LatticePmf& p, Index a, Index N);
/// (1/log M_N) sum_{k<=N} 1{S_k = a} / M_k with M_k = sum_{i<=k} P(S_i = a); a is a lattice index.
PathEstimate chung_erdos_path(const LatticePmf& p, Index a, const std::vector<Index>& checkpoints,
                              std::uint64_t seed, std::uint64_t path = 0);
/// Paths first_path .. first_path + count - 1, sharing one computation of M_k.
std::vector<PathEstimate> chung_erdos_paths(const LatticePmf& p, Index a, const std::vector<Index>& checkpoints,
                                            std::uint64_t seed, std::uint64_t first_path, std::uint64_t count);
/// (1/log M_N) sum_{k<=N} m_k / M_k.
std::vector<std::pair<Index, double>> chung_erdos_expectation(const LatticePmf& p, Index a,
                                                              const std::vector<Index>& checkpoints);

/// Chain on {0, 1} with P(0 -> 1) = p12 and P(1 -> 0) = p21, started from stationarity.
struct TwoStateChain {
  double p12 = 0.5;
  double p21 = 0.5;

  TwoStateChain(double p12_, double p21_);
  double pi0() const { return p21 / (p12 + p21); }
  double pi1() const { return p12 / (p12 + p21); }
  double gamma() const { return 1.0 - p12 - p21; }
  double sigma2() const { return pi0() * pi1() * (1.0 + gamma()) / (1.0 - gamma()); }
  /// f(0) = -pi1, f(1) = pi0.
  double f(int state) const { return state ? pi0() : -pi1(); }
};

/// k_nu such that kappa_nu = -nu pi1 + k_nu; nearest to kappa sigma sqrt(nu).
Index markov_kappa_index(const TwoStateChain& chain, const KappaRule& rule, Index nu);
/// (1/log n) sum_{nu<=n} (sigma/sqrt(nu)) 1{S_nu = kappa_nu}; target phi(kappa).
PathEstimate markov_asllt_path(const TwoStateChain& chain, const KappaRule& rule,
                               const std::vector<Index>& checkpoints, std::uint64_t seed, std::uint64_t path = 0);
/// P(number of visits to state 1 among xi_1..xi_nu = k) for k = 0..nu, by the transfer matrix.
std::vector<double> markov_count_law(const TwoStateChain& chain, Index nu);
/// Exact P(S_nu = kappa_nu) for nu = 1..N.
std::vector<double> markov_hitting_masses(const TwoStateChain& chain, const KappaRule& rule, Index N);
std::vector<std::pair<Index, double>> markov_asllt_expectation(const TwoStateChain& chain, const KappaRule& rule,
                                                               const std::vector<Index>& checkpoints);

/// kappa_n = round(x n).
Index dickman_kappa(double x, Index n);
/// (1/log N) sum_{n<=N} 1{T_n = kappa_n} on one coupled path; target e^{-gamma} rho(x).
PathEstimate asllt_dickman_path(double x, const std::vector<Index>& checkpoints, const DickmanRho& rho,
                                std::uint64_t seed, std::uint64_t path = 0);
/// Exact P(T_n = round(x n)) for n = 1..N.
std::vector<double> dickman_hitting_masses(double x, Index N);
std::vector<std::pair<Index, double>> asllt_dickman_expectation(double x, const std::vector<Index>& checkpoints);

struct CovarianceRecord {
  Index m = 0;
  Index n = 0;
  /// sqrt(nm) |P(S_n=k_n, S_m=k_m) - P(S_n=k_n) P(S_m=k_m)|.
  double lhs = 0.0;
  /// 1/(sqrt(n/m) - 1) + sqrt(n)/(n-m)^{3/2}.
  double bracket = 0.0;
  /// sqrt(m/n).
  double shape = 0.0;
};
CovarianceRecord covariance_check(const LatticePmf& p, Index m, Index n, const KappaRule& rule);

}  // namespace lltlab
