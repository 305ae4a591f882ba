#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "lltlab/exact.hpp"
#include "lltlab/lattice.hpp"
#include "lltlab/rng.hpp"

namespace lltlab {

/// Joint law of (V, eps) with X = V + eps D L, L a fair coin independent of (V, eps).
struct Decomposition {
  LatticePmf source;
  double theta = 0.0;
  /// theta_X of the source.
  double theta_max = 0.0;
  /// tau_k over k in [tau_first, tau_first + tau.size()).
  Index tau_first = 0;
  std::vector<double> tau;
  /// P(V = v_k, eps = e) over k in [source.min_index(), source.max_index()].
  std::vector<double> joint0;
  std::vector<double> joint1;

  double tau_at(Index k) const;
  double joint(Index k, int eps) const;
};

/// tau_k = (theta / theta_X) min(f(k), f(k+1)). theta defaults to theta_X.
/// Throws PreconditionError("no Bernoulli component") when theta_X = 0.
Decomposition decompose(const LatticePmf& p, std::optional<double> theta = std::nullopt);

/// Law of V + eps L on the source lattice.
LatticePmf reconstruct(const Decomposition& d);

struct DecomposedSample {
  /// sum V_j, as a lattice index sum and as a value.
  Index w_index = 0;
  double w_value = 0.0;
  Index b_count = 0;
  Index m_count = 0;
};

/// One draw of (W_n, B_n, M_n).
DecomposedSample sample_decomposed_sum(const Decomposition& d, Index n, CounterRng& rng);

/// Law of S'_n = W_n + (D/2) B_n on the half-span lattice n v0 + (D/2) Z.
SumLawTable exact_Sprime_law(const Decomposition& d, Index n);

/// Law of W_n + D M_n, built by conditioning on B_n and mixing binomially.
LatticePmf exact_decomposed_sum_law(const Decomposition& d, Index n);

/// 2 exp(-h^2 Theta / (2 (1 + h/3))).
double rho_bound(double h, double Theta);
/// P(|B - Theta| > h Theta) for B a sum of independent Bernoulli(theta_j).
double rho_exact(double h, const std::vector<double>& thetas);

struct ChernoffRecord {
  double upper_exact = 0.0;  // P(S >= (1+e) mu)
  double upper_bound = 0.0;  // exp(-e^2 mu / (2 (1 + e/3)))
  double lower_exact = 0.0;  // P(S <= (1-e) mu)
  double lower_bound = 0.0;  // exp(-e^2 mu / 2)
  bool holds() const { return upper_exact <= upper_bound && lower_exact <= lower_bound; }
};
/// Both tail bounds against the exact Poisson-binomial tails.
ChernoffRecord chernoff_check(const std::vector<double>& probs, double eps);

struct EffectiveRateInput {
  Index n = 0;
  double VarSn = 0.0;
  double ESn = 0.0;
  double Theta = 0.0;
  double H = 0.0;
  double rho = 0.0;
  double h = 0.5;
  double D = 1.0;
  double C0 = 0.0;

  double C1() const;
  double C2() const;
};

/// Exact inputs for the i.i.d. sum: H_n from the law of S'_n, rho_n(h) from the binomial law of B_n.
EffectiveRateInput effective_input(const Decomposition& d, Index n, double h, double C0);

/// sqrt(7 log Theta / (2 Theta)).
double ger2_h(double Theta);

struct SandwichBounds {
  double upper = 0.0;
  double lower = 0.0;
};
SandwichBounds effective_bounds(const EffectiveRateInput& inp, double kappa);

struct Ger2Record {
  bool applicable = false;  // log Theta / Theta <= 1/14
  double window = 0.0;      // sqrt(Theta / (14 log Theta)), bound on (kappa - ES)^2 / Var
  double bound = 0.0;
};
Ger2Record ger2_bound(const EffectiveRateInput& inp);
bool in_ger2_window(const EffectiveRateInput& inp, double kappa);

/// 4 sup|F_Y - Phi| - |E e^{-a(b-Y)^2} - e^{-b^2/(2+1/a)} / sqrt(1+2a)|; Y read as values of `y`.
double transfer_formula_check(double a, double b, const LatticePmf& y);
/// The left side alone.
double transfer_formula_lhs(double a, double b, const LatticePmf& y);

/// {theta, tau: [[k, tau_k]], joint: [[k, eps, mass]]}.
nlohmann::json to_json(const Decomposition& d);

}  // namespace lltlab
