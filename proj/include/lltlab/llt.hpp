#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lltlab/exact.hpp"
#include "lltlab/lattice.hpp"

namespace lltlab {

/// One approximation measurement; error == |exact - approx|.
struct ApproxReport {
  Index n = 0;
  std::string metric;
  double exact = 0.0;
  double approx = 0.0;
  double error = 0.0;
  std::string normalization;
  /// Lattice point where a supremum was attained, if any.
  double location = 0.0;
};

ApproxReport make_report(Index n, std::string metric, double exact, double approx, std::string normalization,
                         double location = 0.0);
void write_csv(std::ostream& out, const std::vector<ApproxReport>& rows, const std::string& formula);

/// (D / sqrt(2 pi B2)) exp(-(N - M)^2 / (2 B2)).
double gaussian_local_term(double N, double M, double B2, double D);

struct DeltaResult {
  double value = 0.0;
  /// Lattice point attaining the supremum.
  double argmax = 0.0;
  /// Largest Gaussian term on lattice points outside the scanned window.
  double tail = 0.0;
};

/// sup over N = v0 n + k D of |B P(S=N) - (D/sqrt(2 pi)) exp(-(N-M)^2/(2 B^2))|, with D the
/// law's own span. Points with P(S=N) = 0 are included; beyond the support the Gaussian
/// term decreases, so the one-step margin is exact and `tail` reports its bound.
DeltaResult delta_for_law(const LatticePmf& law, double M, double B2);
/// Delta_n for the i.i.d. sum, using p.span() as the lattice step.
DeltaResult delta_n(const LatticePmf& p, Index n);
/// Sup error of P(S_n = N) itself: Delta_n / (sigma sqrt(n)).
double llt_sup_error(const LatticePmf& p, Index n);

struct DeMoivreRecord {
  double x = 0.0;
  double gaussian = 0.0;
  double exact = 0.0;
  /// exact = gaussian * exp(E).
  double E = 0.0;
  double bound = 0.0;
};

/// Throws PreconditionError naming the failed inequality.
DeMoivreRecord demoivre_bound(Index n, double p, Index k, double gamma);

/// eps_n = log n! - (n + 1/2) log n + n - log sqrt(2 pi).
double stirling_remainder(Index n);

/// Local Edgeworth approximation of P(S_n = N) with the mu3 correction.
double edgeworth3_term(const LatticePmf& p, Index n, double N);
/// sigma sqrt(n) * sup_N |P(S_n=N) - approx|, with or without the mu3 correction.
double edgeworth_sup_error(const LatticePmf& p, Index n, bool corrected);

/// sum over atoms of |P(S=N) - (D/(B sqrt(2 pi))) exp(-(N-A)^2/(2B^2))|.
double variation_distance(const LatticePmf& law, double A, double B);
/// sum over the union of supports of |P(S=N) - reference(N)|.
double variation_distance(const LatticePmf& law, const LatticePmf& reference);

/// max(1, floor(sqrt(eps) * b)).
Index mukhin_window(double eps, double b);
/// b * sup_{|m-k| <= v} |P(S=m) - P(S=k)| over lattice indices.
double mukhin_criterion(const LatticePmf& law, double b, Index v);
struct MukhinRecord {
  double eps = 0.0;
  double b = 0.0;
  Index v = 0;
  double value = 0.0;
};
/// Criterion for the i.i.d. sum with eps from the standardised sup-CDF distance and b = sigma sqrt(n).
MukhinRecord mukhin_criterion(const LatticePmf& p, Index n);

struct GamkrelidzeRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double B = 0.0;
  bool holds() const { return lhs <= rhs; }
};
/// p must be integer valued (v0 = 0, D = 1).
GamkrelidzeRecord gamkrelidze_lower_check(const LatticePmf& p, Index n, Index k);

struct AudRecord {
  Index h = 0;
  /// P(S_n = m mod h), m = 0..h-1.
  std::vector<double> residues;
  /// prod_{k<=n} |E exp(2 pi i r X_k / h)|, r = 1..h-1.
  std::vector<double> dw_products;
  /// prod_{k<=n} max_m P(X_k = m mod h).
  double rozanov_product = 1.0;
  /// sum_{k<=n} min_m P(X_k = m mod h).
  double divergence_sum = 0.0;
};
AudRecord aud_diagnostics(const std::vector<LatticePmf>& summands, Index h);
AudRecord aud_diagnostics(const LatticePmf& p, Index n, Index h);

/// Residue law of an integer-valued pmf modulo h.
std::vector<double> residue_law(const LatticePmf& p, Index h);

}  // namespace lltlab
