#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "lltlab/errors.hpp"
#include "lltlab/lattice.hpp"

namespace lltlab {

/// Masses on 0..K: nonnegative-integer laws used throughout this module.
using IntLaw = std::vector<double>;

/// Poisson(lambda) on 0..K with K the smallest index whose upper tail is below 1e-14, capped at 200.
IntLaw poisson_law(double lambda);
/// Masses of a lattice pmf on 0..max_index; throws for negative indices.
IntLaw to_int_law(const LatticePmf& p);
/// Law of sum of independent Bernoulli(p_i).
IntLaw poisson_binomial_law(const std::vector<double>& probs);

/// (1/2) sum_k |a_k - b_k|.
double tv_distance(const IntLaw& a, const IntLaw& b);
/// sup_k |a_k - b_k|.
double d0_distance(const IntLaw& a, const IntLaw& b);
/// sup_k |A(k) - B(k)| for the CDFs.
double hodges_lecam_D(const IntLaw& a, const IntLaw& b);
/// max over subsets A of the window of |a(A) - b(A)|; brute force, window <= 20 cells.
double tv_by_subsets(const IntLaw& a, const IntLaw& b);

/// 2 sum p_i^2.
double lecam_bound(const std::vector<double>& probs);

struct LeCamRecord {
  /// sum_k |P(S=k) - Poisson(lambda)(k)|.
  double full_sum = 0.0;
  double bound = 0.0;
  bool holds() const { return full_sum <= bound; }
};
LeCamRecord lecam_check(const std::vector<double>& probs);

class InfeasibleError : public PreconditionError {
 public:
  InfeasibleError(std::size_t row, const std::string& what) : PreconditionError(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct CouplingRow {
  double p = 0.0;
  double x1y1 = 0.0;  // p e^{-p}
  double x1y0 = 0.0;  // p (1 - e^{-p})
  double x0y0 = 0.0;  // e^{-p} - p (1 - e^{-p})
  /// P(X = 0, Y = y) for y = 2, 3, ...; the Poisson masses.
  std::vector<double> x0y;

  double total() const;
  /// P(X = 1) and P(X = 0) from the table.
  double marginal_x(int x) const;
  /// P(Y = y) from the table.
  double marginal_y(Index y) const;
};

struct CouplingTable {
  std::vector<CouplingRow> rows;
  double lambda = 0.0;
};

/// Throws InfeasibleError naming the first row with P(X = Y = 0) < 0.
CouplingTable coupling(const std::vector<double>& probs);

/// (2/pi) sum_i (E X_i^2 + E X_i (X_i - 1)).
double franken_bound(const std::vector<IntLaw>& laws);

struct FrankenRecord {
  double d0 = 0.0;
  double bound = 0.0;
  bool holds() const { return d0 <= bound; }
};
/// d0 of the exact sum against Poisson(sum E X_i).
FrankenRecord franken_check(const std::vector<IntLaw>& laws);

/// Rows (k, exactMass, poissonMass, absGap).
void write_poisson_csv(std::ostream& out, const IntLaw& exact, const IntLaw& poisson);

}  // namespace lltlab
