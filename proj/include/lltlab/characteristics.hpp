#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "lltlab/lattice.hpp"

namespace lltlab {

/// All functions read lattice indices, i.e. the relabelled integer-valued form.

/// sum_m |f(m) - f(m-1)|.
double delta_char(const LatticePmf& p);
/// sum_m min(f(m), f(m+1)).
double theta_char(const LatticePmf& p);
/// Distance to the nearest integer.
double dist_to_int(double x);
/// inf_a E <(X - a) d>^2 by a one-period grid scan followed by golden-section refinement.
/// d = 0 returns 0.
double mukhin_D(const LatticePmf& p, double d);
/// Law of X - X' with X' an independent copy.
LatticePmf symmetrized(const LatticePmf& p);
/// E <X* d>^2.
double mukhin_H(const LatticePmf& p, double d);
/// min_j P(X != j mod h).
double nu_char(const LatticePmf& p, Index h);

struct CharacteristicsRecord {
  double delta = 0.0;
  double theta = 0.0;
  std::map<double, double> mukhinD;
  std::map<double, double> H;
  std::map<Index, double> nu;
};

CharacteristicsRecord characteristics(const LatticePmf& p, const std::vector<double>& ds,
                                      const std::vector<Index>& hs);
/// Rows (kind, parameter, value).
void write_csv(std::ostream& out, const CharacteristicsRecord& rec);

}  // namespace lltlab
