#include "lltlab/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/llt.hpp"

namespace lltlab {

double delta_char(const LatticePmf& p) {
  double s = 0.0;
  Index prev_index = p.min_index() - 2;
  double prev = 0.0;
  for (const Atom& a : p.atoms()) {
    if (a.index == prev_index + 1) {
      s += std::abs(a.mass - prev);
    } else {
      // gap: the previous atom falls to zero and this one rises from zero
      s += prev + a.mass;
    }
    prev_index = a.index;
    prev = a.mass;
  }
  return s + prev;
}

double theta_char(const LatticePmf& p) {
  double s = 0.0;
  const auto& atoms = p.atoms();
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
    if (atoms[i + 1].index == atoms[i].index + 1) s += std::min(atoms[i].mass, atoms[i + 1].mass);
  return s;
}

double dist_to_int(double x) { return std::abs(x - std::nearbyint(x)); }

namespace {

double mukhin_objective(const LatticePmf& p, double d, double a) {
  double s = 0.0;
  for (const Atom& at : p.atoms()) {
    const double r = dist_to_int((static_cast<double>(at.index) - a) * d);
    s += at.mass * r * r;
  }
  return s;
}

}  // namespace

double mukhin_D(const LatticePmf& p, double d) {
  if (std::abs(d) > 0.5) throw PreconditionError("mukhin_D: requires |d| <= 1/2");
  if (d == 0.0) return 0.0;
  const double period = 1.0 / std::abs(d);
  const auto steps = static_cast<Index>(std::ceil(period / 1e-4));
  const double h = period / static_cast<double>(steps);
  double best = mukhin_objective(p, d, 0.0), best_a = 0.0;
  for (Index i = 1; i < steps; ++i) {
    const double a = h * static_cast<double>(i);
    const double v = mukhin_objective(p, d, a);
    if (v < best) {
      best = v;
      best_a = a;
    }
  }
  // Golden-section on the bracketing cell pair.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = best_a - h, hi = best_a + h;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = mukhin_objective(p, d, x1), f2 = mukhin_objective(p, d, x2);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = mukhin_objective(p, d, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = mukhin_objective(p, d, x2);
    }
  }
  return std::min({best, f1, f2, mukhin_objective(p, d, 0.5 * (lo + hi))});
}

LatticePmf symmetrized(const LatticePmf& p) {
  const DenseWindow w = p.relabeled().dense();
  DenseWindow r = w;
  std::reverse(r.mass.begin(), r.mass.end());
  r.first = -w.last();
  DenseWindow s = convolve(w, r);
  apply_floor(s);
  return LatticePmf::from_window(s, 0.0, 1.0, 1e-9);
}

double mukhin_H(const LatticePmf& p, double d) {
  if (std::abs(d) > 0.5) throw PreconditionError("mukhin_H: requires |d| <= 1/2");
  const LatticePmf s = symmetrized(p);
  double h = 0.0;
  for (const Atom& a : s.atoms()) {
    const double r = dist_to_int(static_cast<double>(a.index) * d);
    h += a.mass * r * r;
  }
  return h;
}

double nu_char(const LatticePmf& p, Index h) {
  const std::vector<double> r = residue_law(p, h);
  return 1.0 - *std::max_element(r.begin(), r.end());
}

CharacteristicsRecord characteristics(const LatticePmf& p, const std::vector<double>& ds,
                                      const std::vector<Index>& hs) {
  CharacteristicsRecord rec;
  rec.delta = delta_char(p);
  rec.theta = theta_char(p);
  for (double d : ds) {
    rec.mukhinD[d] = mukhin_D(p, d);
    rec.H[d] = mukhin_H(p, d);
  }
  for (Index h : hs) rec.nu[h] = nu_char(p, h);
  return rec;
}

void write_csv(std::ostream& out, const CharacteristicsRecord& rec) {
  out << "# metric: lattice characteristics; delta=sum|f(m)-f(m-1)|, theta=sum min(f(m),f(m+1)), "
         "D(d)=inf_a E<(X-a)d>^2, H(d)=E<X* d>^2, nu(h)=min_j P(X!=j mod h)\n";
  out << "kind,parameter,value\n";
  out.precision(15);
  out << "delta,," << rec.delta << '\n';
  out << "theta,," << rec.theta << '\n';
  for (const auto& [d, v] : rec.mukhinD) out << "D," << d << ',' << v << '\n';
  for (const auto& [d, v] : rec.H) out << "H," << d << ',' << v << '\n';
  for (const auto& [h, v] : rec.nu) out << "nu," << h << ',' << v << '\n';
}

}  // namespace lltlab
