#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lltlab {

using Index = std::int64_t;

/// One lattice atom: mass carried by the point v0 + index * D.
struct Atom {
  Index index = 0;
  double mass = 0.0;
};

/// Contiguous block of masses starting at lattice index `first`.
/// May carry a sub-probability (windowed computations).
struct DenseWindow {
  Index first = 0;
  std::vector<double> mass;

  Index last() const { return first + static_cast<Index>(mass.size()) - 1; }
  bool empty() const { return mass.empty(); }
  double at(Index k) const {
    return (k < first || k > last()) ? 0.0 : mass[static_cast<std::size_t>(k - first)];
  }
  double total() const;
};

/// Discretised one-sided power tail: P(X >= j) = c j^{-alpha} for j >= 1,
/// remaining mass 1 - c at zero.
struct PowerTailFamily {
  double alpha = 0.5;
  double c = 1.0;
  double truncation_mass = 1e-10;

  /// Exact (untruncated) mass at integer j.
  double mass(Index j) const;
  /// Exact P(X > j).
  double tail_above(Index j) const;
  /// Exact masses on [0, max_index], not renormalised.
  DenseWindow window(Index max_index) const;
};

struct TailDescriptor {
  PowerTailFamily family;
  Index truncation_index = 0;
  double discarded_mass = 0.0;
};

/// Probability mass function on the lattice v0 + D Z.
///
/// Atoms are stored sparsely, sorted by index, zero masses dropped.
/// Immutable after construction.
class LatticePmf {
 public:
  LatticePmf(double v0, double span, std::vector<Atom> atoms, double mass_tolerance = 1e-12);

  static LatticePmf point_mass(double value);
  static LatticePmf bernoulli(double p);
  /// Uniform on the integers lo..hi.
  static LatticePmf uniform(Index lo, Index hi);
  static LatticePmf from_window(const DenseWindow& w, double v0 = 0.0, double span = 1.0,
                                double mass_tolerance = 1e-12);
  /// Truncates the family at the smallest J whose discarded mass is below
  /// `family.truncation_mass` and renormalises; the discarded mass is kept
  /// in the tail descriptor.
  static LatticePmf power_tail(const PowerTailFamily& family, Index max_index = Index{1} << 24);

  double v0() const { return v0_; }
  double span() const { return span_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Index min_index() const { return atoms_.front().index; }
  Index max_index() const { return atoms_.back().index; }
  double value(Index k) const { return v0_ + static_cast<double>(k) * span_; }
  double mass(Index k) const;
  double total_mass() const;
  bool degenerate() const { return atoms_.size() == 1; }
  const std::optional<TailDescriptor>& tail() const { return tail_; }

  DenseWindow dense() const;
  /// X' = (X - v0) / D: same indices, v0 = 0, D = 1.
  LatticePmf relabeled() const;
  /// Law of -X.
  LatticePmf reflected() const;

 private:
  double v0_;
  double span_;
  std::vector<Atom> atoms_;
  std::optional<TailDescriptor> tail_;
};

/// Moments of a law. Missing entries mean the moment is infinite for the
/// analytic family (or was not requested).
struct MomentSummary {
  std::optional<double> mu;
  std::optional<double> sigma2;
  std::optional<double> mu3;

  double mean() const;
  double variance() const;
  double third_central() const;
};

/// Largest D' such that the support lies on a lattice of span D'.
/// Throws DegenerateError for a single-point support.
double maximal_span(const LatticePmf& p);
/// gcd of pairwise index differences of the support.
Index index_gcd(const LatticePmf& p);

MomentSummary moments(const LatticePmf& p);

std::complex<double> char_fn(const LatticePmf& p, double t);

// Distribution spec files.
nlohmann::json to_json(const LatticePmf& p);
LatticePmf pmf_from_json(const nlohmann::json& j);
LatticePmf load_pmf(const std::filesystem::path& path);
/// Shorthand used by the CLI: "bernoulli:p", "uniform:lo:hi", "point:v",
/// "pmf:k=m,k=m,...", "power_tail:alpha:c[:truncation]" or a path to a JSON file.
LatticePmf parse_distribution(const std::string& text);

}  // namespace lltlab
