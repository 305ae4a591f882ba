#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "lltlab/lattice.hpp"

namespace lltlab {

/// Exact law of S_n = X_1 + ... + X_n on the lattice n*v0 + D Z.
struct SumLawTable {
  Index n = 0;
  LatticePmf base;
  MomentSummary meta;
  /// Mass dropped below the underflow floor or outside a window.
  double lost_mass = 0.0;
};

enum class ConvolutionMethod { Auto, Sparse, Dense, Fft };

/// Masses below this are dropped and counted as lost.
inline constexpr double kUnderflowFloor = 1e-300;
/// Support size above which Auto leaves the sparse path.
inline constexpr std::size_t kSparseLimit = 4096;
/// Dense windows larger than this many cells raise ResourceError.
inline constexpr std::size_t kMaxWindowCells = std::size_t{1} << 27;

/// Full linear convolution of two windows.
DenseWindow convolve(const DenseWindow& a, const DenseWindow& b,
                     ConvolutionMethod method = ConvolutionMethod::Auto);

/// Convolution restricted to output indices in [lo, hi]; lost mass is accumulated.
DenseWindow convolve_clipped(const DenseWindow& a, const DenseWindow& b, Index lo, Index hi,
                             double* lost = nullptr, ConvolutionMethod method = ConvolutionMethod::Auto);

/// Drops entries below kUnderflowFloor and trims zero edges. Returns removed mass.
double apply_floor(DenseWindow& w);

SumLawTable sum_law(const LatticePmf& p, Index n, ConvolutionMethod method = ConvolutionMethod::Auto);
/// Law of a sum of independent (not necessarily identical) summands, all on one lattice span.
SumLawTable sum_law_of(const std::vector<LatticePmf>& summands);
/// Tables for n = 1..n_max, built incrementally.
std::vector<SumLawTable> sum_law_family(const LatticePmf& p, Index n_max);

/// n-fold convolution of a nonnegative-index window, keeping indices <= max_index.
/// Exact on [0, max_index] when the window holds the exact masses on [0, max_index].
DenseWindow sum_law_window(const DenseWindow& w, Index n, Index max_index, double* lost = nullptr);

/// Law of sum_k a_k Z_k with independent Z_k ~ Bernoulli(q_k).
SumLawTable weighted_sum_law(const std::vector<Index>& weights, const std::vector<double>& probs);
/// Same law restricted to [0, max_index]; the dropped mass is returned through `lost`.
DenseWindow weighted_sum_window(const std::vector<Index>& weights, const std::vector<double>& probs,
                                Index max_index, double* lost = nullptr);

/// P(S_m = a, S_n = b) over rows a in [a_lo, a_hi] and columns b in [b_lo, b_hi] (lattice indices).
struct JointCell {
  Index m = 0;
  Index n = 0;
  Index a_lo = 0;
  Index b_lo = 0;
  Index rows = 0;
  Index cols = 0;
  std::vector<double> table;

  double at(Index a, Index b) const;
  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;
};

JointCell joint_law(const LatticePmf& p, Index m, Index n, Index a_lo, Index a_hi, Index b_lo, Index b_hi);
/// Whole-support joint law.
JointCell joint_law(const LatticePmf& p, Index m, Index n);

/// sup_x |P((S - a)/b < x) - Phi(x)|, evaluated on both sides of every atom.
double sup_cdf_distance(const LatticePmf& law, double a, double b);
/// Standardised form: a = E S, b = sd(S).
double sup_cdf_distance(const SumLawTable& law);
/// sup_k |F_1(k) - F_2(k)| for two laws with the same v0 and span.
double sup_cdf_distance(const LatticePmf& law, const LatticePmf& reference);

/// Rows (k, value_point, mass).
void write_csv(std::ostream& out, const SumLawTable& law);

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal density.
double normal_pdf(double x);

}  // namespace lltlab
