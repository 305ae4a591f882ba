#include "lltlab/exact.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>

#include "lltlab/errors.hpp"

namespace lltlab {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void check_budget(std::size_t cells) {
  if (cells > kMaxWindowCells) throw ResourceError("convolution window exceeds the memory budget");
}

std::size_t nonzeros(const DenseWindow& w) {
  return static_cast<std::size_t>(std::count_if(w.mass.begin(), w.mass.end(), [](double m) { return m > 0.0; }));
}

std::vector<double> conv_sparse(const DenseWindow& a, const DenseWindow& b) {
  std::vector<double> out(a.mass.size() + b.mass.size() - 1, 0.0);
  std::vector<std::pair<std::size_t, double>> bn;
  for (std::size_t j = 0; j < b.mass.size(); ++j)
    if (b.mass[j] != 0.0) bn.emplace_back(j, b.mass[j]);
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    const double x = a.mass[i];
    if (x == 0.0) continue;
    for (const auto& [j, y] : bn) out[i + j] += x * y;
  }
  return out;
}

std::vector<double> conv_dense(const DenseWindow& a, const DenseWindow& b) {
  const std::size_t na = a.mass.size(), nb = b.mass.size();
  std::vector<double> out(na + nb - 1, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    const double x = a.mass[i];
    double* o = out.data() + i;
    const double* y = b.mass.data();
    for (std::size_t j = 0; j < nb; ++j) o[j] += x * y[j];
  }
  return out;
}

std::size_t fft_size(std::size_t n) {
  std::size_t s = 1;
  while (s < n) s <<= 1;
  return s;
}

std::vector<double> conv_fft(const DenseWindow& a, const DenseWindow& b) {
  const std::size_t out_len = a.mass.size() + b.mass.size() - 1;
  const std::size_t len = fft_size(out_len);
  const std::size_t half = len / 2 + 1;
  double* ra = fftw_alloc_real(len);
  double* rb = fftw_alloc_real(len);
  fftw_complex* ca = fftw_alloc_complex(half);
  fftw_complex* cb = fftw_alloc_complex(half);
  fftw_plan pa, pb, pinv;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(len), ra, ca, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(len), rb, cb, FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(static_cast<int>(len), ca, ra, FFTW_ESTIMATE);
  }
  std::fill(ra, ra + len, 0.0);
  std::fill(rb, rb + len, 0.0);
  std::copy(a.mass.begin(), a.mass.end(), ra);
  std::copy(b.mass.begin(), b.mass.end(), rb);
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t i = 0; i < half; ++i) {
    const double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
    const double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
    ca[i][0] = re;
    ca[i][1] = im;
  }
  fftw_execute(pinv);
  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = std::max(0.0, ra[i] * scale);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pinv);
  }
  fftw_free(ra);
  fftw_free(rb);
  fftw_free(ca);
  fftw_free(cb);
  return out;
}

ConvolutionMethod resolve(const DenseWindow& a, const DenseWindow& b, ConvolutionMethod method) {
  if (method != ConvolutionMethod::Auto) return method;
  if (nonzeros(a) < kSparseLimit && nonzeros(b) < kSparseLimit) return ConvolutionMethod::Sparse;
  const double work = static_cast<double>(a.mass.size()) * static_cast<double>(b.mass.size());
  return work <= double(1 << 26) ? ConvolutionMethod::Dense : ConvolutionMethod::Fft;
}

}  // namespace

DenseWindow convolve(const DenseWindow& a, const DenseWindow& b, ConvolutionMethod method) {
  if (a.empty() || b.empty()) return {};
  check_budget(a.mass.size() + b.mass.size());
  DenseWindow out;
  out.first = a.first + b.first;
  switch (resolve(a, b, method)) {
    case ConvolutionMethod::Sparse:
      out.mass = conv_sparse(a, b);
      break;
    case ConvolutionMethod::Dense:
      out.mass = conv_dense(a, b);
      break;
    default:
      out.mass = conv_fft(a, b);
      break;
  }
  return out;
}

double apply_floor(DenseWindow& w) {
  double lost = 0.0;
  for (double& m : w.mass) {
    if (m != 0.0 && m < kUnderflowFloor) {
      lost += m;
      m = 0.0;
    }
  }
  std::size_t lo = 0, hi = w.mass.size();
  while (lo < hi && w.mass[lo] == 0.0) ++lo;
  while (hi > lo && w.mass[hi - 1] == 0.0) --hi;
  if (lo > 0 || hi < w.mass.size()) {
    w.mass = std::vector<double>(w.mass.begin() + static_cast<std::ptrdiff_t>(lo),
                                 w.mass.begin() + static_cast<std::ptrdiff_t>(hi));
    w.first += static_cast<Index>(lo);
  }
  return lost;
}

namespace {

void clip(DenseWindow& w, Index lo, Index hi, double* lost) {
  double dropped = 0.0;
  if (w.empty()) return;
  if (w.first < lo) {
    const std::size_t cut = static_cast<std::size_t>(std::min<Index>(lo - w.first, static_cast<Index>(w.mass.size())));
    for (std::size_t i = 0; i < cut; ++i) dropped += w.mass[i];
    w.mass.erase(w.mass.begin(), w.mass.begin() + static_cast<std::ptrdiff_t>(cut));
    w.first = lo;
  }
  if (!w.empty() && w.last() > hi) {
    const Index keep = std::max<Index>(0, hi - w.first + 1);
    for (std::size_t i = static_cast<std::size_t>(keep); i < w.mass.size(); ++i) dropped += w.mass[i];
    w.mass.resize(static_cast<std::size_t>(keep));
  }
  if (lost) *lost += dropped;
}

}  // namespace

DenseWindow convolve_clipped(const DenseWindow& a, const DenseWindow& b, Index lo, Index hi, double* lost,
                             ConvolutionMethod method) {
  DenseWindow out = convolve(a, b, method);
  clip(out, lo, hi, lost);
  return out;
}

namespace {

MomentSummary scaled_moments(const MomentSummary& m, double n) {
  MomentSummary s;
  if (m.mu) s.mu = *m.mu * n;
  if (m.sigma2) s.sigma2 = *m.sigma2 * n;
  if (m.mu3) s.mu3 = *m.mu3 * n;
  return s;
}

LatticePmf window_to_pmf(const DenseWindow& w, double v0, double span, double lost) {
  return LatticePmf::from_window(w, v0, span, 1e-8 + lost);
}

}  // namespace

SumLawTable sum_law(const LatticePmf& p, Index n, ConvolutionMethod method) {
  if (n < 1) throw PreconditionError("sum_law: n must be at least 1");
  const auto gaps = static_cast<std::size_t>(p.atoms().back().index - p.atoms().front().index);
  // The final window has n * gaps + 1 cells; reject before allocating anything.
  if (gaps > 0 && static_cast<std::size_t>(n) > (kMaxWindowCells - 1) / gaps) check_budget(kMaxWindowCells + 1);
  DenseWindow base = p.dense();
  DenseWindow acc{0, {1.0}};
  double lost = 0.0;
  Index k = n;
  while (true) {
    if (k & 1) {
      acc = convolve(acc, base, method);
      lost += apply_floor(acc);
    }
    k >>= 1;
    if (k == 0) break;
    base = convolve(base, base, method);
    lost += apply_floor(base);
  }
  const double nd = static_cast<double>(n);
  return SumLawTable{n, window_to_pmf(acc, p.v0() * nd, p.span(), lost), scaled_moments(moments(p), nd), lost};
}

SumLawTable sum_law_of(const std::vector<LatticePmf>& summands) {
  if (summands.empty()) throw PreconditionError("sum_law_of: no summands");
  const double span = summands.front().span();
  DenseWindow acc{0, {1.0}};
  double v0 = 0.0, lost = 0.0;
  MomentSummary meta;
  meta.mu = 0.0;
  meta.sigma2 = 0.0;
  meta.mu3 = 0.0;
  for (const LatticePmf& p : summands) {
    if (std::abs(p.span() - span) > 1e-12 * span) throw PreconditionError("sum_law_of: summands must share a span");
    check_budget(static_cast<std::size_t>(p.atoms().back().index - p.atoms().front().index) + acc.mass.size());
    acc = convolve(acc, p.dense());
    lost += apply_floor(acc);
    v0 += p.v0();
    const MomentSummary m = moments(p);
    meta.mu = (meta.mu && m.mu) ? std::optional<double>(*meta.mu + *m.mu) : std::nullopt;
    meta.sigma2 = (meta.sigma2 && m.sigma2) ? std::optional<double>(*meta.sigma2 + *m.sigma2) : std::nullopt;
    meta.mu3 = (meta.mu3 && m.mu3) ? std::optional<double>(*meta.mu3 + *m.mu3) : std::nullopt;
  }
  return SumLawTable{static_cast<Index>(summands.size()), window_to_pmf(acc, v0, span, lost), meta, lost};
}

std::vector<SumLawTable> sum_law_family(const LatticePmf& p, Index n_max) {
  std::vector<SumLawTable> out;
  if (n_max < 1) return out;
  out.reserve(static_cast<std::size_t>(n_max));
  const DenseWindow one = p.dense();
  const MomentSummary m = moments(p);
  DenseWindow acc = one;
  double lost = 0.0;
  for (Index n = 1; n <= n_max; ++n) {
    if (n > 1) {
      acc = convolve(acc, one);
      lost += apply_floor(acc);
    }
    const double nd = static_cast<double>(n);
    out.push_back(SumLawTable{n, window_to_pmf(acc, p.v0() * nd, p.span(), lost), scaled_moments(m, nd), lost});
  }
  return out;
}

DenseWindow sum_law_window(const DenseWindow& w, Index n, Index max_index, double* lost) {
  if (n < 1) throw PreconditionError("sum_law_window: n must be at least 1");
  if (w.first < 0) throw PreconditionError("sum_law_window: window must start at a nonnegative index");
  DenseWindow base = w;
  clip(base, 0, max_index, lost);
  DenseWindow acc{0, {1.0}};
  Index k = n;
  while (true) {
    if (k & 1) acc = convolve_clipped(acc, base, 0, max_index, lost);
    k >>= 1;
    if (k == 0) break;
    base = convolve_clipped(base, base, 0, max_index, nullptr);
  }
  return acc;
}

DenseWindow weighted_sum_window(const std::vector<Index>& weights, const std::vector<double>& probs,
                                Index max_index, double* lost) {
  if (weights.size() != probs.size()) throw PreconditionError("weighted_sum_law: weights and probs differ in length");
  Index reach = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0) throw PreconditionError("weighted_sum_law: weights must be nonnegative");
    if (!(probs[k] >= 0.0 && probs[k] <= 1.0)) throw PreconditionError("weighted_sum_law: probs must lie in [0, 1]");
    reach += weights[k];
  }
  const Index top = std::min(reach, max_index);
  check_budget(static_cast<std::size_t>(top) + 1);
  std::vector<double> f(static_cast<std::size_t>(top) + 1, 0.0);
  f[0] = 1.0;
  Index hi = 0;
  double dropped = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double q = probs[k];
    if (q == 0.0) continue;
    const Index a = weights[k];
    if (a == 0) continue;
    const Index new_hi = std::min(hi + a, top);
    for (Index j = hi + a; j > new_hi && j - a >= 0; --j) dropped += q * f[static_cast<std::size_t>(j - a)];
    for (Index j = new_hi; j >= 0; --j) {
      const double keep = (j <= hi) ? (1.0 - q) * f[static_cast<std::size_t>(j)] : 0.0;
      const double move = (j >= a) ? q * f[static_cast<std::size_t>(j - a)] : 0.0;
      f[static_cast<std::size_t>(j)] = keep + move;
    }
    hi = new_hi;
  }
  f.resize(static_cast<std::size_t>(hi) + 1);
  if (lost) *lost += dropped;
  return DenseWindow{0, std::move(f)};
}

SumLawTable weighted_sum_law(const std::vector<Index>& weights, const std::vector<double>& probs) {
  DenseWindow w = weighted_sum_window(weights, probs, std::numeric_limits<Index>::max() / 4);
  const double lost = apply_floor(w);
  MomentSummary meta;
  double mu = 0.0, var = 0.0, m3 = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double a = static_cast<double>(weights[k]), q = probs[k];
    mu += a * q;
    var += a * a * q * (1.0 - q);
    m3 += a * a * a * q * (1.0 - q) * (1.0 - 2.0 * q);
  }
  meta.mu = mu;
  meta.sigma2 = var;
  meta.mu3 = m3;
  return SumLawTable{static_cast<Index>(weights.size()), window_to_pmf(w, 0.0, 1.0, lost), meta, lost};
}

double JointCell::at(Index a, Index b) const {
  const Index i = a - a_lo, j = b - b_lo;
  if (i < 0 || j < 0 || i >= rows || j >= cols) return 0.0;
  return table[static_cast<std::size_t>(i * cols + j)];
}

std::vector<double> JointCell::row_marginal() const {
  std::vector<double> r(static_cast<std::size_t>(rows), 0.0);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) r[static_cast<std::size_t>(i)] += table[static_cast<std::size_t>(i * cols + j)];
  return r;
}

std::vector<double> JointCell::col_marginal() const {
  std::vector<double> c(static_cast<std::size_t>(cols), 0.0);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) c[static_cast<std::size_t>(j)] += table[static_cast<std::size_t>(i * cols + j)];
  return c;
}

JointCell joint_law(const LatticePmf& p, Index m, Index n, Index a_lo, Index a_hi, Index b_lo, Index b_hi) {
  if (!(m >= 1 && m < n)) throw PreconditionError("joint_law: need 1 <= m < n");
  if (a_hi < a_lo || b_hi < b_lo) throw PreconditionError("joint_law: empty window");
  const DenseWindow sm = sum_law(p, m).base.dense();
  const DenseWindow inc = sum_law(p, n - m).base.dense();
  JointCell cell;
  cell.m = m;
  cell.n = n;
  cell.a_lo = a_lo;
  cell.b_lo = b_lo;
  cell.rows = a_hi - a_lo + 1;
  cell.cols = b_hi - b_lo + 1;
  check_budget(static_cast<std::size_t>(cell.rows) * static_cast<std::size_t>(cell.cols));
  cell.table.assign(static_cast<std::size_t>(cell.rows * cell.cols), 0.0);
  for (Index a = a_lo; a <= a_hi; ++a) {
    const double pa = sm.at(a);
    if (pa == 0.0) continue;
    for (Index b = b_lo; b <= b_hi; ++b)
      cell.table[static_cast<std::size_t>((a - a_lo) * cell.cols + (b - b_lo))] = pa * inc.at(b - a);
  }
  return cell;
}

JointCell joint_law(const LatticePmf& p, Index m, Index n) {
  const Index lo = p.min_index(), hi = p.max_index();
  return joint_law(p, m, n, m * lo, m * hi, n * lo, n * hi);
}

double sup_cdf_distance(const LatticePmf& law, double a, double b) {
  if (law.degenerate()) throw DegenerateError("sup_cdf_distance: degenerate law");
  if (!(b > 0.0)) throw PreconditionError("sup_cdf_distance: scale must be positive");
  double below = 0.0, sup = 0.0;
  for (const Atom& atom : law.atoms()) {
    const double phi = normal_cdf((law.value(atom.index) - a) / b);
    sup = std::max(sup, std::abs(below - phi));
    below += atom.mass;
    sup = std::max(sup, std::abs(below - phi));
  }
  return sup;
}

double sup_cdf_distance(const SumLawTable& law) {
  if (law.base.degenerate()) throw DegenerateError("sup_cdf_distance: degenerate law");
  const MomentSummary m = moments(law.base);
  return sup_cdf_distance(law.base, m.mean(), std::sqrt(m.variance()));
}

double sup_cdf_distance(const LatticePmf& law, const LatticePmf& reference) {
  if (std::abs(law.span() - reference.span()) > 1e-12 || std::abs(law.v0() - reference.v0()) > 1e-12)
    throw PreconditionError("sup_cdf_distance: laws live on different lattices");
  const Index lo = std::min(law.min_index(), reference.min_index());
  const Index hi = std::max(law.max_index(), reference.max_index());
  double fa = 0.0, fb = 0.0, sup = 0.0;
  for (Index k = lo; k <= hi; ++k) {
    fa += law.mass(k);
    fb += reference.mass(k);
    sup = std::max(sup, std::abs(fa - fb));
  }
  return sup;
}

void write_csv(std::ostream& out, const SumLawTable& law) {
  out << "# metric: law of S_n, n=" << law.n << "; value_point = n*v0 + k*D\n";
  out << "k,value_point,mass\n";
  out.precision(17);
  for (const Atom& a : law.base.atoms()) out << a.index << ',' << law.base.value(a.index) << ',' << a.mass << '\n';
}

}  // namespace lltlab
