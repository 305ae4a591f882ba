#include "lltlab/quadrature.hpp"

#include <cmath>

#include "lltlab/errors.hpp"

namespace lltlab {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int evaluations = 0;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  // whole = Simpson estimate on [a, b]; fa, fm, fb at a, (a+b)/2, b.
  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                 double& err) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth <= 0) {
      exhausted = true;
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  int max_depth) {
  if (!(tol > 0.0)) throw PreconditionError("adaptive_simpson: tolerance must be positive");
  QuadratureResult r;
  if (a == b) return r;
  Simpson s{f};
  // Four initial panels keep periodic integrands from fooling the first estimate.
  constexpr int kPanels = 4;
  const double h = (b - a) / kPanels;
  double err = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * h, hi = (i + 1 == kPanels) ? b : a + (i + 1) * h;
    const double flo = s.eval(lo), fhi = s.eval(hi), fm = s.eval(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    r.value += s.recurse(lo, hi, flo, fm, fhi, whole, tol / kPanels, max_depth, err);
  }
  r.error_estimate = err;
  r.evaluations = s.evaluations;
  if (s.exhausted || !std::isfinite(r.value))
    throw QuadratureError("adaptive_simpson: tolerance not reached within the depth limit");
  return r;
}

}  // namespace lltlab
