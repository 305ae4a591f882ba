#pragma once

#include <functional>

namespace lltlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
/// Throws QuadratureError when `max_depth` is exhausted before the tolerance is met.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-9, int max_depth = 48);

}  // namespace lltlab
