#pragma once

#include <functional>

#include "orlat/errors.hpp"

namespace orlat {

// Tuning for integrals over [-pi, pi] of even integrands that blow up like
// |t|^{-1/2} at the origin.
struct QuadratureSpec {
  double abs_tol = 1e-9;
  // Central panel [-h, h] is integrated under the substitution t = s^2,
  // whose Jacobian cancels the inverse-square-root singularity.
  double singularity_halfwidth = 0.1;
  int max_panels = 1 << 16;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

// Integral of f over [-pi, pi], f even with an integrable ~|t|^{-1/2}
// singularity at 0 (smooth integrands are simply a cheap special case).
// Throws ConvergenceError (carrying the best estimate) if abs_tol is not
// reached within max_panels.
QuadResult singular_integral(const std::function<double(double)>& f, const QuadratureSpec& q);

}  // namespace orlat
