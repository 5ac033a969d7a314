#pragma once

#include <stdexcept>
#include <string>

namespace orlat {

// Support/memory cap hit during an exact computation.  Never downgraded to
// silent truncation.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature (or another iterative scheme) stopped before reaching the
// requested tolerance; carries the best estimate it had.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
      : std::runtime_error(what), best(best_estimate), achieved(achieved_error) {}
  double best = 0.0;
  double achieved = 0.0;
};

}  // namespace orlat
