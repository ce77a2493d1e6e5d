#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depthkit {

/// Feasibility of { x : A x = b, 0 <= x <= upper } for a dense row-major
/// m x n matrix A with few rows. Solved with a bounded-variable phase-I
/// simplex using Bland's rule, so it always terminates.
struct BoxFeasibilityResult {
  bool feasible = false;
  /// Residual sum of artificial variables at the phase-I optimum.
  double infeasibility = 0.0;
  /// A feasible point when `feasible`.
  std::vector<double> solution;
};

BoxFeasibilityResult box_feasibility(std::size_t rows, std::size_t cols,
                                     std::span<const double> matrix,
                                     std::span<const double> rhs,
                                     std::span<const double> upper,
                                     double tolerance = 1e-10);

}  // namespace depthkit
