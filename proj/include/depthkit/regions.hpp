#pragma once

#include <cstddef>

#include "depthkit/depths.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/measures.hpp"

namespace depthkit {

/// Exact halfspace region [min{x : F(x) >= alpha}, max{x : P([x, inf)) >= alpha}],
/// Empty when the two ends cross. Throws for alpha <= 0.
Region1D region_1d_halfspace(const Measure1D& m, double alpha);

/// Bisection on the indicator D(z) >= alpha inside [lo, hi] for a
/// quasiconcave 1-D depth. Throws std::invalid_argument ("bracket too
/// small") when an endpoint already reaches alpha.
Region1D region_1d_from_depth(const DepthEvaluator& d, double alpha, double lo, double hi,
                              double tol = 1e-10);

/// Halfplane intersection {x : p_k . x <= h_alpha(p_k)} over n_directions
/// equally spaced directions (an outer approximation). Evaluators without a
/// support function get an inner polygon through boundary points located by
/// ray bisection from a deepest point.
Region2D region_2d(const DepthEvaluator& d, double alpha, std::size_t n_directions = 360,
                   double tol = 1e-10);

/// Region of the evaluator's dimension: exact interval from the support
/// function in 1-D when available, bisection otherwise, region_2d in 2-D.
TrimmedRegion trimmed_region(const DepthEvaluator& d, double alpha,
                             std::size_t n_directions = 360, double tol = 1e-10);

struct RegionProfile {
  double alpha_max = 0.0;
  Point argmax_witness;
};

/// max_z D(z): closed form when the evaluator knows it, else a grid over
/// the search box plus candidate centres, refined to 1e-6.
RegionProfile alpha_max(const DepthEvaluator& d);

}  // namespace depthkit
