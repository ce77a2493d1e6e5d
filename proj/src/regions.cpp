#include "depthkit/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depthkit {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

double box_scale(const SearchBox& box) {
  double s = 0.0;
  for (std::size_t k = 0; k < box.lo.size(); ++k) {
    s = std::max({s, std::abs(box.lo[k]), std::abs(box.hi[k]), box.hi[k] - box.lo[k]});
  }
  return s;
}

// Shrinks [out, in] around the level crossing of a monotone indicator.
template <typename Inside>
double bisect(double out, double in, double tol, Inside inside) {
  while (std::abs(in - out) > tol) {
    const double mid = 0.5 * (in + out);
    if (mid == in || mid == out) break;
    if (inside(mid)) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

Region2D ray_region(const DepthEvaluator& d, double alpha, std::size_t n_directions, double tol) {
  const RegionProfile profile = alpha_max(d);
  if (profile.alpha_max < alpha) return {};
  const Vec2 c{profile.argmax_witness[0], profile.argmax_witness[1]};
  const double reach = 2.0 * box_scale(d.search_box()) + 1.0;
  std::vector<Vec2> boundary;
  for (const Point& p : circle_directions(n_directions)) {
    const Vec2 u{p[0], p[1]};
    auto inside = [&](double t) {
      const Vec2 z = c + t * u;
      return d.depth(Point{z.x, z.y}) >= alpha;
    };
    double far = reach;
    for (int k = 0; k < 60 && inside(far); ++k) far *= 2.0;
    const double t = bisect(far, 0.0, tol, inside);
    boundary.push_back(c + t * u);
  }
  return {ConvexPolygon::hull(std::move(boundary)), true};
}

/// [lo, hi], or empty when the ends cross. At the deepest level the two
/// interpolated ends can cross by rounding; that case is a singleton.
template <class Depth>
Region1D interval_from_ends(double lo, double hi, double alpha, Depth depth) {
  if (lo <= hi) return Region1D::interval(lo, hi);
  const double mid = 0.5 * (lo + hi);
  if (lo - hi <= 1e-12 * (1.0 + std::abs(mid)) && depth(mid) >= alpha - 1e-12) return Region1D::interval(mid, mid);
  return Region1D::empty();
}

}  // namespace

Region1D region_1d_halfspace(const Measure1D& m, double alpha) {
  require_alpha(alpha);
  if (alpha > 1.0) return Region1D::empty();
  return interval_from_ends(m.quantile(alpha), m.upper_quantile(alpha), alpha,
                            [&m](double x) { return halfspace_depth_1d(x, m); });
}

Region1D region_1d_from_depth(const DepthEvaluator& d, double alpha, double lo, double hi, double tol) {
  require_alpha(alpha);
  if (d.dimension() != 1) throw std::invalid_argument("region_1d_from_depth needs a 1-D depth");
  if (!(lo < hi)) throw std::invalid_argument("bracket needs lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  auto inside = [&](double x) { return d.depth(Point{x}) >= alpha; };
  if (inside(lo) || inside(hi)) throw std::invalid_argument("bracket too small: an endpoint reaches alpha");

  std::vector<double> probes;
  constexpr int kGrid = 2000;
  for (int k = 1; k < kGrid; ++k) probes.push_back(lo + (hi - lo) * k / kGrid);
  for (const Point& c : d.candidate_centers()) probes.push_back(c[0]);
  if (const auto best = d.known_maximum()) probes.push_back(best->witness[0]);

  std::optional<double> seed;
  for (double x : probes) {
    if (x > lo && x < hi && inside(x)) {
      seed = x;
      break;
    }
  }
  if (!seed) return Region1D::empty();
  return Region1D::interval(bisect(lo, *seed, tol, inside), bisect(hi, *seed, tol, inside));
}

Region2D region_2d(const DepthEvaluator& d, double alpha, std::size_t n_directions, double tol) {
  require_alpha(alpha);
  if (d.dimension() != 2) throw std::invalid_argument("region_2d needs a 2-D depth");
  if (n_directions < 3) throw std::invalid_argument("region_2d needs at least 3 directions");
  const Point east{1.0, 0.0};
  if (!d.support(alpha, east)) return ray_region(d, alpha, n_directions, tol);

  auto h = [&](const Point& p) { return *d.support(alpha, p); };
  const double right = h(east);
  const double left = -h({-1.0, 0.0});
  const double top = h({0.0, 1.0});
  const double bottom = -h({0.0, -1.0});
  if (!std::isfinite(right) || !std::isfinite(left) || !std::isfinite(top) || !std::isfinite(bottom) ||
      left > right || bottom > top) {
    return {};
  }
  const double scale = 1.0 + std::max({std::abs(left), std::abs(right), std::abs(top), std::abs(bottom)});
  std::optional<ConvexPolygon> poly = ConvexPolygon::box({left, bottom}, {right, top});
  for (const Point& p : circle_directions(n_directions)) {
    const double c = h(p);
    if (!std::isfinite(c)) return {};
    poly = poly->clipped({p[0], p[1]}, c, 1e-12 * scale);
    if (!poly) return {};
  }
  if (poly->diameter() <= 1e-9 * scale) poly = ConvexPolygon::hull({poly->centroid()});
  return {std::move(poly), false};
}

TrimmedRegion trimmed_region(const DepthEvaluator& d, double alpha, std::size_t n_directions, double tol) {
  require_alpha(alpha);
  if (d.dimension() == 2) return region_2d(d, alpha, n_directions, tol);
  if (d.dimension() != 1) throw std::invalid_argument("regions are implemented for d = 1 or 2");
  const Point up{1.0};
  if (const auto hi = d.support(alpha, up)) {
    const double lo = -*d.support(alpha, Point{-1.0});
    if (!std::isfinite(*hi) || !std::isfinite(lo)) return Region1D::empty();
    return interval_from_ends(lo, *hi, alpha, [&d](double x) { return d.depth(Point{x}); });
  }
  const SearchBox box = d.search_box();
  const double margin = box.hi[0] - box.lo[0] + 1.0;
  return region_1d_from_depth(d, alpha, box.lo[0] - margin, box.hi[0] + margin, tol);
}

RegionProfile alpha_max(const DepthEvaluator& d) {
  if (const auto known = d.known_maximum()) return {known->value, known->witness};
  const std::size_t dim = d.dimension();
  if (dim != 1 && dim != 2) throw std::invalid_argument("alpha_max is implemented for d = 1 or 2");

  RegionProfile best{-1.0, {}};
  auto consider = [&](const Point& z) {
    const double v = d.depth(z);
    if (v > best.alpha_max) best = {v, z};
  };
  for (const Point& c : d.candidate_centers()) consider(c);

  SearchBox box = d.search_box();
  const int grid = dim == 1 ? 4000 : 100;
  std::vector<double> step(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double pad = 0.05 * (box.hi[k] - box.lo[k]) + 1e-9;
    box.lo[k] -= pad;
    box.hi[k] += pad;
    step[k] = (box.hi[k] - box.lo[k]) / grid;
  }
  if (dim == 1) {
    for (int i = 0; i <= grid; ++i) consider({box.lo[0] + i * step[0]});
  } else {
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; j <= grid; ++j) consider({box.lo[0] + i * step[0], box.lo[1] + j * step[1]});
    }
  }

  // Local refinement around the incumbent with geometrically shrinking windows.
  constexpr int kLocal = 10;
  double width = *std::max_element(step.begin(), step.end());
  while (width > 1e-7) {
    const Point center = best.argmax_witness;
    if (dim == 1) {
      for (int i = -kLocal; i <= kLocal; ++i) consider({center[0] + width * i / kLocal});
    } else {
      for (int i = -kLocal; i <= kLocal; ++i) {
        for (int j = -kLocal; j <= kLocal; ++j) {
          consider({center[0] + width * i / kLocal, center[1] + width * j / kLocal});
        }
      }
    }
    width *= 0.25;
  }
  return best;
}

}  // namespace depthkit
