#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "depthkit/measures.hpp"

namespace depthkit {

/// Cumulative weighting r_alpha(t) on [0, 1] for weighted-mean regions:
/// non-decreasing in t with r(0) = 0 and r(1) = 1.
class WeightFunction {
 public:
  using Fn = std::function<double(double alpha, double t)>;
  WeightFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  /// r_alpha(t) = max(0, t - (1 - alpha)) / alpha. Generates zonoid regions.
  static WeightFunction zonoid();

  const std::string& name() const { return name_; }
  double operator()(double alpha, double t) const { return fn_(alpha, t); }

 private:
  std::string name_;
  Fn fn_;
};

/// Axis-aligned box used to bracket searches over a depth's support.
struct SearchBox {
  Point lo;
  Point hi;
};

/// A depth function D(. | P) bound to a fixed measure. Implementations are
/// immutable after construction and safe to evaluate concurrently.
class DepthEvaluator {
 public:
  virtual ~DepthEvaluator() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  /// D(z | P) in [0, 1].
  virtual double depth(std::span<const double> z) const = 0;

  /// When the trimmed region D_alpha(P) equals the intersection over all
  /// directions p of {x : p.x <= h(p)}, returns h(p) (-inf for an empty
  /// region). Evaluators without such a representation return nullopt.
  virtual std::optional<double> support(double alpha, std::span<const double> direction) const;

  /// A box containing the support of P (and hence every non-empty region).
  virtual SearchBox search_box() const = 0;

  /// Points worth probing when maximizing the depth.
  virtual std::vector<Point> candidate_centers() const { return {}; }

  struct Maximum {
    double value;
    Point witness;
  };
  /// Closed-form maximum depth and a maximizer, when known.
  virtual std::optional<Maximum> known_maximum() const { return std::nullopt; }

  double depth(const Point& z) const { return depth(std::span<const double>(z)); }
};

using DepthPtr = std::shared_ptr<const DepthEvaluator>;

// ---------------------------------------------------------------------------
// Depth operations

/// [1 + (z - mu)' S^{-1} (z - mu)]^{-1}. Throws std::domain_error naming the
/// rank when the covariance is degenerate.
double mahalanobis_depth(std::span<const double> z, const MomentSummary& m);

/// E[((p'X - E p'X)^+)^2] under e.
double upper_semivariance(const EmpiricalMeasure& e, std::span<const double> direction);

/// inf over unit directions p of [1 + (p'z - mu_p)^+ / sigma+_p]^{-1}.
/// Exact in 1-D (p = +-1); for d = 2 the infimum runs over n_directions
/// equally spaced angles and is an upper bound on the true value. Throws
/// std::domain_error when a probed direction has zero upper semi-variance.
double asym_mahalanobis_depth(std::span<const double> z, const EmpiricalMeasure& e,
                              std::size_t n_directions = 360);

/// min(P((-inf, z]), P([z, inf))).
double halfspace_depth_1d(double z, const Measure1D& m);

/// Exact Tukey depth for d in {1, 2}: the minimum weight of a closed
/// halfplane with z on its boundary. The 2-D case is an O(n log n) angular
/// sweep. Throws std::domain_error for d >= 3.
double halfspace_depth_emp(std::span<const double> z, const EmpiricalMeasure& e);

/// Exhaustive O(n^2) reference for halfspace_depth_emp in the plane: every
/// line through z and a sample point, both orientations, with boundary
/// points on either ray assigned by an infinitesimal rotation.
double brute_halfspace_oracle(std::span<const double> z, const EmpiricalMeasure& e);

/// Largest alpha with z = sum lambda_i x_i, sum lambda_i = 1,
/// 0 <= lambda_i <= w_i / alpha. Bisection on alpha over LP feasibility to
/// absolute tolerance tol; 0 outside the convex hull of the support.
double zonoid_depth(std::span<const double> z, const EmpiricalMeasure& e, double tol = 1e-9);

/// Feasibility of the zonoid membership program at a fixed alpha.
bool zonoid_contains(std::span<const double> z, const EmpiricalMeasure& e, double alpha);

/// Support function of the weighted-mean region: the Stieltjes sum of the
/// empirical quantile function of p'X against r_alpha.
double wm_region_support(const EmpiricalMeasure& e, double alpha, const WeightFunction& w,
                         std::span<const double> direction);

// ---------------------------------------------------------------------------
// Evaluators

DepthPtr make_mahalanobis(MomentSummary m);
DepthPtr make_mahalanobis(const EmpiricalMeasure& e);
DepthPtr make_asym_mahalanobis(EmpiricalMeasure e, std::size_t n_directions = 360);
DepthPtr make_halfspace(Measure1D m);
DepthPtr make_halfspace(EmpiricalMeasure e);
DepthPtr make_zonoid(EmpiricalMeasure e, double tol = 1e-9);

/// Wraps an arbitrary function; no support representation.
DepthPtr make_function_depth(std::string name, std::size_t dimension, SearchBox box,
                             std::function<double(std::span<const double>)> fn);

/// Builds the named depth ("mahalanobis", "asym-mahalanobis", "halfspace",
/// "zonoid") for an empirical measure. Throws std::invalid_argument for an
/// unknown name.
DepthPtr make_depth(const std::string& name, const EmpiricalMeasure& e);

/// `count` unit vectors at angles 2 pi k / count.
std::vector<Point> circle_directions(std::size_t count);

}  // namespace depthkit
