#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace depthkit {

using Point = std::vector<double>;

/// Uniform distribution on [lo, hi], lo < hi.
struct UniformSegment {
  double lo;
  double hi;
};

/// Unit point mass at x.
struct Atom {
  double x;
};

struct Component {
  std::variant<UniformSegment, Atom> kind;
  double weight;
};

/// A probability measure on the real line: a finite mixture of uniform
/// segments and point atoms. The CDF is piecewise linear with jumps at atoms.
class Measure1D {
 public:
  /// Throws std::invalid_argument unless the components form a probability
  /// measure (non-empty, weights >= 0 summing to 1 within 1e-12, lo < hi).
  explicit Measure1D(std::vector<Component> components);

  static Measure1D uniform(double lo, double hi);
  static Measure1D atom(double x);

  const std::vector<Component>& components() const { return components_; }

  /// P((-inf, x]).
  double cdf(double x) const;
  /// P((-inf, x)).
  double cdf_left(double x) const;
  /// P([x, inf)).
  double tail(double x) const;
  /// P({x}).
  double atom_mass(double x) const;

  /// min{x : cdf(x) >= t} for t in (0, 1].
  double quantile(double t) const;
  /// max{x : tail(x) >= t} for t in (0, 1].
  double upper_quantile(double t) const;

  /// Sorted distinct segment endpoints and atom locations.
  std::vector<double> breakpoints() const;

  double support_min() const;
  double support_max() const;

  /// The image measure under x -> -x.
  Measure1D mirrored() const;

 private:
  std::vector<Component> components_;
};

/// Weighted point cloud in R^d, stored row-major.
class EmpiricalMeasure {
 public:
  /// Uniform weights 1/n.
  EmpiricalMeasure(std::size_t dimension, std::vector<double> coordinates);
  EmpiricalMeasure(std::size_t dimension, std::vector<double> coordinates,
                   std::vector<double> weights);

  static EmpiricalMeasure from_points(const std::vector<Point>& points);

  std::size_t size() const { return weights_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> point(std::size_t i) const {
    return {coordinates_.data() + i * dimension_, dimension_};
  }
  const std::vector<double>& coordinates() const { return coordinates_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  /// True when every weight equals 1/n; depths then count points exactly.
  bool has_uniform_weights() const { return uniform_; }

  /// Image measure under x -> A x + b (A row-major d x d).
  EmpiricalMeasure transformed(std::span<const double> matrix,
                               std::span<const double> shift) const;

 private:
  std::size_t dimension_;
  std::vector<double> coordinates_;
  std::vector<double> weights_;
  bool uniform_ = true;
};

struct MomentSummary {
  Point mean;
  /// Row-major d x d.
  std::vector<double> covariance;
  /// Set when the covariance is rank deficient or its condition number
  /// exceeds kMaxConditionNumber.
  bool degenerate = false;
  std::size_t rank = 0;

  std::size_t dimension() const { return mean.size(); }
};

inline constexpr double kMaxConditionNumber = 1e12;

/// Weighted mean and population covariance (weights used as probabilities).
MomentSummary moments(const EmpiricalMeasure& e);

/// Left-continuous weighted quantile of {p . x_i} at level t in (0, 1]:
/// the smallest projection value v with weight{p . x <= v} >= t.
double projection_quantile(const EmpiricalMeasure& e,
                           std::span<const double> direction, double t);

/// Projections p . x_i sorted ascending, paired with their weights.
struct SortedProjection {
  std::vector<double> values;
  std::vector<double> weights;
};
SortedProjection sorted_projection(const EmpiricalMeasure& e,
                                   std::span<const double> direction);

/// n i.i.d. draws: pick a component by weight, then invert its CDF.
/// Randomness comes from std::mt19937_64 seeded with `seed`; each draw
/// consumes two 64-bit outputs mapped to [0, 1) with 53-bit resolution, so
/// results are identical across platforms.
EmpiricalMeasure sample(const Measure1D& m, std::size_t n, std::uint64_t seed);

/// Maps a 64-bit generator output to [0, 1).
inline double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// File formats.

/// Plain-text Measure1D table: one component per line, either
/// `segment <lo> <hi> <weight>` or `atom <x> <weight>`; `#` starts a comment.
/// Malformed lines throw ParseError carrying the 1-based line number.
Measure1D read_measure1d(std::istream& in);
void write_measure1d(std::ostream& out, const Measure1D& m);

/// CSV with a mandatory header row, one point per row, d columns, and an
/// optional final column named `weight`.
EmpiricalMeasure read_empirical_csv(std::istream& in);
void write_empirical_csv(std::ostream& out, const EmpiricalMeasure& e);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace depthkit
