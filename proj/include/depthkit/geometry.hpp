#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace depthkit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(Vec2, Vec2) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b);
/// cross(b - o, c - o): positive when o, b, c turn counter-clockwise.
double orient(Vec2 o, Vec2 b, Vec2 c);
double norm(Vec2 a);

/// Distance from p to the closed segment [a, b].
double segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// A compact convex set in the plane given by its vertices in
/// counter-clockwise order. One vertex is a point, two a segment.
class ConvexPolygon {
 public:
  /// Convex hull of the given points; vertices closer than `merge` are
  /// identified and collinear vertices dropped. Throws on an empty input.
  static ConvexPolygon hull(std::vector<Vec2> points, double merge = 1e-12);
  static ConvexPolygon box(Vec2 lo, Vec2 hi);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Exact Euclidean distance from p to the polygon (0 inside).
  double distance(Vec2 p) const;
  bool contains(Vec2 p, double tol = 0.0) const { return distance(p) <= tol; }

  /// Intersection with {x : a . x <= c + slack}; nullopt when empty.
  std::optional<ConvexPolygon> clipped(Vec2 a, double c, double slack = 0.0) const;

  double diameter() const;
  Vec2 centroid() const;

  /// Points along the boundary spaced at most `pitch` apart, vertices included.
  std::vector<Vec2> boundary_samples(double pitch) const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Vec2> vertices_;
};

/// A trimmed region on the line: a closed interval or the empty set.
class Region1D {
 public:
  static Region1D empty() { return Region1D(); }
  static Region1D interval(double lo, double hi);

  bool is_empty() const { return !bounds_; }
  double lo() const { return bounds_->first; }
  double hi() const { return bounds_->second; }
  bool contains(double x, double tol = 0.0) const {
    return bounds_ && x >= lo() - tol && x <= hi() + tol;
  }

  friend bool operator==(const Region1D&, const Region1D&) = default;

 private:
  Region1D() = default;
  std::optional<std::pair<double, double>> bounds_;
};

/// A trimmed region in the plane. `inner` marks polygons built from
/// boundary points (an inner approximation) rather than supporting lines.
struct Region2D {
  std::optional<ConvexPolygon> polygon;
  bool inner = false;

  bool is_empty() const { return !polygon; }
};

using TrimmedRegion = std::variant<Region1D, Region2D>;

/// `lo,hi` or `EMPTY`, one line.
void write_region1d(std::ostream& out, const Region1D& r);
Region1D read_region1d(std::istream& in);
/// `x,y` header then one vertex per row in counter-clockwise order;
/// an empty region is the single line `EMPTY`.
void write_polygon_csv(std::ostream& out, const Region2D& r);
Region2D read_polygon_csv(std::istream& in);

}  // namespace depthkit
