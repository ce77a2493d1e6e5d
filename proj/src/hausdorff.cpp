#include "depthkit/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depthkit {
namespace {

HausdorffResult combine(double ab, double ba) { return {std::max(ab, ba), ab, ba, HausdorffStatus::Defined}; }

double directed(const ConvexPolygon& from, const ConvexPolygon& to) {
  double worst = 0.0;
  for (const Vec2 v : from.vertices()) worst = std::max(worst, to.distance(v));
  return worst;
}

double point_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double directed(const std::vector<Point>& from, const std::vector<Point>& to) {
  double worst = 0.0;
  for (const Point& p : from) {
    double nearest = INFINITY;
    for (const Point& q : to) nearest = std::min(nearest, point_distance(p, q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

HausdorffResult HausdorffResult::undefined() {
  return {NAN, NAN, NAN, HausdorffStatus::UndefinedEmptyOperand};
}

HausdorffResult hausdorff_intervals(const Region1D& a, const Region1D& b) {
  if (a.is_empty() || b.is_empty()) return HausdorffResult::undefined();
  const double ab = std::max({0.0, b.lo() - a.lo(), a.hi() - b.hi()});
  const double ba = std::max({0.0, a.lo() - b.lo(), b.hi() - a.hi()});
  return combine(ab, ba);
}

HausdorffResult hausdorff_polygons(const ConvexPolygon& a, const ConvexPolygon& b) {
  return combine(directed(a, b), directed(b, a));
}

HausdorffResult hausdorff_regions(const Region2D& a, const Region2D& b) {
  if (a.is_empty() || b.is_empty()) return HausdorffResult::undefined();
  return hausdorff_polygons(*a.polygon, *b.polygon);
}

HausdorffResult hausdorff(const TrimmedRegion& a, const TrimmedRegion& b) {
  if (a.index() != b.index()) throw std::invalid_argument("Hausdorff distance between regions of different kinds");
  if (const auto* ia = std::get_if<Region1D>(&a)) return hausdorff_intervals(*ia, std::get<Region1D>(b));
  return hausdorff_regions(std::get<Region2D>(a), std::get<Region2D>(b));
}

HausdorffResult hausdorff_pointsets(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("point sets must be non-empty");
  const std::size_t d = a.front().size();
  auto check = [d](const std::vector<Point>& s) {
    for (const Point& p : s) {
      if (p.size() != d) throw std::invalid_argument("point sets mix dimensions");
    }
  };
  check(a);
  check(b);
  return combine(directed(a, b), directed(b, a));
}

bool region_subset(const TrimmedRegion& a, const TrimmedRegion& b, double tol) {
  if (a.index() != b.index()) throw std::invalid_argument("region kinds differ");
  if (const auto* ia = std::get_if<Region1D>(&a)) {
    const auto& ib = std::get<Region1D>(b);
    if (ia->is_empty()) return true;
    if (ib.is_empty()) return false;
    return ia->lo() >= ib.lo() - tol && ia->hi() <= ib.hi() + tol;
  }
  const auto& pa = std::get<Region2D>(a);
  const auto& pb = std::get<Region2D>(b);
  if (pa.is_empty()) return true;
  if (pb.is_empty()) return false;
  return directed(*pa.polygon, *pb.polygon) <= tol;
}

bool sandwich_check(const TrimmedRegion& inner, const TrimmedRegion& mid, const TrimmedRegion& outer,
                    double tol) {
  if (inner.index() != mid.index() || mid.index() != outer.index()) {
    throw std::invalid_argument("sandwich_check needs regions of one kind");
  }
  return region_subset(inner, mid, tol) && region_subset(mid, outer, tol);
}

}  // namespace depthkit
