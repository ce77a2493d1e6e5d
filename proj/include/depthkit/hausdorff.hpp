#pragma once

#include <vector>

#include "depthkit/geometry.hpp"
#include "depthkit/measures.hpp"

namespace depthkit {

enum class HausdorffStatus { Defined, UndefinedEmptyOperand };

struct HausdorffResult {
  double distance = 0.0;
  /// max over a in A of dist(a, B).
  double directed_ab = 0.0;
  double directed_ba = 0.0;
  HausdorffStatus status = HausdorffStatus::Defined;

  bool defined() const { return status == HausdorffStatus::Defined; }
  static HausdorffResult undefined();
};

HausdorffResult hausdorff_intervals(const Region1D& a, const Region1D& b);
/// Exact for convex inputs: directed distances are attained at vertices.
HausdorffResult hausdorff_polygons(const ConvexPolygon& a, const ConvexPolygon& b);
HausdorffResult hausdorff_regions(const Region2D& a, const Region2D& b);
/// Dispatch on the region kind; throws std::invalid_argument on a mismatch.
HausdorffResult hausdorff(const TrimmedRegion& a, const TrimmedRegion& b);

/// Brute force over two non-empty finite point sets of equal dimension.
HausdorffResult hausdorff_pointsets(const std::vector<Point>& a, const std::vector<Point>& b);

/// inner within mid within outer, each up to `tol`. An empty set is inside
/// everything. Throws std::invalid_argument when kinds differ.
bool sandwich_check(const TrimmedRegion& inner, const TrimmedRegion& mid, const TrimmedRegion& outer,
                    double tol = 1e-9);

/// a within b up to tol.
bool region_subset(const TrimmedRegion& a, const TrimmedRegion& b, double tol = 1e-9);

}  // namespace depthkit
