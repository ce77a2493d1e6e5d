#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthkit/depths.hpp"
#include "depthkit/hausdorff.hpp"
#include "depthkit/regions.hpp"

namespace depthkit {

/// One element P_n of a sequence of measures, represented by its depth.
struct SequenceMember {
  std::size_t n;
  DepthPtr depth;
};
using DepthSequence = std::vector<SequenceMember>;

struct AlphaDistance {
  double alpha;
  HausdorffResult result;
};

struct PerNRecord {
  std::size_t n = 0;
  /// Grid supremum of |D(z|P_n) - D(z|P)|: a lower bound of the true sup.
  double sup_depth_gap = 0.0;
  Point sup_depth_witness;
  std::vector<double> depth_gaps_at_probes;
  std::vector<AlphaDistance> region_hausdorff_at_alphas;
  /// Grid supremum over the alpha interval A; nullopt when any distance on
  /// the grid is undefined.
  std::optional<double> sup_region_hausdorff_on_A;
  double sup_region_witness_alpha = 0.0;
  double alpha_max_n = 0.0;
};

struct Verdict {
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Ordered key/value echo of every setting that produced a report.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct ConvergenceReport {
  std::vector<PerNRecord> per_n;
  std::map<std::string, Verdict> verdicts;
  ConfigEcho config;
  std::vector<Point> probes;
  std::vector<double> alphas;
};

/// Pointwise gaps at the probes and the grid sup-gap for every member.
ConvergenceReport depth_convergence(const DepthSequence& seq, const DepthEvaluator& ref,
                                    const std::vector<Point>& probes, const std::vector<Point>& sup_grid);

struct RegionGrid {
  std::vector<double> alphas;
  double a_lo = 0.0;
  double a_hi = 0.0;
  std::size_t alpha_grid = 0;
  /// Levels added to the uniform grid over [a_lo, a_hi] (e.g. jump levels).
  std::vector<double> injected;
};

/// Hausdorff distances of trimmed regions at fixed alphas and the grid sup
/// over A. Fills the region fields of `report`, creating records as needed.
void region_convergence(const DepthSequence& seq, const DepthEvaluator& ref, const RegionGrid& grid,
                        ConvergenceReport& report);

/// Alpha levels in [lo, hi]: `count` equally spaced values plus `extra`.
std::vector<double> alpha_levels(double lo, double hi, std::size_t count, const std::vector<double>& extra);

/// Tail window of a sequence: the last quarter of the records, at least one.
std::size_t tail_start(std::size_t count);

/// Mode verdicts ("ptwd", "unid", "ptwr", "comr") from the tail-window
/// maximum of each statistic against `threshold`.
void assign_verdicts(ConvergenceReport& report, const std::vector<std::string>& modes, double threshold);

struct RangeConditionReport {
  bool passed = false;
  double limsup_estimate = 0.0;
  double reference = 0.0;
  std::vector<std::pair<std::size_t, double>> sequence;
};

/// limsup alpha_max(P_n) <= alpha_max(P) + tol, with the limsup estimated as
/// the tail-window maximum.
RangeConditionReport range_condition_check(const DepthSequence& seq, const DepthEvaluator& ref,
                                           double tol = 1e-9);
RangeConditionReport range_condition_check(const std::vector<std::pair<std::size_t, double>>& alpha_max_n,
                                           double reference, double tol = 1e-9);

struct MonotonicityRow {
  double alpha;
  double eps;
  HausdorffResult distance;
};

struct MonotonicityReport {
  bool passed = true;
  double worst_alpha = 0.0;
  double worst_distance = 0.0;
  std::vector<MonotonicityRow> rows;
};

/// Fails at alpha when delta_H(D_alpha, D_{alpha+eps}) at the smallest eps
/// exceeds 10 eps and has not dropped below half its value at the largest eps.
MonotonicityReport strict_monotonicity_check(const DepthEvaluator& d, const std::vector<double>& alphas,
                                             const std::vector<double>& eps_list, std::size_t n_directions = 360);

struct Jump {
  double x;
  double height;
  /// -1 for a jump from the left, +1 from the right.
  int side;
};

struct ContinuityReport {
  bool passed = true;
  std::vector<Jump> jumps;
  std::optional<Jump> worst;
};

/// A jump at x on one side when |D(x +- h) - D(x)| > jump_tol for every h.
ContinuityReport continuity_check(const DepthEvaluator& d, const std::vector<double>& grid,
                                  const std::vector<double>& h_list, double jump_tol);

struct AxiomOutcome {
  bool passed = true;
  std::size_t trials = 0;
  double worst = 0.0;
  std::string witness;
};

struct AxiomsReport {
  std::string depth;
  AxiomOutcome affine_invariance;
  AxiomOutcome vanishing;
  AxiomOutcome quasiconcavity;
  AxiomOutcome nesting;

  bool passed() const {
    return affine_invariance.passed && vanishing.passed && quasiconcavity.passed && nesting.passed;
  }
};

using DepthFactory = std::function<DepthPtr(const EmpiricalMeasure&)>;

/// Seeded randomized checks of affine invariance (1e-9), vanishing at
/// infinity (<= 1e-3 at 1e6 times the data scale), quasiconcavity (1e-9)
/// and nesting of trimmed regions on random 2-D clouds.
AxiomsReport axioms_check(const std::string& name, const DepthFactory& factory, std::size_t trials,
                          std::uint64_t seed);

struct SandwichViolation {
  std::size_t n;
  Point z;
  double depth_ref;
  double depth_n;
};

struct SandwichReport {
  bool passed = true;
  std::size_t inner_probes = 0;
  std::size_t outer_probes = 0;
  std::vector<SandwichViolation> violations;
};

/// Probes deeper than alpha + tol under the reference must lie in
/// D_alpha(P_n) for every n in [n_lo, n_hi]; probes shallower than
/// alpha - tol must lie outside.
SandwichReport theorem_sandwich_check(const DepthSequence& seq, const DepthEvaluator& ref, double alpha,
                                      const std::vector<Point>& probes, std::size_t n_lo = 10,
                                      std::size_t n_hi = 100, double tol = 1e-9);

/// lo, lo + step, ... up to hi (inclusive within rounding). When lo is a
/// multiple of step the points are exact integer multiples of step.
std::vector<double> linear_grid(double lo, double hi, double step);

/// linear_grid plus every breakpoint of the measures in [lo, hi], the
/// midpoints between consecutive breakpoints, and each measure's deepest
/// point under halfspace depth.
std::vector<double> breakpoint_grid(const std::vector<Measure1D>& measures, double lo, double hi, double step);

/// CDF values and left limits at the breakpoints: the levels where 1-D
/// halfspace regions can jump.
std::vector<double> critical_levels(const std::vector<Measure1D>& measures);

/// Full report as JSON text (two-space indent, 17 significant digits).
std::string report_json(const ConvergenceReport& report);
/// `n,sup_depth_gap` rows.
void write_sup_gap_csv(std::ostream& out, const ConvergenceReport& report);
/// `n,alpha,hausdorff` rows; undefined distances print as `undefined`.
void write_region_csv(std::ostream& out, const ConvergenceReport& report);

}  // namespace depthkit
