#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "depthkit/convergence.hpp"
#include "depthkit/counterexamples.hpp"
#include "oracles.hpp"

using namespace depthkit;

namespace {

DepthSequence family_sequence(int id, std::size_t lo, std::size_t hi) {
  DepthSequence seq;
  for (std::size_t n = lo; n <= hi; ++n) seq.push_back({n, make_halfspace(oracle::family(id, n))});
  return seq;
}

std::vector<Point> as_points(const std::vector<double>& xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back({x});
  return out;
}

std::vector<Measure1D> family_measures(int id, std::size_t lo, std::size_t hi) {
  std::vector<Measure1D> out{oracle::family(id, 0)};
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(oracle::family(id, n));
  return out;
}

DepthPtr standard_mahalanobis(std::size_t d) {
  MomentSummary m;
  m.mean.assign(d, 0.0);
  m.covariance.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) m.covariance[i * d + i] = 1.0;
  m.rank = d;
  return make_mahalanobis(m);
}

const std::vector<Point> kProbes{{0.0}, {0.5}, {-0.5}, {1.0}, {-1.0}, {1.5}, {-1.5}, {2.0}, {-2.0}};

}  // namespace

TEST_CASE("linear grid is exact on multiples of the step") {
  const auto g = linear_grid(-3.5, 3.5, 0.01);
  CHECK(g.size() == 701);
  CHECK(g.front() == -3.5);
  CHECK(g.back() == 3.5);
  CHECK(std::find(g.begin(), g.end(), 1.0) != g.end());
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("first family sup gap is exactly 1/(4n) with kinks in the grid") {
  const auto seq = family_sequence(1, 1, 40);
  const auto ref = make_halfspace(oracle::family(1, 0));
  const auto grid = as_points(breakpoint_grid(family_measures(1, 1, 40), -3.5, 3.5, 0.01));
  const ConvergenceReport r = depth_convergence(seq, *ref, kProbes, grid);
  REQUIRE(r.per_n.size() == 40);
  for (const PerNRecord& rec : r.per_n) {
    CHECK(std::abs(rec.sup_depth_gap - 0.25 / static_cast<double>(rec.n)) <= 1e-12);
    for (double g : rec.depth_gaps_at_probes) CHECK(g <= rec.sup_depth_gap);
  }
}

TEST_CASE("enlarging the grid never lowers the sup") {
  const auto seq = family_sequence(4, 1, 10);
  const auto ref = make_halfspace(oracle::family(4, 0));
  const auto coarse = depth_convergence(seq, *ref, kProbes, as_points(linear_grid(-3.0, 3.0, 0.1)));
  const auto fine = depth_convergence(seq, *ref, kProbes, as_points(linear_grid(-3.0, 3.0, 0.001)));
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(fine.per_n[i].sup_depth_gap >= coarse.per_n[i].sup_depth_gap);
}

TEST_CASE("a constant sequence has zero gaps and distances") {
  const auto ref = make_halfspace(oracle::family(3, 0));
  DepthSequence seq{{1, ref}, {2, ref}, {3, ref}};
  ConvergenceReport r = depth_convergence(seq, *ref, kProbes, as_points(linear_grid(-3.0, 3.0, 0.01)));
  region_convergence(seq, *ref, {{0.1, 0.25}, 0.05, 0.45, 20, {}}, r);
  for (const PerNRecord& rec : r.per_n) {
    CHECK(rec.sup_depth_gap == 0.0);
    for (const AlphaDistance& a : rec.region_hausdorff_at_alphas) CHECK(a.result.distance == 0.0);
    REQUIRE(rec.sup_region_hausdorff_on_A.has_value());
    CHECK(*rec.sup_region_hausdorff_on_A == 0.0);
  }
}

TEST_CASE("third family alpha sup equals 1/(n+1)") {
  const auto ref = make_halfspace(oracle::family(3, 0));
  const auto seq = family_sequence(3, 1, 20);
  ConvergenceReport r;
  region_convergence(seq, *ref, {{}, 0.005, 0.5, 100, critical_levels(family_measures(3, 1, 20))}, r);
  for (const PerNRecord& rec : r.per_n) {
    REQUIRE(rec.sup_region_hausdorff_on_A.has_value());
    CHECK(std::abs(*rec.sup_region_hausdorff_on_A - 1.0 / (rec.n + 1.0)) <= 1e-12);
  }
}

TEST_CASE("verdicts on the first and fourth families") {
  {
    const auto seq = family_sequence(1, 1, 50);
    const auto ref = make_halfspace(oracle::family(1, 0));
    ConvergenceReport r = depth_convergence(seq, *ref, kProbes,
                                            as_points(breakpoint_grid(family_measures(1, 1, 50), -3.5, 3.5, 0.01)));
    region_convergence(seq, *ref, {{0.25}, 0.05, 0.45, 41, {}}, r);
    assign_verdicts(r, {"unid", "ptwr"}, 0.01);
    CHECK(r.verdicts.at("unid").passed);
    CHECK_FALSE(r.verdicts.at("ptwr").passed);
    CHECK(r.verdicts.at("ptwr").statistic >= 1.0);
  }
  {
    const auto seq = family_sequence(4, 1, 50);
    const auto ref = make_halfspace(oracle::family(4, 0));
    std::vector<double> grid = breakpoint_grid(family_measures(4, 1, 50), -3.0, 3.0, 0.01);
    ConvergenceReport r = depth_convergence(seq, *ref, kProbes, as_points(grid));
    assign_verdicts(r, {"ptwd", "unid"}, 0.01);
    CHECK(r.verdicts.at("ptwd").passed);
    CHECK_FALSE(r.verdicts.at("unid").passed);
    for (const PerNRecord& rec : r.per_n) CHECK(rec.sup_depth_gap > 0.2);
  }
}

TEST_CASE("undefined distances fail a region verdict") {
  ConvergenceReport r;
  PerNRecord rec;
  rec.n = 1;
  rec.region_hausdorff_at_alphas.push_back({0.3, HausdorffResult::undefined()});
  r.per_n.push_back(rec);
  r.alphas = {0.3};
  assign_verdicts(r, {"ptwr", "comr"}, 0.01);
  CHECK_FALSE(r.verdicts.at("ptwr").passed);
  CHECK_FALSE(r.verdicts.at("comr").passed);
}

TEST_CASE("tail window") {
  CHECK(tail_start(1) == 0);
  CHECK(tail_start(4) == 3);
  CHECK(tail_start(100) == 75);
}

TEST_CASE("range condition") {
  const auto ref = make_halfspace(oracle::family(1, 0));
  const auto rc = range_condition_check(family_sequence(1, 1, 8), *ref);
  CHECK(rc.passed);
  CHECK(rc.reference == doctest::Approx(0.5));
  CHECK_FALSE(range_condition_check({{1, 0.6}, {2, 0.6}}, 0.5).passed);
  const auto maha = standard_mahalanobis(2);
  CHECK(range_condition_check(DepthSequence{{1, maha}, {2, maha}}, *maha).passed);
}

TEST_CASE("strict monotonicity") {
  const auto p0 = make_halfspace(oracle::family(1, 0));
  const std::vector<double> eps{1e-3, 1e-4, 1e-5};
  const auto fail = strict_monotonicity_check(*p0, {0.25}, eps);
  CHECK_FALSE(fail.passed);
  CHECK(fail.worst_alpha == 0.25);
  CHECK(fail.worst_distance >= 1.0);
  CHECK(strict_monotonicity_check(*p0, {0.4}, eps).passed);
  const auto maha = standard_mahalanobis(2);
  CHECK(strict_monotonicity_check(*maha, {0.05, 0.2, 0.5, 0.8}, eps, 90).passed);
  CHECK(strict_monotonicity_check(*standard_mahalanobis(1), {0.05, 0.5, 0.9}, eps).passed);
}

TEST_CASE("continuity") {
  const std::vector<double> h{1e-4, 1e-6, 1e-8};
  const auto grid = linear_grid(-3.0, 3.0, 0.01);
  const auto jumps = continuity_check(*make_halfspace(oracle::family(3, 0)), grid, h, 0.05);
  CHECK_FALSE(jumps.passed);
  REQUIRE(jumps.worst.has_value());
  CHECK(std::abs(jumps.worst->x) == 1.0);
  CHECK(jumps.worst->height == doctest::Approx(0.2).epsilon(1e-3));
  for (const Jump& j : jumps.jumps) CHECK(std::abs(j.x) == 1.0);
  CHECK(continuity_check(*make_halfspace(oracle::family(1, 0)), grid, h, 0.05).passed);
  CHECK(continuity_check(*standard_mahalanobis(1), grid, h, 0.05).passed);
  CHECK_THROWS_AS(continuity_check(*standard_mahalanobis(2), grid, h, 0.05), std::invalid_argument);
}

TEST_CASE("axioms hold for the shipped depths and fail for a broken one") {
  for (const char* name : {"mahalanobis", "halfspace", "zonoid"}) {
    const AxiomsReport r = axioms_check(name, [name](const EmpiricalMeasure& e) { return make_depth(name, e); }, 15, 3);
    CHECK_MESSAGE(r.passed(), name);
    CHECK(r.affine_invariance.trials == 15);
  }
  const AxiomsReport broken = axioms_check(
      "clamp",
      [](const EmpiricalMeasure&) {
        return make_function_depth("clamp", 2, {{-10.0, -10.0}, {10.0, 10.0}},
                                   [](std::span<const double> z) { return std::clamp(z[0], 0.0, 1.0); });
      },
      5, 1);
  CHECK_FALSE(broken.vanishing.passed);
  CHECK_FALSE(broken.vanishing.witness.empty());
}

TEST_CASE("axiom runs are deterministic under a seed") {
  auto factory = [](const EmpiricalMeasure& e) { return make_depth("halfspace", e); };
  const AxiomsReport a = axioms_check("halfspace", factory, 5, 9);
  const AxiomsReport b = axioms_check("halfspace", factory, 5, 9);
  CHECK(a.affine_invariance.worst == b.affine_invariance.worst);
  CHECK(a.quasiconcavity.worst == b.quasiconcavity.worst);
}

TEST_CASE("sandwich surrogate on the first family") {
  const auto seq = family_sequence(1, 10, 100);
  const auto ref = make_halfspace(oracle::family(1, 0));
  const SandwichReport r = theorem_sandwich_check(seq, *ref, 0.25, {{0.0}, {2.5}, {2.0}, {-2.8}});
  CHECK(r.passed);
  CHECK(r.inner_probes == 1);
  CHECK(r.outer_probes == 2);
}

TEST_CASE("critical levels and alpha levels") {
  const auto levels = critical_levels({oracle::family(3, 0)});
  CHECK(std::find_if(levels.begin(), levels.end(), [](double v) { return std::abs(v - 0.35) < 1e-15; }) !=
        levels.end());
  const auto a = alpha_levels(0.1, 0.5, 5, {0.33});
  CHECK(a.size() == 6);
  CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("report serialization") {
  const auto seq = family_sequence(2, 1, 3);
  const auto ref = make_halfspace(oracle::family(2, 0));
  ConvergenceReport r = depth_convergence(seq, *ref, kProbes, as_points(linear_grid(-3.0, 3.0, 0.5)));
  region_convergence(seq, *ref, {{0.3, 0.6}, 0.05, 0.45, 5, {}}, r);
  assign_verdicts(r, {"unid", "ptwr"}, 0.01);
  r.config = {{"family", "ex2"}};
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["per_n"].size() == 3);
  CHECK(j["config"]["family"] == "ex2");
  CHECK(j.contains("verdicts"));
  std::ostringstream gaps;
  write_sup_gap_csv(gaps, r);
  CHECK(gaps.str().rfind("n,sup_depth_gap\n", 0) == 0);
  std::ostringstream regions;
  write_region_csv(regions, r);
  CHECK(regions.str().find("undefined") != std::string::npos);
  CHECK(report_json(r) == report_json(r));
}
