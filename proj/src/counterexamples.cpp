#include "depthkit/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "depthkit/convergence.hpp"
#include "depthkit/depths.hpp"
#include "depthkit/format.hpp"
#include "depthkit/hausdorff.hpp"
#include "depthkit/regions.hpp"

namespace depthkit {
namespace {

void require_family(int id) {
  if (id < 1 || id > 4) throw std::invalid_argument("family id must be 1..4, got " + std::to_string(id));
}

double sign_power(std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; }

bool holds(Comparison c, double computed, double expected, double tol) {
  switch (c) {
    case Comparison::Equal:
      return std::abs(computed - expected) <= tol;
    case Comparison::AtMost:
      return computed <= expected + tol;
    case Comparison::AtLeast:
      return computed >= expected - tol;
    case Comparison::LessThan:
      return computed < expected;
    case Comparison::GreaterThan:
      return computed > expected;
  }
  return false;
}

class ClaimSink {
 public:
  explicit ClaimSink(ClaimReport& report) : report_(report) {}

  void add(std::string claim, std::size_t n, double computed, Comparison c, double expected, double tol,
           std::string witness = {}) {
    ClaimRecord r;
    r.claim = std::move(claim);
    r.n = n;
    r.computed = computed;
    r.expected = expected;
    r.comparison = c;
    r.tol = tol;
    r.passed = holds(c, computed, expected, tol);
    r.witness = std::move(witness);
    report_.rows.push_back(std::move(r));
  }

 private:
  ClaimReport& report_;
};

struct SupGap {
  double value = -1.0;
  double at = 0.0;
};

SupGap sup_depth_gap(const Measure1D& a, const Measure1D& b, const std::vector<double>& grid) {
  SupGap out;
  for (double x : grid) {
    const double g = std::abs(halfspace_depth_1d(x, a) - halfspace_depth_1d(x, b));
    if (g > out.value) out = {g, x};
  }
  return out;
}

double region_distance(const Measure1D& a, const Measure1D& b, double alpha) {
  const HausdorffResult h = hausdorff_intervals(region_1d_halfspace(a, alpha), region_1d_halfspace(b, alpha));
  return h.defined() ? h.distance : NAN;
}

struct SupAlpha {
  double value = 0.0;
  double at = 0.0;
  bool defined = true;
};

SupAlpha sup_region_gap(const Measure1D& a, const Measure1D& b, const std::vector<double>& levels) {
  // Levels where a region is empty (at or above a maximum depth) are skipped.
  SupAlpha out;
  out.defined = false;
  for (double alpha : levels) {
    const double d = region_distance(a, b, alpha);
    if (std::isnan(d)) continue;
    out.defined = true;
    if (d > out.value) {
      out.value = d;
      out.at = alpha;
    }
  }
  return out;
}

void outer_families(int id, std::size_t n_lo, std::size_t n_hi, double tol, ClaimSink& sink) {
  const Measure1D p0 = build_family(id, 0);
  const std::vector<double> levels_base = alpha_levels(0.1, 0.5, 401, {});
  if (id == 1) {
    const Region1D r0 = region_1d_halfspace(p0, 0.25);
    const HausdorffResult h0 = hausdorff_intervals(r0, Region1D::interval(-2.0, 2.0));
    sink.add("region_P0_at_0.25_is_[-2,2]", 0, h0.defined() ? h0.distance : NAN, Comparison::Equal, 0.0, tol,
             r0.is_empty() ? "EMPTY" : "[" + format_real(r0.lo()) + ", " + format_real(r0.hi()) + "]");
  }
  for (std::size_t n = std::max<std::size_t>(n_lo, 1); n <= n_hi; ++n) {
    const Measure1D pn = build_family(id, n);
    const auto grid = breakpoint_grid({pn, p0}, -3.5, 3.5, 0.01);
    if (id == 1) {
      const SupGap g = sup_depth_gap(pn, p0, grid);
      sink.add("sup_gap_equals_1/(4n)", n, g.value, Comparison::Equal, 1.0 / (4.0 * static_cast<double>(n)), tol,
               "x=" + format_real(g.at));
      double worst = n % 2 == 1 ? -INFINITY : INFINITY;
      double at = 0.0;
      for (double x : grid) {
        const double diff = halfspace_depth_1d(x, pn) - halfspace_depth_1d(x, p0);
        if ((n % 2 == 1 && diff > worst) || (n % 2 == 0 && diff < worst)) {
          worst = diff;
          at = x;
        }
      }
      if (n % 2 == 1) {
        sink.add("odd_n_depth_below_P0", n, worst, Comparison::AtMost, 0.0, tol, "x=" + format_real(at));
      } else {
        sink.add("even_n_depth_above_P0", n, worst, Comparison::AtLeast, 0.0, tol, "x=" + format_real(at));
      }
      const Region1D r = region_1d_halfspace(pn, 0.25);
      if (n % 2 == 1) {
        const double reach = r.is_empty() ? 0.0 : std::max(-r.lo(), r.hi());
        sink.add("odd_n_region_inside_(-1,1)", n, reach, Comparison::AtMost, 1.0 - 1e-9, 0.0);
        sink.add("odd_n_region_distance_to_P0", n, region_distance(pn, p0, 0.25), Comparison::AtLeast, 1.0 - 1e-9,
                 0.0);
      } else {
        const double reach = r.is_empty() ? 0.0 : std::min(-r.lo(), r.hi());
        sink.add("even_n_region_contains_[-2,2]", n, reach, Comparison::AtLeast, 2.0, 0.0);
      }
    } else {
      const double nn = static_cast<double>(n);
      const double alpha_n = 0.25 * (1.0 + 1.0 / (2.0 * nn));
      sink.add("distance_at_alpha_n_at_least_1", n, region_distance(pn, p0, alpha_n), Comparison::AtLeast, 1.0, tol,
               "alpha_n=" + format_real(alpha_n));
      for (double alpha : {0.2, 0.25, 0.3}) {
        const double d = region_distance(pn, p0, alpha);
        const std::string tag = "alpha=" + format_real(alpha);
        if (n >= 2) {
          sink.add("fixed_alpha_distance_nonincreasing", n, d, Comparison::AtMost,
                   region_distance(build_family(id, n - 1), p0, alpha), tol, tag);
        }
        if (n >= 6) sink.add("fixed_alpha_distance_at_most_1/(n-1)", n, d, Comparison::AtMost, 1.0 / (nn - 1.0), tol, tag);
      }
      auto levels = levels_base;
      levels.push_back(alpha_n);
      const SupAlpha s = sup_region_gap(pn, p0, levels);
      sink.add("sup_over_[0.1,0.5]_at_least_1", n, s.defined ? s.value : NAN, Comparison::AtLeast, 1.0, tol,
               "alpha=" + format_real(s.at));
    }
  }
}

void atom_families(int id, std::size_t n_lo, std::size_t n_hi, double tol, ClaimSink& sink) {
  const Measure1D p0 = build_family(id, 0);
  for (std::size_t n = std::max<std::size_t>(n_lo, 1); n <= n_hi; ++n) {
    const Measure1D pn = build_family(id, n);
    const double nn = static_cast<double>(n);
    const double s = family_parameter(id, n);
    if (id == 3) {
      const SupAlpha sup = sup_region_gap(pn, p0, alpha_levels(0.005, 0.5, 100, critical_levels({pn, p0})));
      sink.add("sup_alpha_distance_equals_1/(n+1)", n, sup.defined ? sup.value : NAN, Comparison::Equal,
               1.0 / (nn + 1.0), tol, "alpha=" + format_real(sup.at));
      const double at_one = halfspace_depth_1d(1.0, pn);
      if (n % 2 == 1) {
        sink.add("odd_n_depth_at_1_below_0.15", n, at_one, Comparison::LessThan, 0.15, 0.0);
      } else {
        sink.add("even_n_depth_at_1_above_0.35", n, at_one, Comparison::GreaterThan, 0.35, 0.0);
      }
    } else {
      double worst = 0.0;
      double at = 0.0;
      for (double x : {0.0, -0.5, 0.5, -1.0, 1.0, -1.5, 1.5, -2.0, 2.0}) {
        if (std::abs(x) > 1.0 && std::abs(x) <= s) continue;
        const double g = std::abs(halfspace_depth_1d(x, pn) - halfspace_depth_1d(x, p0));
        if (g > worst) {
          worst = g;
          at = x;
        }
      }
      sink.add("probe_gaps_at_most_0.15/n", n, worst, Comparison::AtMost, 0.15 / nn, tol, "x=" + format_real(at));
      const SupGap g = sup_depth_gap(pn, p0, breakpoint_grid({pn, p0}, -3.0, 3.0, 0.01));
      const double witness = 0.5 * (1.0 + s);
      sink.add("sup_gap_above_0.2", n, g.value, Comparison::GreaterThan, 0.2, 0.0,
               "x=" + format_real(g.at) + " gap(x_n=" + format_real(witness) + ")=" +
                   format_real(std::abs(halfspace_depth_1d(witness, pn) - halfspace_depth_1d(witness, p0))));
    }
  }
}

}  // namespace

double family_parameter(int id, std::size_t n) {
  require_family(id);
  const double nn = static_cast<double>(n);
  switch (id) {
    case 1:
      return n == 0 ? 0.5 : 0.5 * (1.0 + sign_power(n) / nn);
    case 2:
      return n == 0 ? 0.5 : 0.5 * (1.0 + 1.0 / nn);
    case 3:
      return n == 0 ? 1.0 : 1.0 + sign_power(n) / (nn + 1.0);
    default:
      return n == 0 ? 1.0 : 1.0 + 1.0 / (nn + 1.0);
  }
}

Measure1D build_family(int id, std::size_t n) {
  const double p = family_parameter(id, n);
  if (id <= 2) {
    return Measure1D({{UniformSegment{-3.0, -2.0}, 0.5 * p},
                      {UniformSegment{2.0, 3.0}, 0.5 * p},
                      {UniformSegment{-1.0, 1.0}, 1.0 - p}});
  }
  return Measure1D({{UniformSegment{-2.0, -p}, 0.15},
                    {UniformSegment{p, 2.0}, 0.15},
                    {UniformSegment{-p, p}, 0.3},
                    {Atom{-p}, 0.2},
                    {Atom{p}, 0.2}});
}

double exact_depth(int id, std::size_t n, double x) {
  const double p = family_parameter(id, n);
  const double t = std::abs(x);
  if (id <= 2) {
    const double a = p;
    const double b = 1.0 - a;
    if (t >= 3.0) return 0.0;
    if (t >= 2.0) return 0.5 * a * (3.0 - t);
    if (t >= 1.0) return 0.5 * a;
    return 0.5 * a + 0.5 * b * (1.0 - t);
  }
  const double s = p;
  if (t >= 2.0) return 0.0;
  if (t > s) return 0.15 * (2.0 - t) / (2.0 - s);
  if (t == s) return 0.35;
  return 0.35 + 0.15 * (s - t) / s;
}

Region1D exact_region(int id, std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double p = family_parameter(id, n);
  if (alpha > 0.5) return Region1D::empty();
  double r = 0.0;
  if (id <= 2) {
    const double a = p;
    const double b = 1.0 - a;
    r = alpha <= 0.5 * a ? 3.0 - 2.0 * alpha / a : 1.0 - (2.0 * alpha - a) / b;
  } else {
    const double s = p;
    if (alpha <= 0.15) {
      r = 2.0 - alpha * (2.0 - s) / 0.15;
    } else if (alpha <= 0.35) {
      r = s;
    } else {
      r = s * (0.5 - alpha) / 0.15;
    }
  }
  return Region1D::interval(-r, r);
}

const char* comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::Equal:
      return "==";
    case Comparison::AtMost:
      return "<=";
    case Comparison::AtLeast:
      return ">=";
    case Comparison::LessThan:
      return "<";
    case Comparison::GreaterThan:
      return ">";
  }
  return "?";
}

bool ClaimReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const ClaimRecord& r) { return r.passed; });
}

ClaimReport verify_claims(int id, std::size_t n_lo, std::size_t n_hi, double tol) {
  require_family(id);
  if (n_lo > n_hi) throw std::invalid_argument("empty n range");
  ClaimReport report;
  report.family = id;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  ClaimSink sink(report);
  if (id <= 2) {
    outer_families(id, n_lo, n_hi, tol, sink);
  } else {
    atom_families(id, n_lo, n_hi, tol, sink);
  }
  return report;
}

void write_claims_table(std::ostream& out, const ClaimReport& report) {
  char line[512];
  std::snprintf(line, sizeof line, "# family ex%d, n = %zu..%zu\n", report.family, report.n_lo, report.n_hi);
  out << line;
  std::snprintf(line, sizeof line, "%-38s %5s %24s %2s %24s %s\n", "claim", "n", "computed", "", "expected", "pass");
  out << line;
  for (const ClaimRecord& r : report.rows) {
    std::snprintf(line, sizeof line, "%-38s %5zu %24s %2s %24s %s", r.claim.c_str(), r.n, format_real(r.computed).c_str(),
                  comparison_symbol(r.comparison), format_real(r.expected).c_str(), r.passed ? "pass" : "FAIL");
    out << line;
    if (!r.witness.empty()) out << "  " << r.witness;
    out << '\n';
  }
  const auto failed = std::count_if(report.rows.begin(), report.rows.end(), [](const ClaimRecord& r) { return !r.passed; });
  std::snprintf(line, sizeof line, "# ex%d: %zu claims, %zu failed\n", report.family, report.rows.size(),
                static_cast<std::size_t>(failed));
  out << line;
}

std::string claims_json(const std::vector<ClaimReport>& reports) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  nlohmann::ordered_json families = nlohmann::ordered_json::array();
  for (const ClaimReport& report : reports) {
    nlohmann::ordered_json f;
    f["family"] = "ex" + std::to_string(report.family);
    f["n_lo"] = report.n_lo;
    f["n_hi"] = report.n_hi;
    f["passed"] = report.passed();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ClaimRecord& r : report.rows) {
      nlohmann::ordered_json row;
      row["claim"] = r.claim;
      row["n"] = r.n;
      row["computed"] = std::isfinite(r.computed) ? nlohmann::ordered_json(r.computed) : nlohmann::ordered_json(nullptr);
      row["relation"] = comparison_symbol(r.comparison);
      row["expected"] = r.expected;
      row["tol"] = r.tol;
      row["passed"] = r.passed;
      row["witness"] = r.witness;
      rows.push_back(row);
    }
    f["claims"] = rows;
    families.push_back(f);
  }
  j["families"] = families;
  return j.dump(2) + "\n";
}

}  // namespace depthkit
