#include "depthkit/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "depthkit/format.hpp"

namespace depthkit {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return unit_interval(gen_()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Box-Muller on 53-bit uniforms, so draws do not depend on the library's
  // distribution implementation.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

std::string describe(const Point& z) {
  std::string s = "(";
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k) s += ", ";
    s += format_real(z[k]);
  }
  return s + ")";
}

PerNRecord& record_for(ConvergenceReport& report, std::size_t index, std::size_t n) {
  if (report.per_n.size() <= index) report.per_n.resize(index + 1);
  report.per_n[index].n = n;
  return report.per_n[index];
}

void note_failure(AxiomOutcome& o, double value, std::string witness) {
  if (o.passed || value > o.worst) {
    o.worst = value;
    o.witness = std::move(witness);
  }
  o.passed = false;
}

nlohmann::ordered_json real(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::ordered_json hausdorff_json(const HausdorffResult& h) {
  if (!h.defined()) return {{"status", "undefined_empty_operand"}};
  return {{"status", "defined"},
          {"distance", real(h.distance)},
          {"directed_ab", real(h.directed_ab)},
          {"directed_ba", real(h.directed_ba)}};
}

}  // namespace

ConvergenceReport depth_convergence(const DepthSequence& seq, const DepthEvaluator& ref,
                                    const std::vector<Point>& probes, const std::vector<Point>& sup_grid) {
  if (probes.empty() || sup_grid.empty()) throw std::invalid_argument("probe and sup grids must be non-empty");
  ConvergenceReport report;
  report.probes = probes;
  std::vector<double> ref_probe;
  std::vector<double> ref_grid;
  for (const Point& z : probes) ref_probe.push_back(ref.depth(z));
  for (const Point& z : sup_grid) ref_grid.push_back(ref.depth(z));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    PerNRecord& rec = record_for(report, i, seq[i].n);
    const DepthEvaluator& d = *seq[i].depth;
    rec.sup_depth_gap = -1.0;
    auto consider = [&](const Point& z, double gap) {
      if (gap > rec.sup_depth_gap) {
        rec.sup_depth_gap = gap;
        rec.sup_depth_witness = z;
      }
    };
    rec.depth_gaps_at_probes.clear();
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const double gap = std::abs(d.depth(probes[k]) - ref_probe[k]);
      rec.depth_gaps_at_probes.push_back(gap);
      consider(probes[k], gap);
    }
    for (std::size_t k = 0; k < sup_grid.size(); ++k) consider(sup_grid[k], std::abs(d.depth(sup_grid[k]) - ref_grid[k]));
    rec.alpha_max_n = alpha_max(d).alpha_max;
  }
  return report;
}

std::vector<double> alpha_levels(double lo, double hi, std::size_t count, const std::vector<double>& extra) {
  std::vector<double> out;
  if (count == 1) out.push_back(lo);
  for (std::size_t k = 0; count > 1 && k < count; ++k) {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  for (double a : extra) {
    if (a >= lo && a <= hi) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void region_convergence(const DepthSequence& seq, const DepthEvaluator& ref, const RegionGrid& grid,
                        ConvergenceReport& report) {
  report.alphas = grid.alphas;
  const auto levels = grid.alpha_grid > 0 ? alpha_levels(grid.a_lo, grid.a_hi, grid.alpha_grid, grid.injected)
                                          : std::vector<double>{};
  std::vector<TrimmedRegion> ref_fixed;
  std::vector<TrimmedRegion> ref_levels;
  for (double a : grid.alphas) ref_fixed.push_back(trimmed_region(ref, a));
  for (double a : levels) ref_levels.push_back(trimmed_region(ref, a));

  for (std::size_t i = 0; i < seq.size(); ++i) {
    PerNRecord& rec = record_for(report, i, seq[i].n);
    const DepthEvaluator& d = *seq[i].depth;
    rec.region_hausdorff_at_alphas.clear();
    for (std::size_t k = 0; k < grid.alphas.size(); ++k) {
      rec.region_hausdorff_at_alphas.push_back(
          {grid.alphas[k], hausdorff(trimmed_region(d, grid.alphas[k]), ref_fixed[k])});
    }
    if (levels.empty()) continue;
    std::optional<double> sup = 0.0;
    double witness = levels.front();
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const HausdorffResult h = hausdorff(trimmed_region(d, levels[k]), ref_levels[k]);
      if (!h.defined()) {
        sup.reset();
        witness = levels[k];
        break;
      }
      if (h.distance > *sup) {
        sup = h.distance;
        witness = levels[k];
      }
    }
    rec.sup_region_hausdorff_on_A = sup;
    rec.sup_region_witness_alpha = witness;
  }
}

std::size_t tail_start(std::size_t count) {
  if (count == 0) return 0;
  return count - std::max<std::size_t>(1, count / 4);
}

void assign_verdicts(ConvergenceReport& report, const std::vector<std::string>& modes, double threshold) {
  const std::size_t start = tail_start(report.per_n.size());
  for (const std::string& mode : modes) {
    Verdict v;
    v.threshold = threshold;
    bool undefined = false;
    std::size_t worst_n = 0;
    for (std::size_t i = start; i < report.per_n.size(); ++i) {
      const PerNRecord& rec = report.per_n[i];
      auto take = [&](double value) {
        if (value > v.statistic) {
          v.statistic = value;
          worst_n = rec.n;
        }
      };
      if (mode == "ptwd") {
        for (double g : rec.depth_gaps_at_probes) take(g);
      } else if (mode == "unid" || mode == "comd") {
        take(rec.sup_depth_gap);
      } else if (mode == "ptwr") {
        for (const auto& ad : rec.region_hausdorff_at_alphas) {
          if (!ad.result.defined()) {
            undefined = true;
            worst_n = rec.n;
          } else {
            take(ad.result.distance);
          }
        }
      } else if (mode == "comr") {
        if (!rec.sup_region_hausdorff_on_A) {
          undefined = true;
          worst_n = rec.n;
        } else {
          take(*rec.sup_region_hausdorff_on_A);
        }
      } else {
        throw std::invalid_argument("unknown convergence mode '" + mode + "'");
      }
    }
    if (start == report.per_n.size()) {
      v.detail = "no records";
    } else if (undefined) {
      v.detail = "undefined distance at n=" + std::to_string(worst_n);
    } else {
      v.passed = v.statistic <= threshold;
      v.detail = "tail max at n=" + std::to_string(worst_n) + " over n >= " +
                 std::to_string(report.per_n[start].n);
    }
    report.verdicts[mode] = v;
  }
}

RangeConditionReport range_condition_check(const std::vector<std::pair<std::size_t, double>>& alpha_max_n,
                                           double reference, double tol) {
  RangeConditionReport out;
  out.reference = reference;
  out.sequence = alpha_max_n;
  const std::size_t start = tail_start(alpha_max_n.size());
  out.limsup_estimate = -INFINITY;
  for (std::size_t i = start; i < alpha_max_n.size(); ++i) {
    out.limsup_estimate = std::max(out.limsup_estimate, alpha_max_n[i].second);
  }
  out.passed = !alpha_max_n.empty() && out.limsup_estimate <= reference + tol;
  return out;
}

RangeConditionReport range_condition_check(const DepthSequence& seq, const DepthEvaluator& ref, double tol) {
  std::vector<std::pair<std::size_t, double>> values;
  for (const auto& member : seq) values.emplace_back(member.n, alpha_max(*member.depth).alpha_max);
  return range_condition_check(values, alpha_max(ref).alpha_max, tol);
}

MonotonicityReport strict_monotonicity_check(const DepthEvaluator& d, const std::vector<double>& alphas,
                                             const std::vector<double>& eps_list, std::size_t n_directions) {
  if (eps_list.empty()) throw std::invalid_argument("eps list must be non-empty");
  const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
  MonotonicityReport out;
  for (double alpha : alphas) {
    const TrimmedRegion base = trimmed_region(d, alpha, n_directions);
    std::optional<double> at_min;
    std::optional<double> at_max;
    for (double eps : eps_list) {
      const HausdorffResult h = hausdorff(base, trimmed_region(d, alpha + eps, n_directions));
      out.rows.push_back({alpha, eps, h});
      if (!h.defined()) continue;
      if (eps == eps_min) at_min = h.distance;
      if (eps == eps_max) at_max = h.distance;
    }
    if (!at_min) continue;
    const bool stuck = *at_min > 10.0 * eps_min && (!at_max || *at_min > 0.5 * *at_max);
    // The witness is the worst failing alpha, or the worst overall while passing.
    const bool was_passing = out.passed;
    if (stuck) out.passed = false;
    if ((stuck && was_passing) || ((stuck || out.passed) && *at_min > out.worst_distance)) {
      out.worst_alpha = alpha;
      out.worst_distance = *at_min;
    }
  }
  return out;
}

ContinuityReport continuity_check(const DepthEvaluator& d, const std::vector<double>& grid,
                                  const std::vector<double>& h_list, double jump_tol) {
  if (d.dimension() != 1) throw std::invalid_argument("continuity_check needs a 1-D depth");
  if (h_list.empty()) throw std::invalid_argument("h list must be non-empty");
  const double h_min = *std::min_element(h_list.begin(), h_list.end());
  ContinuityReport out;
  for (double x : grid) {
    const double center = d.depth(Point{x});
    for (int side : {-1, +1}) {
      const bool jump = std::all_of(h_list.begin(), h_list.end(), [&](double h) {
        return std::abs(d.depth(Point{x + side * h}) - center) > jump_tol;
      });
      if (!jump) continue;
      const Jump j{x, std::abs(d.depth(Point{x + side * h_min}) - center), side};
      out.jumps.push_back(j);
      if (!out.worst || j.height > out.worst->height) out.worst = j;
    }
  }
  out.passed = out.jumps.empty();
  return out;
}

AxiomsReport axioms_check(const std::string& name, const DepthFactory& factory, std::size_t trials,
                          std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  AxiomsReport report;
  report.depth = name;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = rng.index(8, 20);
    const double sx = rng.uniform(0.5, 2.0);
    const double sy = rng.uniform(0.5, 2.0);
    const double rho = rng.uniform(-0.8, 0.8);
    std::vector<double> coords;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = rng.normal();
      const double b = rng.normal();
      coords.push_back(sx * a);
      coords.push_back(sy * (rho * a + std::sqrt(1.0 - rho * rho) * b));
    }
    const EmpiricalMeasure e(2, coords);
    const DepthPtr d = factory(e);
    const Point mean = moments(e).mean;
    double scale = 0.0;
    for (double c : coords) scale = std::max(scale, std::abs(c));
    auto random_point = [&] { return Point{mean[0] + 1.2 * sx * rng.normal(), mean[1] + 1.2 * sy * rng.normal()}; };
    const std::string tag = "trial " + std::to_string(t) + ": ";

    // Affine invariance.
    {
      std::vector<double> a(4);
      do {
        for (double& v : a) v = rng.uniform(-2.0, 2.0);
      } while (std::abs(a[0] * a[3] - a[1] * a[2]) < 0.1);
      const std::vector<double> b{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
      const DepthPtr moved = factory(e.transformed(a, b));
      const Point z = random_point();
      const Point mz{a[0] * z[0] + a[1] * z[1] + b[0], a[2] * z[0] + a[3] * z[1] + b[1]};
      const double diff = std::abs(d->depth(z) - moved->depth(mz));
      ++report.affine_invariance.trials;
      if (diff > 1e-9) note_failure(report.affine_invariance, diff, tag + "z=" + describe(z) + " diff=" + format_real(diff));
    }
    // Vanishing at infinity.
    {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double r = 1e6 * (scale + 1.0);
      const Point z{mean[0] + r * std::cos(angle), mean[1] + r * std::sin(angle)};
      const double v = d->depth(z);
      ++report.vanishing.trials;
      if (!(v <= 1e-3)) note_failure(report.vanishing, v, tag + "z=" + describe(z) + " depth=" + format_real(v));
    }
    // Quasiconcavity.
    {
      const Point z1 = random_point();
      const Point z2 = random_point();
      const double lambda = rng.uniform(0.0, 1.0);
      const Point mid{lambda * z1[0] + (1.0 - lambda) * z2[0], lambda * z1[1] + (1.0 - lambda) * z2[1]};
      const double shortfall = std::min(d->depth(z1), d->depth(z2)) - d->depth(mid);
      ++report.quasiconcavity.trials;
      if (shortfall > 1e-9) {
        note_failure(report.quasiconcavity, shortfall,
                     tag + "z1=" + describe(z1) + " z2=" + describe(z2) + " lambda=" + format_real(lambda));
      }
    }
    // Nesting of trimmed regions.
    {
      double a1 = rng.uniform(0.02, 1.0);
      double a2 = rng.uniform(0.02, 1.0);
      if (a1 > a2) std::swap(a1, a2);
      const TrimmedRegion r1 = trimmed_region(*d, a1);
      const TrimmedRegion r2 = trimmed_region(*d, a2);
      ++report.nesting.trials;
      const double slack = 1e-9 * (scale + 1.0);
      if (!region_subset(r2, r1, slack)) {
        const double excess = std::get<Region2D>(r1).is_empty()
                                  ? INFINITY
                                  : hausdorff(r2, r1).directed_ab;
        note_failure(report.nesting, excess,
                     tag + "alpha1=" + format_real(a1) + " alpha2=" + format_real(a2) + " excess=" + format_real(excess));
      }
    }
  }
  return report;
}

SandwichReport theorem_sandwich_check(const DepthSequence& seq, const DepthEvaluator& ref, double alpha,
                                      const std::vector<Point>& probes, std::size_t n_lo, std::size_t n_hi,
                                      double tol) {
  SandwichReport out;
  for (const Point& z : probes) {
    const double dz = ref.depth(z);
    const bool deep = dz > alpha + tol;
    const bool shallow = dz < alpha - tol;
    if (!deep && !shallow) continue;
    (deep ? out.inner_probes : out.outer_probes) += 1;
    for (const auto& member : seq) {
      if (member.n < n_lo || member.n > n_hi) continue;
      const double dn = member.depth->depth(z);
      if ((dn >= alpha) != deep) out.violations.push_back({member.n, z, dz, dn});
    }
  }
  out.passed = out.violations.empty();
  return out;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("grid needs lo <= hi and step > 0");
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  if (count > 100'000'000) throw std::invalid_argument("grid is too large");
  const double k0 = lo / step;
  const bool aligned = std::abs(k0 - std::round(k0)) < 1e-9;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long long k = 0; k <= count; ++k) {
    out.push_back(aligned ? (std::round(k0) + static_cast<double>(k)) * step : lo + static_cast<double>(k) * step);
  }
  return out;
}

std::vector<double> breakpoint_grid(const std::vector<Measure1D>& measures, double lo, double hi, double step) {
  std::vector<double> out = linear_grid(lo, hi, step);
  std::vector<double> breaks;
  for (const Measure1D& m : measures) {
    for (double b : m.breakpoints()) breaks.push_back(b);
    if (const auto best = make_halfspace(m)->known_maximum()) breaks.push_back(best->witness[0]);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    out.push_back(breaks[k]);
    if (k + 1 < breaks.size()) out.push_back(0.5 * (breaks[k] + breaks[k + 1]));
  }
  std::erase_if(out, [&](double x) { return x < lo || x > hi; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> critical_levels(const std::vector<Measure1D>& measures) {
  std::vector<double> out;
  for (const Measure1D& m : measures) {
    for (double b : m.breakpoints()) {
      for (double v : {m.cdf(b), m.cdf_left(b), m.tail(b), 1.0 - m.cdf(b)}) {
        if (v > 0.0 && v <= 1.0) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string report_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  j["config"] = config;
  j["note"] = "suprema are maxima over finite grids and bound the true suprema from below";
  nlohmann::ordered_json probes = nlohmann::ordered_json::array();
  for (const Point& z : report.probes) probes.push_back(z);
  j["probes"] = probes;
  j["alphas"] = report.alphas;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const PerNRecord& rec : report.per_n) {
    nlohmann::ordered_json r;
    r["n"] = rec.n;
    r["sup_depth_gap"] = real(rec.sup_depth_gap);
    r["sup_depth_witness"] = rec.sup_depth_witness;
    nlohmann::ordered_json gaps = nlohmann::ordered_json::array();
    for (double g : rec.depth_gaps_at_probes) gaps.push_back(real(g));
    r["depth_gaps_at_probes"] = gaps;
    nlohmann::ordered_json regions = nlohmann::ordered_json::array();
    for (const auto& ad : rec.region_hausdorff_at_alphas) {
      regions.push_back({{"alpha", real(ad.alpha)}, {"hausdorff", hausdorff_json(ad.result)}});
    }
    r["region_hausdorff_at_alphas"] = regions;
    if (rec.sup_region_hausdorff_on_A) {
      r["sup_region_hausdorff_on_A"] = real(*rec.sup_region_hausdorff_on_A);
    } else {
      r["sup_region_hausdorff_on_A"] = "undefined";
    }
    r["sup_region_witness_alpha"] = real(rec.sup_region_witness_alpha);
    r["alpha_max_n"] = real(rec.alpha_max_n);
    rows.push_back(r);
  }
  j["per_n"] = rows;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  for (const auto& [mode, v] : report.verdicts) {
    verdicts[mode] = {{"passed", v.passed},
                      {"statistic", real(v.statistic)},
                      {"threshold", real(v.threshold)},
                      {"detail", v.detail}};
  }
  j["verdicts"] = verdicts;
  return j.dump(2) + "\n";
}

void write_sup_gap_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "n,sup_depth_gap\n";
  for (const PerNRecord& rec : report.per_n) out << rec.n << ',' << format_real(rec.sup_depth_gap) << '\n';
}

void write_region_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "n,alpha,hausdorff\n";
  for (const PerNRecord& rec : report.per_n) {
    for (const auto& ad : rec.region_hausdorff_at_alphas) {
      out << rec.n << ',' << format_real(ad.alpha) << ','
          << (ad.result.defined() ? format_real(ad.result.distance) : std::string("undefined")) << '\n';
    }
  }
}

}  // namespace depthkit
