#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthkit/counterexamples.hpp"
#include "depthkit/depths.hpp"
#include "depthkit/format.hpp"
#include "depthkit/hausdorff.hpp"
#include "depthkit/measures.hpp"
#include "depthkit/regions.hpp"

namespace depthkit::cli {
namespace {

/// Bad flags or unreadable input: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

struct Source {
  std::optional<Measure1D> measure;
  std::optional<EmpiricalMeasure> data;
  std::string label;

  std::size_t dimension() const { return measure ? 1 : data->dimension(); }
};

std::optional<int> family_from_spec(const std::string& text, std::size_t* n) {
  static const std::regex pattern(R"(ex(?:2\.)?([1-4])(?::P(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  if (n) *n = m[2].matched ? std::stoul(m[2].str()) : 0;
  return std::stoi(m[1].str());
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

Source load_source(const std::string& measure, const std::string& data) {
  if (measure.empty() == data.empty()) throw UsageError("give exactly one of --measure or --data");
  Source s;
  if (!measure.empty()) {
    std::size_t n = 0;
    if (const auto id = family_from_spec(measure, &n)) {
      s.measure = build_family(*id, n);
    } else {
      auto in = open_input(measure);
      s.measure = read_measure1d(in);
    }
    s.label = measure;
  } else {
    auto in = open_input(data);
    s.data = read_empirical_csv(in);
    s.label = data;
  }
  return s;
}

DepthPtr build_depth(const std::string& name, const Source& s, std::size_t directions, double tol) {
  if (s.measure) {
    if (name != "halfspace") throw UsageError("depth '" + name + "' needs --data; a --measure supports halfspace only");
    return make_halfspace(*s.measure);
  }
  if (name == "asym-mahalanobis") return make_asym_mahalanobis(*s.data, directions);
  if (name == "zonoid") return make_zonoid(*s.data, tol);
  if (name == "mahalanobis" || name == "halfspace") return make_depth(name, *s.data);
  throw UsageError("unknown depth '" + name + "'");
}

double measure_mean(const Measure1D& m) {
  double mean = 0.0;
  for (const Component& c : m.components()) {
    if (const auto* seg = std::get_if<UniformSegment>(&c.kind)) {
      mean += c.weight * 0.5 * (seg->lo + seg->hi);
    } else {
      mean += c.weight * std::get<Atom>(c.kind).x;
    }
  }
  return mean;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::optional<std::vector<double>> parse_grid(const std::string& text) {
  static const std::regex pattern(R"(grid\(([^)]*)\))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  const auto v = parse_numbers(m[1].str());
  if (v.size() != 3) throw UsageError("grid needs grid(lo,hi,step)");
  try {
    return linear_grid(v[0], v[1], v[2]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<Point> resolve_points(const std::string& spec, const Source& s) {
  const std::size_t d = s.dimension();
  if (spec == "mean") {
    if (s.measure) return {{measure_mean(*s.measure)}};
    return {moments(*s.data).mean};
  }
  if (spec == "data") {
    if (!s.data) throw UsageError("--points data needs --data");
    std::vector<Point> out;
    for (std::size_t i = 0; i < s.data->size(); ++i) out.emplace_back(s.data->point(i).begin(), s.data->point(i).end());
    return out;
  }
  if (spec == "vertex") {
    if (s.measure) return {{s.measure->support_min()}};
    // The lexicographically smallest sample point is a vertex of the hull.
    Point best(s.data->point(0).begin(), s.data->point(0).end());
    for (std::size_t i = 1; i < s.data->size(); ++i) {
      Point p(s.data->point(i).begin(), s.data->point(i).end());
      if (p < best) best = p;
    }
    return {best};
  }
  if (const auto axis = parse_grid(spec)) {
    std::vector<Point> out;
    if (d == 1) {
      for (double x : *axis) out.push_back({x});
    } else if (d == 2) {
      for (double x : *axis) {
        for (double y : *axis) out.push_back({x, y});
      }
    } else {
      throw UsageError("grid points support d = 1 or 2");
    }
    return out;
  }
  auto in = open_input(spec);
  const EmpiricalMeasure pts = read_empirical_csv(in);
  if (pts.dimension() != d) throw UsageError("points file has dimension " + std::to_string(pts.dimension()));
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) out.emplace_back(pts.point(i).begin(), pts.point(i).end());
  return out;
}

/// Writes to --out when given, else to the supplied stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void echo(std::ostream& out, const ConfigEcho& config) {
  out << "# " << kVersion << '\n';
  for (const auto& [key, value] : config) out << "# " << key << ": " << value << '\n';
}

Json config_json(const ConfigEcho& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& item : items) s += (s.empty() ? "" : ",") + item;
  return s;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(v);
  return a;
}

// ---------------------------------------------------------------------------

struct CommonOptions {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
};

struct DepthOptions {
  std::string depth;
  std::string measure;
  std::string data;
  std::string points = "mean";
  std::size_t directions = 360;
  double tol = 1e-9;
  double alpha = 0.0;
};

int cmd_depth(const DepthOptions& o, const CommonOptions& c, std::ostream& stdout_stream) {
  check_format(c.format);
  const Source s = load_source(o.measure, o.data);
  const DepthPtr d = build_depth(o.depth, s, o.directions, o.tol);
  const auto points = resolve_points(o.points, s);
  const ConfigEcho config{{"command", "depth"},          {"depth", o.depth},
                          {"source", s.label},           {"points", o.points},
                          {"directions", std::to_string(o.directions)},
                          {"tol", format_real(o.tol)},   {"format", c.format}};
  Output out(c.out, stdout_stream);
  if (c.format == "json") {
    Json j;
    j["version"] = kVersion;
    j["config"] = config_json(config);
    Json rows = Json::array();
    for (const Point& z : points) rows.push_back({{"point", point_json(z)}, {"depth", d->depth(z)}});
    j["rows"] = rows;
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  echo(out.stream(), config);
  out.stream() << (s.dimension() == 1 ? "x,depth\n" : s.dimension() == 2 ? "x,y,depth\n" : "point,depth\n");
  for (const Point& z : points) {
    for (double v : z) out.stream() << format_real(v) << ',';
    out.stream() << format_real(d->depth(z)) << '\n';
  }
  return 0;
}

int cmd_region(const DepthOptions& o, const CommonOptions& c, std::ostream& stdout_stream) {
  check_format(c.format);
  if (!(o.alpha > 0.0 && o.alpha <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");
  const Source s = load_source(o.measure, o.data);
  if (s.dimension() > 2) throw UsageError("regions support d = 1 or 2, got d = " + std::to_string(s.dimension()));
  const DepthPtr d = build_depth(o.depth, s, o.directions, o.tol);
  const TrimmedRegion region = s.measure ? TrimmedRegion(region_1d_halfspace(*s.measure, o.alpha))
                                         : trimmed_region(*d, o.alpha, o.directions);
  const ConfigEcho config{{"command", "region"},
                          {"depth", o.depth},
                          {"source", s.label},
                          {"alpha", format_real(o.alpha)},
                          {"directions", std::to_string(o.directions)},
                          {"format", c.format}};
  Output out(c.out, stdout_stream);
  if (c.format == "json") {
    Json j;
    j["version"] = kVersion;
    j["config"] = config_json(config);
    if (const auto* r = std::get_if<Region1D>(&region)) {
      j["region"] = r->is_empty() ? Json("EMPTY") : Json{{"lo", r->lo()}, {"hi", r->hi()}};
    } else {
      const auto& r2 = std::get<Region2D>(region);
      if (r2.is_empty()) {
        j["region"] = "EMPTY";
      } else {
        Json verts = Json::array();
        for (const Vec2 v : r2.polygon->vertices()) verts.push_back({v.x, v.y});
        j["region"] = {{"vertices", verts}, {"inner_approximation", r2.inner}};
      }
    }
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  echo(out.stream(), config);
  if (const auto* r = std::get_if<Region1D>(&region)) {
    write_region1d(out.stream(), *r);
  } else {
    write_polygon_csv(out.stream(), std::get<Region2D>(region));
  }
  return 0;
}

TrimmedRegion read_region_file(const std::string& path) {
  auto in = open_input(path);
  std::string first;
  std::getline(in, first);
  while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
  in.clear();
  in.seekg(0);
  if (first == "x,y") return read_polygon_csv(in);
  return read_region1d(in);
}

int cmd_hausdorff(const std::string& a_path, const std::string& b_path, const CommonOptions& c,
                  std::ostream& stdout_stream) {
  check_format(c.format);
  const TrimmedRegion a = read_region_file(a_path);
  const TrimmedRegion b = read_region_file(b_path);
  // An EMPTY record reads as an interval; match it to the other operand's kind.
  auto align = [](const TrimmedRegion& r, const TrimmedRegion& other) -> TrimmedRegion {
    if (r.index() == other.index()) return r;
    if (const auto* i = std::get_if<Region1D>(&r); i && i->is_empty()) return Region2D{};
    throw UsageError("regions have different kinds");
  };
  const TrimmedRegion aa = align(a, b);
  const TrimmedRegion bb = align(b, aa);
  const HausdorffResult h = hausdorff(aa, bb);
  const ConfigEcho config{{"command", "hausdorff"}, {"a", a_path}, {"b", b_path}, {"format", c.format}};
  Output out(c.out, stdout_stream);
  if (c.format == "json") {
    Json j;
    j["version"] = kVersion;
    j["config"] = config_json(config);
    if (h.defined()) {
      j["result"] = {{"status", "defined"},
                     {"distance", h.distance},
                     {"directed_ab", h.directed_ab},
                     {"directed_ba", h.directed_ba}};
    } else {
      j["result"] = {{"status", "undefined_empty_operand"}};
    }
    out.stream() << j.dump(2) << '\n';
    return 0;
  }
  echo(out.stream(), config);
  out.stream() << "distance,directed_ab,directed_ba,status\n";
  if (h.defined()) {
    out.stream() << format_real(h.distance) << ',' << format_real(h.directed_ab) << ',' << format_real(h.directed_ba)
                 << ",defined\n";
  } else {
    out.stream() << ",,,undefined_empty_operand\n";
  }
  return 0;
}

struct ConvergeOptions {
  std::string family;
  std::string empirical;
  std::string depth = "halfspace";
  std::string n = "1..50";
  std::string modes = "ptwd,unid,ptwr,comr";
  std::string alphas = "0.25";
  std::string probes = "0,-0.5,0.5,-1,1,-1.5,1.5,-2,2";
  std::string a_interval = "0.05,0.45";
  std::size_t alpha_grid = 81;
  double threshold = 0.01;
  std::string plot_prefix;
};

int cmd_converge(const ConvergeOptions& o, const CommonOptions& c, std::ostream& stdout_stream) {
  check_format(c.format);
  if (o.family.empty() == o.empirical.empty()) throw UsageError("give exactly one of --family or --empirical");
  const auto ns = parse_n_list(o.n);
  auto modes = split(o.modes);
  for (const auto& m : modes) {
    if (m != "ptwd" && m != "unid" && m != "comd" && m != "ptwr" && m != "comr" && m != "rc") {
      throw UsageError("unknown mode '" + m + "'");
    }
  }
  ConvergenceReport report;
  ConfigEcho config{{"command", "converge"}};
  std::optional<RangeConditionReport> rc;
  if (!o.family.empty()) {
    const auto id = family_from_spec(o.family, nullptr);
    if (!id) throw UsageError("unknown family '" + o.family + "'");
    const Measure1D p0 = build_family(*id, 0);
    std::vector<Measure1D> measures{p0};
    DepthSequence seq;
    for (std::size_t n : ns) {
      if (n == 0) throw UsageError("sequence indices start at 1");
      measures.push_back(build_family(*id, n));
      seq.push_back({n, make_halfspace(measures.back())});
    }
    const DepthPtr ref = make_halfspace(p0);
    std::vector<Point> probes;
    for (double x : parse_numbers(o.probes)) probes.push_back({x});
    std::vector<Point> grid;
    for (double x : breakpoint_grid(measures, -3.5, 3.5, 0.01)) grid.push_back({x});
    report = depth_convergence(seq, *ref, probes, grid);
    const auto a = parse_numbers(o.a_interval);
    if (a.size() != 2 || !(a[0] > 0.0 && a[0] <= a[1])) throw UsageError("--A needs lo,hi with 0 < lo <= hi");
    RegionGrid rg{parse_numbers(o.alphas), a[0], a[1], o.alpha_grid, critical_levels(measures)};
    region_convergence(seq, *ref, rg, report);
    if (std::find(modes.begin(), modes.end(), "rc") != modes.end()) rc = range_condition_check(seq, *ref);
    config.push_back({"family", o.family});
    config.push_back({"depth", "halfspace"});
    config.push_back({"probes", o.probes});
    config.push_back({"sup_grid", "grid(-3.5,3.5,0.01) + breakpoints + midpoints"});
    config.push_back({"alphas", o.alphas});
    config.push_back({"A", o.a_interval});
    config.push_back({"alpha_grid", std::to_string(o.alpha_grid) + " + critical levels"});
  } else {
    if (o.empirical != "uniform01") throw UsageError("unknown empirical spec '" + o.empirical + "'");
    if (o.depth != "halfspace") throw UsageError("--empirical supports --depth halfspace");
    report = empirical_uniform_experiment(ns, c.seed);
    std::erase_if(modes, [](const std::string& m) { return m != "ptwd" && m != "unid" && m != "comd"; });
    if (modes.empty()) modes = {"unid"};
    config.push_back({"empirical", o.empirical});
    config.push_back({"depth", o.depth});
    config.push_back({"seed", std::to_string(c.seed)});
    config.push_back({"sup_grid", "grid(0,1,0.001)"});
  }
  config.push_back({"n", o.n});
  config.push_back({"modes", join(modes)});
  config.push_back({"threshold", format_real(o.threshold)});
  config.push_back({"format", c.format});
  std::vector<std::string> sequence_modes;
  for (const auto& m : modes) {
    if (m != "rc") sequence_modes.push_back(m);
  }
  assign_verdicts(report, sequence_modes, o.threshold);
  if (rc) {
    report.verdicts["rc"] = {rc->passed, rc->limsup_estimate, rc->reference,
                             "tail max of alpha_max(P_n) against alpha_max(P)"};
  }
  report.config = config;

  if (!o.plot_prefix.empty()) {
    std::ofstream gaps(o.plot_prefix + "_sup_gap.csv");
    std::ofstream regions(o.plot_prefix + "_regions.csv");
    if (!gaps || !regions) throw UsageError("cannot write plot files with prefix '" + o.plot_prefix + "'");
    echo(gaps, config);
    write_sup_gap_csv(gaps, report);
    echo(regions, config);
    write_region_csv(regions, report);
  }
  Output out(c.out, stdout_stream);
  if (c.format == "json") {
    out.stream() << report_json(report);
  } else {
    echo(out.stream(), config);
    write_sup_gap_csv(out.stream(), report);
    write_region_csv(out.stream(), report);
    out.stream() << "mode,passed,statistic,threshold,detail\n";
    for (const auto& [mode, v] : report.verdicts) {
      out.stream() << mode << ',' << (v.passed ? "pass" : "fail") << ',' << format_real(v.statistic) << ','
                   << format_real(v.threshold) << ',' << v.detail << '\n';
    }
  }
  return 0;
}

struct VerifyOptions {
  std::string family;
  std::string n = "1..100";
  std::string axioms;
  std::size_t trials = 100;
  double tol = 1e-12;
};

void write_axioms(std::ostream& out, const AxiomsReport& r) {
  out << "# axioms " << r.depth << '\n';
  out << "axiom,trials,passed,worst,witness\n";
  const std::pair<const char*, const AxiomOutcome*> rows[] = {{"D1_affine_invariance", &r.affine_invariance},
                                                                {"D2_vanishing_at_infinity", &r.vanishing},
                                                                {"D4_quasiconcavity", &r.quasiconcavity},
                                                                {"R5_nesting", &r.nesting}};
  for (const auto& [name, o] : rows) {
    out << name << ',' << o->trials << ',' << (o->passed ? "pass" : "FAIL") << ',' << format_real(o->worst) << ','
        << o->witness << '\n';
  }
}

int cmd_verify(const VerifyOptions& o, const CommonOptions& c, std::ostream& stdout_stream) {
  check_format(c.format);
  if (o.family.empty() && o.axioms.empty()) throw UsageError("give --family and/or --axioms");
  ConfigEcho config{{"command", "verify"}};
  std::vector<ClaimReport> claims;
  if (!o.family.empty()) {
    std::vector<int> ids;
    if (o.family == "all") {
      ids = {1, 2, 3, 4};
    } else {
      for (const auto& item : split(o.family)) {
        const auto id = family_from_spec(item, nullptr);
        if (!id) throw UsageError("unknown family '" + item + "'");
        ids.push_back(*id);
      }
    }
    const auto ns = parse_n_list(o.n);
    const std::size_t lo = *std::min_element(ns.begin(), ns.end());
    const std::size_t hi = *std::max_element(ns.begin(), ns.end());
    for (int id : ids) claims.push_back(verify_claims(id, lo, hi, o.tol));
    config.push_back({"family", o.family});
    config.push_back({"n", o.n});
    config.push_back({"tol", format_real(o.tol)});
  }
  std::optional<AxiomsReport> axioms;
  if (!o.axioms.empty()) {
    if (o.trials == 0) throw UsageError("--trials must be positive");
    const std::string name = o.axioms;
    if (name != "mahalanobis" && name != "halfspace" && name != "zonoid" && name != "asym-mahalanobis") {
      throw UsageError("unknown depth '" + name + "'");
    }
    axioms = axioms_check(name, [name](const EmpiricalMeasure& e) { return make_depth(name, e); }, o.trials, c.seed);
    config.push_back({"axioms", name});
    config.push_back({"trials", std::to_string(o.trials)});
    config.push_back({"seed", std::to_string(c.seed)});
  }
  config.push_back({"format", c.format});

  bool passed = true;
  for (const auto& r : claims) passed = passed && r.passed();
  if (axioms) passed = passed && axioms->passed();

  Output out(c.out, stdout_stream);
  if (c.format == "json") {
    Json j = Json::parse(claims_json(claims));
    j["config"] = config_json(config);
    if (axioms) {
      auto outcome = [](const AxiomOutcome& a) {
        return Json{{"trials", a.trials}, {"passed", a.passed}, {"worst", a.worst}, {"witness", a.witness}};
      };
      j["axioms"] = {{"depth", axioms->depth},
                     {"D1_affine_invariance", outcome(axioms->affine_invariance)},
                     {"D2_vanishing_at_infinity", outcome(axioms->vanishing)},
                     {"D4_quasiconcavity", outcome(axioms->quasiconcavity)},
                     {"R5_nesting", outcome(axioms->nesting)}};
    }
    j["passed"] = passed;
    out.stream() << j.dump(2) << '\n';
  } else {
    echo(out.stream(), config);
    for (const auto& r : claims) write_claims_table(out.stream(), r);
    if (axioms) write_axioms(out.stream(), *axioms);
    out.stream() << (passed ? "# all claims pass\n" : "# some claims FAIL\n");
  }
  return passed ? 0 : 1;
}

}  // namespace

std::vector<std::size_t> parse_n_list(const std::string& text) {
  static const std::regex range(R"((\d+)\.\.(\d+))");
  std::smatch m;
  std::vector<std::size_t> out;
  if (std::regex_match(text, m, range)) {
    const std::size_t lo = std::stoul(m[1].str());
    const std::size_t hi = std::stoul(m[2].str());
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    if (hi - lo > 1'000'000) throw UsageError("range '" + text + "' is too long");
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  static const std::regex integer(R"(\d+)");
  for (const auto& item : split(text)) {
    if (!std::regex_match(item, integer)) throw UsageError("bad n list '" + text + "'");
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw UsageError("empty n list");
  return out;
}

ConvergenceReport empirical_uniform_experiment(const std::vector<std::size_t>& sizes, std::uint64_t seed) {
  const Measure1D law = Measure1D::uniform(0.0, 1.0);
  DepthSequence seq;
  for (std::size_t n : sizes) {
    if (n == 0) throw std::invalid_argument("sample size must be positive");
    seq.push_back({n, make_halfspace(sample(law, n, seed))});
  }
  std::vector<Point> grid;
  for (double x : linear_grid(0.0, 1.0, 0.001)) grid.push_back({x});
  const std::vector<Point> probes{{0.25}, {0.5}, {0.75}};
  return depth_convergence(seq, *make_halfspace(law), probes, grid);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data depth, trimmed regions and convergence diagnostics"};
  app.name("depthkit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "csv or json")->capture_default_str();
    sub->add_option("--out", common.out, "output path (default standard output)");
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
  };

  DepthOptions depth_opts;
  auto add_depth_inputs = [&](CLI::App* sub) {
    sub->add_option("--depth", depth_opts.depth, "mahalanobis, asym-mahalanobis, halfspace or zonoid")->required();
    sub->add_option("--measure", depth_opts.measure, "built-in exK:Pn or a Measure1D table file");
    sub->add_option("--data", depth_opts.data, "CSV point cloud");
    sub->add_option("--directions", depth_opts.directions, "direction count for 2-D sphere grids")
        ->capture_default_str();
    sub->add_option("--tol", depth_opts.tol, "solver tolerance")->capture_default_str();
  };

  auto* depth = app.add_subcommand("depth", "evaluate a depth at points");
  add_depth_inputs(depth);
  depth->add_option("--points", depth_opts.points, "mean, data, vertex, grid(lo,hi,step) or a CSV path")
      ->capture_default_str();
  add_common(depth);

  auto* region = app.add_subcommand("region", "compute a trimmed region");
  add_depth_inputs(region);
  region->add_option("--alpha", depth_opts.alpha, "depth level in (0, 1]")->required();
  add_common(region);

  std::string a_path;
  std::string b_path;
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two region files");
  haus->add_option("--a", a_path, "first region (lo,hi / EMPTY / polygon CSV)")->required();
  haus->add_option("--b", b_path, "second region")->required();
  add_common(haus);

  ConvergeOptions conv;
  auto* converge = app.add_subcommand("converge", "convergence diagnostics over a sequence of measures");
  converge->add_option("--family", conv.family, "ex1..ex4");
  converge->add_option("--empirical", conv.empirical, "uniform01");
  converge->add_option("--depth", conv.depth, "depth for --empirical")->capture_default_str();
  converge->add_option("--n", conv.n, "a..b or a comma list")->capture_default_str();
  converge->add_option("--modes", conv.modes, "ptwd,unid,comd,ptwr,comr,rc")->capture_default_str();
  converge->add_option("--alphas", conv.alphas, "fixed levels for ptwr")->capture_default_str();
  converge->add_option("--probes", conv.probes, "probe points for ptwd")->capture_default_str();
  converge->add_option("--A", conv.a_interval, "alpha interval lo,hi for comr")->capture_default_str();
  converge->add_option("--alpha-grid", conv.alpha_grid, "levels on A")->capture_default_str();
  converge->add_option("--threshold", conv.threshold, "pass threshold")->capture_default_str();
  converge->add_option("--plot-prefix", conv.plot_prefix, "also write <prefix>_sup_gap.csv and <prefix>_regions.csv");
  add_common(converge);

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "check the counterexample claims and axiom suites");
  verify->add_option("--family", ver.family, "ex1..ex4, a comma list or all");
  verify->add_option("--n", ver.n, "a..b")->capture_default_str();
  verify->add_option("--axioms", ver.axioms, "depth name for the randomized axiom suite");
  verify->add_option("--trials", ver.trials, "axiom trials")->capture_default_str();
  verify->add_option("--tol", ver.tol, "equality tolerance")->capture_default_str();
  add_common(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (depth->parsed()) return cmd_depth(depth_opts, common, out);
    if (region->parsed()) return cmd_region(depth_opts, common, out);
    if (haus->parsed()) return cmd_hausdorff(a_path, b_path, common, out);
    if (converge->parsed()) return cmd_converge(conv, common, out);
    if (verify->parsed()) return cmd_verify(ver, common, out);
  } catch (const ParseError& e) {
    err << "depthkit: input error at line " << e.line() << ": " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "depthkit: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "depthkit: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "depthkit: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace depthkit::cli
