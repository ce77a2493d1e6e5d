#include "depthkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "depthkit/format.hpp"

namespace depthkit {
namespace {

constexpr double kWeightSumTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double segment_fraction_below(const UniformSegment& s, double x) {
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return 1.0;
  return (x - s.lo) / (s.hi - s.lo);
}

double segment_fraction_above(const UniformSegment& s, double x) {
  if (x <= s.lo) return 1.0;
  if (x >= s.hi) return 0.0;
  return (s.hi - x) / (s.hi - s.lo);
}

bool parse_real(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size() && std::isfinite(out);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

// ---------------------------------------------------------------------------
// Measure1D

Measure1D::Measure1D(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("Measure1D needs at least one component");
  }
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw std::invalid_argument("Measure1D component weight must be >= 0");
    }
    total += c.weight;
    if (const auto* s = std::get_if<UniformSegment>(&c.kind)) {
      if (!(s->lo < s->hi) || !std::isfinite(s->lo) || !std::isfinite(s->hi)) {
        throw std::invalid_argument("Measure1D segment needs lo < hi");
      }
    } else if (!std::isfinite(std::get<Atom>(c.kind).x)) {
      throw std::invalid_argument("Measure1D atom location must be finite");
    }
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("Measure1D weights sum to " + format_real(total) +
                                ", expected 1");
  }
}

Measure1D Measure1D::uniform(double lo, double hi) {
  return Measure1D({{UniformSegment{lo, hi}, 1.0}});
}

Measure1D Measure1D::atom(double x) { return Measure1D({{Atom{x}, 1.0}}); }

double Measure1D::cdf(double x) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    sum += c.weight *
           std::visit(Overloaded{
                          [x](const UniformSegment& s) { return segment_fraction_below(s, x); },
                          [x](const Atom& a) { return x >= a.x ? 1.0 : 0.0; }},
                      c.kind);
  }
  return std::min(sum, 1.0);
}

double Measure1D::cdf_left(double x) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    sum += c.weight *
           std::visit(Overloaded{
                          [x](const UniformSegment& s) { return segment_fraction_below(s, x); },
                          [x](const Atom& a) { return x > a.x ? 1.0 : 0.0; }},
                      c.kind);
  }
  return std::min(sum, 1.0);
}

double Measure1D::tail(double x) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    sum += c.weight *
           std::visit(Overloaded{
                          [x](const UniformSegment& s) { return segment_fraction_above(s, x); },
                          [x](const Atom& a) { return x <= a.x ? 1.0 : 0.0; }},
                      c.kind);
  }
  return std::min(sum, 1.0);
}

double Measure1D::atom_mass(double x) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    if (const auto* a = std::get_if<Atom>(&c.kind); a && a->x == x) sum += c.weight;
  }
  return sum;
}

double Measure1D::quantile(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
  const auto points = breakpoints();
  double previous = points.front();
  double below = cdf(previous);
  if (below >= t) return previous;
  for (std::size_t k = 1; k < points.size(); ++k) {
    const double b = points[k];
    const double left_limit = cdf_left(b);
    if (left_limit >= t) {
      // The CDF is linear on (previous, b) from `below` up to `left_limit`.
      if (left_limit == t) return b;
      return previous + (t - below) / (left_limit - below) * (b - previous);
    }
    const double at = cdf(b);
    if (at >= t) return b;
    previous = b;
    below = at;
  }
  return points.back();
}

double Measure1D::upper_quantile(double t) const { return -mirrored().quantile(t); }

std::vector<double> Measure1D::breakpoints() const {
  std::vector<double> points;
  for (const auto& c : components_) {
    std::visit(Overloaded{[&](const UniformSegment& s) {
                            points.push_back(s.lo);
                            points.push_back(s.hi);
                          },
                          [&](const Atom& a) { points.push_back(a.x); }},
               c.kind);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double Measure1D::support_min() const {
  double lo = INFINITY;
  for (const auto& c : components_) {
    if (c.weight <= 0.0) continue;
    lo = std::min(lo, std::visit(Overloaded{[](const UniformSegment& s) { return s.lo; },
                                            [](const Atom& a) { return a.x; }},
                                 c.kind));
  }
  return lo;
}

double Measure1D::support_max() const {
  double hi = -INFINITY;
  for (const auto& c : components_) {
    if (c.weight <= 0.0) continue;
    hi = std::max(hi, std::visit(Overloaded{[](const UniformSegment& s) { return s.hi; },
                                            [](const Atom& a) { return a.x; }},
                                 c.kind));
  }
  return hi;
}

Measure1D Measure1D::mirrored() const {
  std::vector<Component> out;
  out.reserve(components_.size());
  for (const auto& c : components_) {
    out.push_back(std::visit(
        Overloaded{[&](const UniformSegment& s) { return Component{UniformSegment{-s.hi, -s.lo}, c.weight}; },
                   [&](const Atom& a) { return Component{Atom{-a.x}, c.weight}; }},
        c.kind));
  }
  return Measure1D(std::move(out));
}

// ---------------------------------------------------------------------------
// EmpiricalMeasure

EmpiricalMeasure::EmpiricalMeasure(std::size_t dimension, std::vector<double> coordinates)
    : EmpiricalMeasure(dimension, coordinates,
                       std::vector<double>(dimension == 0 ? 0 : coordinates.size() / dimension,
                                           dimension == 0 || coordinates.empty()
                                               ? 0.0
                                               : 1.0 / static_cast<double>(coordinates.size() / dimension))) {}

EmpiricalMeasure::EmpiricalMeasure(std::size_t dimension, std::vector<double> coordinates,
                                   std::vector<double> weights)
    : dimension_(dimension), coordinates_(std::move(coordinates)), weights_(std::move(weights)) {
  if (dimension_ == 0) throw std::invalid_argument("EmpiricalMeasure dimension must be >= 1");
  if (weights_.empty()) throw std::invalid_argument("EmpiricalMeasure needs at least one point");
  if (coordinates_.size() != weights_.size() * dimension_) {
    throw std::invalid_argument("EmpiricalMeasure coordinate count does not match n*d");
  }
  for (double v : coordinates_) {
    if (!std::isfinite(v)) throw std::invalid_argument("EmpiricalMeasure has a non-finite coordinate");
  }
  long double total = 0.0L;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("EmpiricalMeasure weights must be >= 0");
    }
    total += w;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("EmpiricalMeasure weights sum to " + format_real(static_cast<double>(total)) +
                                ", expected 1");
  }
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [&](double w) { return w == weights_.front(); });
}

EmpiricalMeasure EmpiricalMeasure::from_points(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("EmpiricalMeasure needs at least one point");
  const std::size_t d = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * d);
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("points have mixed dimensions");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return EmpiricalMeasure(d, std::move(coords));
}

EmpiricalMeasure EmpiricalMeasure::transformed(std::span<const double> matrix,
                                               std::span<const double> shift) const {
  const std::size_t d = dimension_;
  if (matrix.size() != d * d || shift.size() != d) {
    throw std::invalid_argument("affine map has the wrong shape");
  }
  std::vector<double> out(coordinates_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto x = point(i);
    for (std::size_t r = 0; r < d; ++r) {
      double v = shift[r];
      for (std::size_t c = 0; c < d; ++c) v += matrix[r * d + c] * x[c];
      out[i * d + r] = v;
    }
  }
  return EmpiricalMeasure(d, std::move(out), weights_);
}

// ---------------------------------------------------------------------------
// Moments and projections

MomentSummary moments(const EmpiricalMeasure& e) {
  const std::size_t d = e.dimension();
  MomentSummary m;
  m.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto x = e.point(i);
    for (std::size_t k = 0; k < d; ++k) m.mean[k] += e.weight(i) * x[k];
  }
  m.covariance.assign(d * d, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto x = e.point(i);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) {
        m.covariance[r * d + c] += e.weight(i) * (x[r] - m.mean[r]) * (x[c] - m.mean[c]);
      }
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < r; ++c) m.covariance[r * d + c] = m.covariance[c * d + r];
  }

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> cov(
      m.covariance.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const auto& ev = eig.eigenvalues();
  const double largest = ev.maxCoeff();
  m.rank = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (largest > 0.0 && ev[k] > largest / kMaxConditionNumber) ++m.rank;
  }
  m.degenerate = m.rank < d;
  return m;
}

SortedProjection sorted_projection(const EmpiricalMeasure& e, std::span<const double> direction) {
  const std::size_t n = e.size();
  std::vector<double> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = e.point(i);
    double v = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) v += direction[k] * x[k];
    proj[i] = v;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
  SortedProjection out;
  out.values.reserve(n);
  out.weights.reserve(n);
  for (std::size_t i : order) {
    out.values.push_back(proj[i]);
    out.weights.push_back(e.weight(i));
  }
  return out;
}

double projection_quantile(const EmpiricalMeasure& e, std::span<const double> direction, double t) {
  if (direction.size() != e.dimension()) throw std::invalid_argument("direction has the wrong dimension");
  if (std::all_of(direction.begin(), direction.end(), [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("direction must be non-zero");
  }
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
  const auto sp = sorted_projection(e, direction);
  const std::size_t n = sp.values.size();
  if (e.has_uniform_weights()) {
    for (std::size_t k = 1; k <= n; ++k) {
      if (static_cast<double>(k) / static_cast<double>(n) >= t) return sp.values[k - 1];
    }
    return sp.values.back();
  }
  double cumulative = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += sp.weights[i];
    if (cumulative >= t - kWeightSumTolerance) return sp.values[i];
  }
  return sp.values.back();
}

// ---------------------------------------------------------------------------
// Sampling

EmpiricalMeasure sample(const Measure1D& m, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be >= 1");
  std::mt19937_64 gen(seed);
  const auto& comps = m.components();
  std::vector<double> cumulative(comps.size());
  double running = 0.0;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    running += comps[k].weight;
    cumulative[k] = running;
  }
  std::vector<double> draws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = unit_interval(gen()) * running;
    const double position = unit_interval(gen());
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    k = std::min(k, comps.size() - 1);
    while (comps[k].weight <= 0.0 && k > 0) --k;
    draws[i] = std::visit(
        Overloaded{[&](const UniformSegment& s) { return s.lo + position * (s.hi - s.lo); },
                   [](const Atom& a) { return a.x; }},
        comps[k].kind);
  }
  return EmpiricalMeasure(1, std::move(draws));
}

// ---------------------------------------------------------------------------
// File formats

Measure1D read_measure1d(std::istream& in) {
  std::vector<Component> comps;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    std::vector<double> values(tokens.size() - 1);
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      if (!parse_real(tokens[k], values[k - 1])) {
        throw ParseError(line_no, "not a finite number: '" + tokens[k] + "'");
      }
    }
    if (tokens[0] == "segment") {
      if (values.size() != 3) throw ParseError(line_no, "expected: segment <lo> <hi> <weight>");
      if (!(values[0] < values[1])) throw ParseError(line_no, "segment needs lo < hi");
      comps.push_back({UniformSegment{values[0], values[1]}, values[2]});
    } else if (tokens[0] == "atom") {
      if (values.size() != 2) throw ParseError(line_no, "expected: atom <x> <weight>");
      comps.push_back({Atom{values[0]}, values[1]});
    } else {
      throw ParseError(line_no, "unknown component kind '" + tokens[0] + "'");
    }
    if (comps.back().weight < 0.0) throw ParseError(line_no, "negative weight");
  }
  if (comps.empty()) throw ParseError(line_no, "no components");
  try {
    return Measure1D(std::move(comps));
  } catch (const std::invalid_argument& err) {
    throw ParseError(line_no, err.what());
  }
}

void write_measure1d(std::ostream& out, const Measure1D& m) {
  out << "# kind parameters weight\n";
  for (const auto& c : m.components()) {
    std::visit(Overloaded{[&](const UniformSegment& s) {
                            out << "segment " << format_real(s.lo) << ' ' << format_real(s.hi);
                          },
                          [&](const Atom& a) { out << "atom " << format_real(a.x); }},
               c.kind);
    out << ' ' << format_real(c.weight) << '\n';
  }
}

EmpiricalMeasure read_empirical_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    header = split_csv(trim(line));
    break;
  }
  if (header.empty()) throw ParseError(line_no, "missing header row");
  const bool weighted = header.back() == "weight";
  const std::size_t columns = header.size();
  const std::size_t d = weighted ? columns - 1 : columns;
  if (d == 0) throw ParseError(line_no, "header names no coordinate columns");

  std::vector<double> coords;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_csv(t);
    if (fields.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < columns; ++k) {
      double v = 0.0;
      if (!parse_real(fields[k], v)) throw ParseError(line_no, "not a finite number: '" + fields[k] + "'");
      if (weighted && k == d) {
        if (v < 0.0) throw ParseError(line_no, "negative weight");
        weights.push_back(v);
      } else {
        coords.push_back(v);
      }
    }
  }
  if (coords.empty()) throw ParseError(line_no, "no data rows");
  if (!weighted) return EmpiricalMeasure(d, std::move(coords));
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw ParseError(line_no, "weights sum to zero");
  for (double& w : weights) w /= total;
  return EmpiricalMeasure(d, std::move(coords), std::move(weights));
}

void write_empirical_csv(std::ostream& out, const EmpiricalMeasure& e) {
  for (std::size_t k = 0; k < e.dimension(); ++k) out << (k ? "," : "") << 'x' << k + 1;
  out << ",weight\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (double v : e.point(i)) out << format_real(v) << ',';
    out << format_real(e.weight(i)) << '\n';
  }
}

}  // namespace depthkit
