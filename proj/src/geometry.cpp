#include "depthkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "depthkit/format.hpp"
#include "depthkit/measures.hpp"

namespace depthkit {

// Products with their rounding errors: antisymmetric, and exactly zero
// for parallel copies of the same vector.
double cross(Vec2 a, Vec2 b) {
  const double p = a.x * b.y;
  const double q = a.y * b.x;
  return (p - q) + (std::fma(a.x, b.y, -p) - std::fma(a.y, b.x, -q));
}
double orient(Vec2 o, Vec2 b, Vec2 c) { return cross(b - o, c - o); }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

ConvexPolygon ConvexPolygon::hull(std::vector<Vec2> points, double merge) {
  if (points.empty()) throw std::invalid_argument("hull of an empty point set");
  std::sort(points.begin(), points.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Vec2> unique;
  for (const Vec2 p : points) {
    if (std::none_of(unique.begin(), unique.end(), [&](Vec2 q) { return norm(p - q) <= merge; })) {
      unique.push_back(p);
    }
  }
  if (unique.size() <= 2) return ConvexPolygon(std::move(unique));
  const bool collinear = std::all_of(unique.begin() + 1, unique.end() - 1, [&](Vec2 p) {
    return orient(unique.front(), unique.back(), p) == 0.0;
  });
  if (collinear) return ConvexPolygon({unique.front(), unique.back()});

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Vec2> h(2 * unique.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], unique[i]) <= 0.0) --k;
    h[k++] = unique[i];
  }
  for (std::size_t i = unique.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], unique[i]) <= 0.0) --k;
    h[k++] = unique[i];
  }
  h.resize(k - 1);
  return ConvexPolygon(std::move(h));
}

ConvexPolygon ConvexPolygon::box(Vec2 lo, Vec2 hi) {
  return hull({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

double ConvexPolygon::distance(Vec2 p) const {
  const auto& v = vertices_;
  if (v.size() == 1) return norm(p - v[0]);
  if (v.size() == 2) return segment_distance(p, v[0], v[1]);
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient(v[i], v[(i + 1) % v.size()], p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

std::optional<ConvexPolygon> ConvexPolygon::clipped(Vec2 a, double c, double slack) const {
  const auto& v = vertices_;
  auto value = [&](Vec2 p) { return dot(a, p) - c; };
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 p = v[i];
    const Vec2 q = v[(i + 1) % v.size()];
    const double fp = value(p);
    const double fq = value(q);
    const bool in_p = fp <= slack;
    const bool in_q = fq <= slack;
    if (in_p) out.push_back(p);
    if (v.size() > 1 && in_p != in_q && fp != fq) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
    if (v.size() == 2) break;
  }
  if (v.size() == 2) {
    const bool in_q = value(v[1]) <= slack;
    if (in_q) out.push_back(v[1]);
  }
  if (out.empty()) return std::nullopt;
  return hull(std::move(out));
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (const Vec2 a : vertices_) {
    for (const Vec2 b : vertices_) d = std::max(d, norm(a - b));
  }
  return d;
}

Vec2 ConvexPolygon::centroid() const {
  Vec2 s;
  for (const Vec2 p : vertices_) s = s + p;
  return (1.0 / static_cast<double>(vertices_.size())) * s;
}

std::vector<Vec2> ConvexPolygon::boundary_samples(double pitch) const {
  if (!(pitch > 0.0)) throw std::invalid_argument("pitch must be positive");
  const auto& v = vertices_;
  if (v.size() == 1) return v;
  std::vector<Vec2> out;
  const std::size_t edges = v.size() == 2 ? 2 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % v.size()];
    const auto steps = static_cast<std::size_t>(std::ceil(norm(b - a) / pitch));
    for (std::size_t k = 0; k < std::max<std::size_t>(steps, 1); ++k) {
      out.push_back(a + (static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(steps, 1))) * (b - a));
    }
  }
  return out;
}

Region1D Region1D::interval(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("interval needs lo <= hi");
  Region1D r;
  r.bounds_ = std::make_pair(lo, hi);
  return r;
}

void write_region1d(std::ostream& out, const Region1D& r) {
  if (r.is_empty()) {
    out << "EMPTY\n";
  } else {
    out << format_real(r.lo()) << ',' << format_real(r.hi()) << '\n';
  }
}

namespace {

double parse_number(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ParseError(line, "not a finite number: '" + text + "'");
  return v;
}

std::pair<double, double> parse_pair(const std::string& text, std::size_t line) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw ParseError(line, "expected two comma-separated values");
  }
  return {parse_number(text.substr(0, comma), line), parse_number(text.substr(comma + 1), line)};
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

Region1D read_region1d(std::istream& in) {
  std::string text;
  if (!std::getline(in, text)) throw ParseError(1, "missing region record");
  text = trimmed(text);
  if (text == "EMPTY") return Region1D::empty();
  const auto [lo, hi] = parse_pair(text, 1);
  if (!(lo <= hi)) throw ParseError(1, "interval has lo > hi");
  return Region1D::interval(lo, hi);
}

void write_polygon_csv(std::ostream& out, const Region2D& r) {
  if (r.is_empty()) {
    out << "EMPTY\n";
    return;
  }
  out << "x,y\n";
  for (const Vec2 p : r.polygon->vertices()) out << format_real(p.x) << ',' << format_real(p.y) << '\n';
}

Region2D read_polygon_csv(std::istream& in) {
  std::string text;
  if (!std::getline(in, text)) throw ParseError(1, "missing header");
  text = trimmed(text);
  if (text == "EMPTY") return {};
  if (text != "x,y") throw ParseError(1, "expected header 'x,y'");
  std::vector<Vec2> points;
  std::size_t line = 1;
  while (std::getline(in, text)) {
    ++line;
    text = trimmed(text);
    if (text.empty()) continue;
    const auto [x, y] = parse_pair(text, line);
    points.push_back({x, y});
  }
  if (points.empty()) throw ParseError(line, "polygon has no vertices");
  return {ConvexPolygon::hull(std::move(points)), false};
}

}  // namespace depthkit
