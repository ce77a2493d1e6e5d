#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace oracle {

using depthkit::Atom;
using depthkit::Component;
using depthkit::EmpiricalMeasure;
using depthkit::Measure1D;
using depthkit::UniformSegment;

double zonoid_depth_lp(const Point& z, const EmpiricalMeasure& e) {
  const std::size_t n = e.size();
  const std::size_t d = e.dimension();
  const std::size_t vars = n + 1;
  double best = std::numeric_limits<double>::infinity();
  if (n < d) return 0.0;
  // Each vertex fixes n - d inequalities; each index can be tight at most
  // on one side since s >= 1 > 0.
  const std::size_t k = n - d;
  std::vector<int> state(n, 0);  // 0 free, 1 lower tight, 2 upper tight
  std::vector<bool> chosen(n, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<long>(k), true);
  std::sort(chosen.begin(), chosen.end());
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) idx.push_back(i);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<long>(vars), static_cast<long>(vars));
      Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<long>(vars));
      long row = 0;
      for (std::size_t j = 0; j < d; ++j, ++row) {
        for (std::size_t i = 0; i < n; ++i) a(row, static_cast<long>(i)) = e.point(i)[j];
        b(row) = z[j];
      }
      for (std::size_t i = 0; i < n; ++i) a(row, static_cast<long>(i)) = 1.0;
      b(row++) = 1.0;
      for (std::size_t t = 0; t < k; ++t, ++row) {
        const long i = static_cast<long>(idx[t]);
        a(row, i) = 1.0;
        if (mask >> t & 1) a(row, static_cast<long>(n)) = -e.weight(idx[t]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < static_cast<long>(vars)) continue;
      const Eigen::VectorXd x = lu.solve(b);
      const double s = x(static_cast<long>(n));
      bool ok = s > 0.0;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const double li = x(static_cast<long>(i));
        ok = li >= -1e-11 && li <= e.weight(i) * s + 1e-11;
      }
      if (ok) best = std::min(best, s);
    }
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  return std::isfinite(best) ? std::min(1.0, 1.0 / best) : 0.0;
}

namespace {

double segment_mass_below(const UniformSegment& s, double x) {
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return 1.0;
  return (x - s.lo) / (s.hi - s.lo);
}

}  // namespace

double mixture_cdf(const Measure1D& m, double x) {
  double total = 0.0;
  for (const Component& c : m.components()) {
    if (const auto* s = std::get_if<UniformSegment>(&c.kind)) {
      total += c.weight * segment_mass_below(*s, x);
    } else if (std::get<Atom>(c.kind).x <= x) {
      total += c.weight;
    }
  }
  return total;
}

double mixture_tail(const Measure1D& m, double x) {
  double total = 0.0;
  for (const Component& c : m.components()) {
    if (const auto* s = std::get_if<UniformSegment>(&c.kind)) {
      total += c.weight * (1.0 - segment_mass_below(*s, x));
    } else if (std::get<Atom>(c.kind).x >= x) {
      total += c.weight;
    }
  }
  return total;
}

Measure1D family(int id, std::size_t n) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  if (id == 1 || id == 2) {
    double a = 0.5;
    if (n > 0) a = id == 1 ? 0.5 * (1.0 + sign / static_cast<double>(n)) : 0.5 * (1.0 + 1.0 / static_cast<double>(n));
    std::vector<Component> parts{{UniformSegment{-3.0, -2.0}, a / 2.0},
                                 {UniformSegment{2.0, 3.0}, a / 2.0},
                                 {UniformSegment{-1.0, 1.0}, 1.0 - a}};
    return Measure1D(parts);
  }
  double s = 1.0;
  if (n > 0) s = id == 3 ? 1.0 + sign / static_cast<double>(n + 1) : 1.0 + 1.0 / static_cast<double>(n + 1);
  std::vector<Component> parts{{UniformSegment{-2.0, -s}, 0.15},
                               {UniformSegment{s, 2.0}, 0.15},
                               {UniformSegment{-s, s}, 0.3},
                               {Atom{-s}, 0.2},
                               {Atom{s}, 0.2}};
  return Measure1D(parts);
}

double interval_distance(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(std::abs(a_lo - b_lo), std::abs(a_hi - b_hi));
}

double halfspace_depth_scan(const Point& z, const EmpiricalMeasure& e) {
  std::vector<std::pair<double, double>> normals;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double dx = e.point(i)[0] - z[0];
    const double dy = e.point(i)[1] - z[1];
    if (dx == 0.0 && dy == 0.0) continue;
    // Normals to the line through z and x_i, and small rotations of them.
    for (double eps : {0.0, 1e-7, -1e-7}) {
      const double c = std::cos(eps);
      const double s = std::sin(eps);
      const double nx = -dy * c - dx * s;
      const double ny = -dy * s + dx * c;
      normals.push_back({nx, ny});
      normals.push_back({-nx, -ny});
    }
  }
  if (normals.empty()) return 1.0;
  double best = 1.0;
  for (const auto& [nx, ny] : normals) {
    double w = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double dx = e.point(i)[0] - z[0];
      const double dy = e.point(i)[1] - z[1];
      if (nx * dx + ny * dy >= 0.0) w += e.weight(i);
    }
    best = std::min(best, w);
  }
  return best;
}

depthkit::ConvexPolygon random_polygon(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cx = 4.0 * u(rng) - 2.0;
  const double cy = 4.0 * u(rng) - 2.0;
  const double rx = 0.2 + u(rng);
  const double ry = 0.2 + u(rng);
  std::vector<depthkit::Vec2> pts;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = 2.0 * M_PI * u(rng);
    const double r = 0.7 + 0.3 * u(rng);
    pts.push_back({cx + r * rx * std::cos(t), cy + r * ry * std::sin(t)});
  }
  return depthkit::ConvexPolygon::hull(pts);
}

std::vector<Point> as_points(const std::vector<depthkit::Vec2>& v) {
  std::vector<Point> out;
  for (const auto& p : v) out.push_back({p.x, p.y});
  return out;
}

std::vector<Point> filled_samples(const depthkit::ConvexPolygon& poly, double pitch) {
  std::vector<Point> out = as_points(poly.boundary_samples(pitch));
  const auto& v = poly.vertices();
  if (v.size() < 3) return out;
  double lx = v[0].x, hx = v[0].x, ly = v[0].y, hy = v[0].y;
  for (const auto& p : v) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  for (double x = std::floor(lx / pitch) * pitch; x <= hx; x += pitch) {
    for (double y = std::floor(ly / pitch) * pitch; y <= hy; y += pitch) {
      bool inside = true;
      for (std::size_t i = 0; i < v.size() && inside; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        inside = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) >= 0.0;
      }
      if (inside) out.push_back({x, y});
    }
  }
  return out;
}

EmpiricalMeasure lattice_cloud(std::mt19937_64& rng, std::size_t n, int half_width) {
  std::uniform_int_distribution<int> u(-half_width, half_width);
  std::vector<double> xy;
  for (std::size_t i = 0; i < 2 * n; ++i) xy.push_back(u(rng));
  return EmpiricalMeasure(2, xy);
}

EmpiricalMeasure gaussian_cloud(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const double sx = u(rng);
  const double sy = u(rng);
  const double rho = u(rng) - 1.6;
  std::vector<double> xy;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = g(rng);
    const double b = g(rng);
    xy.push_back(sx * a);
    xy.push_back(sy * (rho * a / 3.0 + b));
  }
  return EmpiricalMeasure(2, xy);
}

}  // namespace oracle
