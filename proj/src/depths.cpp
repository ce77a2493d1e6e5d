#include "depthkit/depths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "depthkit/linprog.hpp"

namespace depthkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void require_dimension(std::span<const double> z, std::size_t d) {
  if (z.size() != d) {
    throw std::invalid_argument("point has dimension " + std::to_string(z.size()) +
                                ", expected " + std::to_string(d));
  }
}

struct Vec2 {
  double x;
  double y;
};

// Products with their rounding errors: antisymmetric, and exactly zero
// for parallel copies of the same vector.
double cross(Vec2 a, Vec2 b) {
  const double p = a.x * b.y;
  const double q = a.y * b.x;
  return (p - q) + (std::fma(a.x, b.y, -p) - std::fma(a.y, b.x, -q));
}
double dot2(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
int half_plane(Vec2 v) { return (v.y > 0.0 || (v.y == 0.0 && v.x > 0.0)) ? 0 : 1; }
bool angle_less(Vec2 a, Vec2 b) {
  const int ha = half_plane(a);
  const int hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0.0;
}
bool same_direction(Vec2 a, Vec2 b) { return half_plane(a) == half_plane(b) && cross(a, b) == 0.0; }

/// Accumulates point weights; exact integer counts when weights are uniform.
struct Tally {
  long long count = 0;
  double weight = 0.0;
  void add(double w, int sign = 1) {
    count += sign;
    weight += sign * w;
  }
};

double tally_value(const Tally& t, const EmpiricalMeasure& e) {
  if (e.has_uniform_weights()) return static_cast<double>(t.count) / static_cast<double>(e.size());
  return std::clamp(t.weight, 0.0, 1.0);
}

bool tally_less(const Tally& a, const Tally& b, bool uniform) {
  return uniform ? a.count < b.count : a.weight < b.weight;
}

// ---------------------------------------------------------------------------
// Zonoid membership in whitened coordinates.

class ZonoidProblem {
 public:
  explicit ZonoidProblem(const EmpiricalMeasure& e) : n_(e.size()), d_(e.dimension()), weights_(e.weights()) {
    const auto m = moments(e);
    mean_ = m.mean;
    transform_ = RowMatrix::Identity(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
    const Eigen::Map<const RowMatrix> cov(m.covariance.data(), static_cast<Eigen::Index>(d_),
                                          static_cast<Eigen::Index>(d_));
    if (!m.degenerate) {
      Eigen::LLT<Eigen::MatrixXd> llt(cov);
      if (llt.info() == Eigen::Success) {
        transform_ = llt.matrixL().solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
      }
    } else {
      double scale = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < d_; ++k) scale = std::max(scale, std::abs(e.point(i)[k] - mean_[k]));
      }
      if (scale > 0.0) transform_ /= scale;
    }
    // Row-major (d + 1) x n constraint matrix: whitened coordinates, then ones.
    matrix_.assign((d_ + 1) * n_, 1.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto y = whiten(e.point(i));
      for (std::size_t k = 0; k < d_; ++k) matrix_[k * n_ + i] = y[k];
    }
    min_weight_ = kInf;
    for (double w : weights_) {
      if (w > 0.0) min_weight_ = std::min(min_weight_, w);
    }
  }

  std::vector<double> whiten(std::span<const double> x) const {
    Eigen::VectorXd c(static_cast<Eigen::Index>(d_));
    for (std::size_t k = 0; k < d_; ++k) c[static_cast<Eigen::Index>(k)] = x[k] - mean_[k];
    const Eigen::VectorXd y = transform_ * c;
    return {y.data(), y.data() + y.size()};
  }

  bool contains_whitened(std::span<const double> y, double alpha) const {
    std::vector<double> rhs(y.begin(), y.end());
    rhs.push_back(1.0);
    std::vector<double> upper(n_);
    for (std::size_t i = 0; i < n_; ++i) upper[i] = std::min(1.0, weights_[i] / alpha);
    return box_feasibility(d_ + 1, n_, matrix_, rhs, upper).feasible;
  }

  double depth(std::span<const double> z, double tol) const {
    const auto y = whiten(z);
    if (!contains_whitened(y, min_weight_)) return 0.0;
    if (contains_whitened(y, 1.0)) return 1.0;
    double lo = min_weight_;
    double hi = 1.0;
    while (hi - lo > 0.5 * tol) {
      const double mid = 0.5 * (lo + hi);
      if (contains_whitened(y, mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> weights_;
  Point mean_;
  Eigen::MatrixXd transform_;
  std::vector<double> matrix_;
  double min_weight_;
};

// ---------------------------------------------------------------------------
// Evaluators

class MahalanobisEvaluator final : public DepthEvaluator {
 public:
  explicit MahalanobisEvaluator(MomentSummary m) : m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(m_.dimension());
    if (d == 0 || m_.covariance.size() != m_.dimension() * m_.dimension()) {
      throw std::invalid_argument("moment summary has inconsistent shapes");
    }
    const Eigen::Map<const RowMatrix> cov(m_.covariance.data(), d, d);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const auto& values = eig.eigenvalues();
    const double top = values.maxCoeff();
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < d; ++k) rank += values[k] > top / kMaxConditionNumber ? 1 : 0;
    if (m_.degenerate || !(top > 0.0) || rank < m_.dimension()) {
      throw std::domain_error("Mahalanobis depth needs an invertible covariance; rank is " +
                              std::to_string(rank) + " of " +
                              std::to_string(m_.dimension()));
    }
    inverse_ = cov.inverse();
  }

  std::string name() const override { return "mahalanobis"; }
  std::size_t dimension() const override { return m_.dimension(); }

  double depth(std::span<const double> z) const override {
    require_dimension(z, dimension());
    Eigen::VectorXd c(static_cast<Eigen::Index>(dimension()));
    for (std::size_t k = 0; k < dimension(); ++k) c[static_cast<Eigen::Index>(k)] = z[k] - m_.mean[k];
    const double q = std::max(0.0, c.dot(inverse_ * c));
    return 1.0 / (1.0 + q);
  }

  std::optional<double> support(double alpha, std::span<const double> p) const override {
    if (alpha > 1.0) return -kInf;
    if (alpha <= 0.0) return kInf;
    const std::size_t d = dimension();
    double spread = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) spread += p[r] * m_.covariance[r * d + c] * p[c];
    }
    return dot(p, m_.mean) + std::sqrt(std::max(0.0, (1.0 / alpha - 1.0) * spread));
  }

  SearchBox search_box() const override {
    SearchBox box{m_.mean, m_.mean};
    for (std::size_t k = 0; k < dimension(); ++k) {
      const double sd = std::sqrt(m_.covariance[k * dimension() + k]);
      box.lo[k] -= 10.0 * sd;
      box.hi[k] += 10.0 * sd;
    }
    return box;
  }

  std::vector<Point> candidate_centers() const override { return {m_.mean}; }
  std::optional<Maximum> known_maximum() const override { return Maximum{1.0, m_.mean}; }

 private:
  MomentSummary m_;
  Eigen::MatrixXd inverse_;
};

SearchBox bounding_box(const EmpiricalMeasure& e) {
  SearchBox box{Point(e.point(0).begin(), e.point(0).end()), Point(e.point(0).begin(), e.point(0).end())};
  for (std::size_t i = 1; i < e.size(); ++i) {
    for (std::size_t k = 0; k < e.dimension(); ++k) {
      box.lo[k] = std::min(box.lo[k], e.point(i)[k]);
      box.hi[k] = std::max(box.hi[k], e.point(i)[k]);
    }
  }
  return box;
}

std::vector<Point> sample_candidates(const EmpiricalMeasure& e) {
  std::vector<Point> out;
  out.reserve(e.size() + 1);
  out.push_back(moments(e).mean);
  for (std::size_t i = 0; i < e.size(); ++i) out.emplace_back(e.point(i).begin(), e.point(i).end());
  return out;
}

class AsymMahalanobisEvaluator final : public DepthEvaluator {
 public:
  AsymMahalanobisEvaluator(EmpiricalMeasure e, std::size_t n_directions) : e_(std::move(e)) {
    if (e_.dimension() == 1) {
      directions_ = {{1.0}, {-1.0}};
    } else if (e_.dimension() == 2) {
      if (n_directions < 3) throw std::invalid_argument("need at least 3 directions");
      directions_ = circle_directions(n_directions);
    } else {
      throw std::domain_error("asymmetric Mahalanobis depth supports d = 1 or 2");
    }
    for (const auto& p : directions_) {
      const double s = upper_semivariance(e_, p);
      if (!(s > 0.0)) {
        throw std::domain_error("zero upper semi-variance along a probed direction: measure is degenerate");
      }
      centers_.push_back(projected_mean(p));
      scales_.push_back(std::sqrt(s));
    }
  }

  std::string name() const override { return "asym-mahalanobis"; }
  std::size_t dimension() const override { return e_.dimension(); }

  double depth(std::span<const double> z) const override {
    require_dimension(z, dimension());
    double worst = 0.0;
    for (std::size_t k = 0; k < directions_.size(); ++k) {
      worst = std::max(worst, std::max(0.0, dot(directions_[k], z) - centers_[k]) / scales_[k]);
    }
    return 1.0 / (1.0 + worst);
  }

  std::optional<double> support(double alpha, std::span<const double> p) const override {
    if (alpha > 1.0) return -kInf;
    if (alpha <= 0.0) return kInf;
    return projected_mean(p) + (1.0 / alpha - 1.0) * std::sqrt(upper_semivariance(e_, p));
  }

  SearchBox search_box() const override { return bounding_box(e_); }
  std::vector<Point> candidate_centers() const override { return {moments(e_).mean}; }
  std::optional<Maximum> known_maximum() const override { return Maximum{1.0, moments(e_).mean}; }

 private:
  double projected_mean(std::span<const double> p) const {
    double s = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) s += e_.weight(i) * dot(p, e_.point(i));
    return s;
  }

  EmpiricalMeasure e_;
  std::vector<Point> directions_;
  std::vector<double> centers_;
  std::vector<double> scales_;
};

class HalfspaceMeasure1DEvaluator final : public DepthEvaluator {
 public:
  explicit HalfspaceMeasure1DEvaluator(Measure1D m) : m_(std::move(m)) {}

  std::string name() const override { return "halfspace"; }
  std::size_t dimension() const override { return 1; }
  double depth(std::span<const double> z) const override {
    require_dimension(z, 1);
    return halfspace_depth_1d(z[0], m_);
  }

  std::optional<double> support(double alpha, std::span<const double> p) const override {
    if (alpha > 1.0) return -kInf;
    if (alpha <= 0.0) return kInf;
    if (p[0] >= 0.0) return p[0] * m_.upper_quantile(alpha);
    return p[0] * m_.quantile(alpha);
  }

  SearchBox search_box() const override { return {{m_.support_min()}, {m_.support_max()}}; }

  std::vector<Point> candidate_centers() const override {
    std::vector<Point> out;
    for (double b : m_.breakpoints()) out.push_back({b});
    return out;
  }

  std::optional<Maximum> known_maximum() const override {
    // min(cdf, tail) peaks at a breakpoint or where the two linear pieces cross.
    const auto points = m_.breakpoints();
    Maximum best{-1.0, {points.front()}};
    auto consider = [&](double x) {
      const double v = halfspace_depth_1d(x, m_);
      if (v > best.value) best = {v, {x}};
    };
    for (std::size_t k = 0; k < points.size(); ++k) {
      consider(points[k]);
      if (k + 1 == points.size()) break;
      const double a = points[k];
      const double b = points[k + 1];
      const double f0 = m_.cdf(a);
      const double f1 = m_.cdf_left(b);
      const double t0 = m_.tail(a) - m_.atom_mass(a);
      const double slope = (f1 - f0) / (b - a);
      if (slope > 0.0) {
        const double x = a + (t0 - f0) / (2.0 * slope);
        if (x > a && x < b) consider(x);
      }
    }
    return best;
  }

 private:
  Measure1D m_;
};

class HalfspaceEmpiricalEvaluator final : public DepthEvaluator {
 public:
  explicit HalfspaceEmpiricalEvaluator(EmpiricalMeasure e) : e_(std::move(e)) {
    if (e_.dimension() > 2) throw std::domain_error("halfspace depth is implemented for d = 1 or 2");
  }

  std::string name() const override { return "halfspace"; }
  std::size_t dimension() const override { return e_.dimension(); }
  double depth(std::span<const double> z) const override { return halfspace_depth_emp(z, e_); }

  // D_alpha = intersection of closed halfspaces H with P(H) > 1 - alpha, so
  // h(p) is the smallest projection c with P(p.X > c) < alpha.
  std::optional<double> support(double alpha, std::span<const double> p) const override {
    if (alpha > 1.0) return -kInf;
    if (alpha <= 0.0) return kInf;
    const auto sp = sorted_projection(e_, p);
    const std::size_t n = sp.values.size();
    Tally above;
    double answer = sp.values.back();
    std::size_t i = n;
    while (i > 0) {
      // Group equal projection values.
      std::size_t j = i;
      while (j > 0 && sp.values[j - 1] == sp.values[i - 1]) --j;
      if (!(tally_value(above, e_) < alpha)) break;
      answer = sp.values[i - 1];
      for (std::size_t k = j; k < i; ++k) above.add(sp.weights[k]);
      i = j;
    }
    return answer;
  }

  SearchBox search_box() const override { return bounding_box(e_); }

  // Tukey medians may be isolated crossings of lines through sample pairs;
  // those are enumerated for small samples.
  std::vector<Point> candidate_centers() const override {
    auto out = sample_candidates(e_);
    if (e_.dimension() != 2 || e_.size() > 12) return out;
    struct Line {
      Vec2 a;
      Vec2 b;
    };
    std::vector<Line> lines;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      for (std::size_t j = i + 1; j < e_.size(); ++j) {
        lines.push_back({{e_.point(i)[0], e_.point(i)[1]}, {e_.point(j)[0], e_.point(j)[1]}});
      }
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const Vec2 r{lines[i].b.x - lines[i].a.x, lines[i].b.y - lines[i].a.y};
        const Vec2 s{lines[j].b.x - lines[j].a.x, lines[j].b.y - lines[j].a.y};
        const double denom = cross(r, s);
        if (denom == 0.0) continue;
        const Vec2 qp{lines[j].a.x - lines[i].a.x, lines[j].a.y - lines[i].a.y};
        const double t = cross(qp, s) / denom;
        out.push_back({lines[i].a.x + t * r.x, lines[i].a.y + t * r.y});
      }
    }
    return out;
  }

  std::optional<Maximum> known_maximum() const override {
    if (e_.dimension() != 1) return std::nullopt;
    Maximum best{-1.0, {}};
    for (std::size_t i = 0; i < e_.size(); ++i) {
      const double v = halfspace_depth_emp(e_.point(i), e_);
      if (v > best.value) best = {v, {e_.point(i)[0]}};
    }
    return best;
  }

 private:
  EmpiricalMeasure e_;
};

class ZonoidEvaluator final : public DepthEvaluator {
 public:
  ZonoidEvaluator(EmpiricalMeasure e, double tol) : e_(std::move(e)), problem_(e_), tol_(tol) {}

  std::string name() const override { return "zonoid"; }
  std::size_t dimension() const override { return e_.dimension(); }
  double depth(std::span<const double> z) const override {
    require_dimension(z, dimension());
    return problem_.depth(z, tol_);
  }

  std::optional<double> support(double alpha, std::span<const double> p) const override {
    if (alpha > 1.0) return -kInf;
    if (alpha <= 0.0) return kInf;
    return wm_region_support(e_, alpha, WeightFunction::zonoid(), p);
  }

  SearchBox search_box() const override { return bounding_box(e_); }
  std::vector<Point> candidate_centers() const override { return {moments(e_).mean}; }
  std::optional<Maximum> known_maximum() const override { return Maximum{1.0, moments(e_).mean}; }

 private:
  EmpiricalMeasure e_;
  ZonoidProblem problem_;
  double tol_;
};

class FunctionEvaluator final : public DepthEvaluator {
 public:
  FunctionEvaluator(std::string name, std::size_t dimension, SearchBox box,
                    std::function<double(std::span<const double>)> fn)
      : name_(std::move(name)), dimension_(dimension), box_(std::move(box)), fn_(std::move(fn)) {}

  std::string name() const override { return name_; }
  std::size_t dimension() const override { return dimension_; }
  double depth(std::span<const double> z) const override {
    require_dimension(z, dimension_);
    return fn_(z);
  }
  SearchBox search_box() const override { return box_; }

 private:
  std::string name_;
  std::size_t dimension_;
  SearchBox box_;
  std::function<double(std::span<const double>)> fn_;
};

}  // namespace

std::optional<double> DepthEvaluator::support(double, std::span<const double>) const {
  return std::nullopt;
}

WeightFunction WeightFunction::zonoid() {
  return WeightFunction("zonoid", [](double alpha, double t) {
    if (t >= 1.0) return 1.0;
    return std::max(0.0, t - (1.0 - alpha)) / alpha;
  });
}

std::vector<Point> circle_directions(std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.push_back({std::cos(angle), std::sin(angle)});
  }
  return out;
}

double mahalanobis_depth(std::span<const double> z, const MomentSummary& m) {
  return MahalanobisEvaluator(m).depth(z);
}

double upper_semivariance(const EmpiricalMeasure& e, std::span<const double> direction) {
  require_dimension(direction, e.dimension());
  double mean = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) mean += e.weight(i) * dot(direction, e.point(i));
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double dev = std::max(0.0, dot(direction, e.point(i)) - mean);
    s += e.weight(i) * dev * dev;
  }
  return s;
}

double asym_mahalanobis_depth(std::span<const double> z, const EmpiricalMeasure& e,
                              std::size_t n_directions) {
  return AsymMahalanobisEvaluator(e, n_directions).depth(z);
}

double halfspace_depth_1d(double z, const Measure1D& m) {
  return std::clamp(std::min(m.cdf(z), m.tail(z)), 0.0, 1.0);
}

double halfspace_depth_emp(std::span<const double> z, const EmpiricalMeasure& e) {
  require_dimension(z, e.dimension());
  const bool uniform = e.has_uniform_weights();
  if (e.dimension() == 1) {
    Tally below;
    Tally above;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double x = e.point(i)[0];
      if (x <= z[0]) below.add(e.weight(i));
      if (x >= z[0]) above.add(e.weight(i));
    }
    return tally_value(tally_less(below, above, uniform) ? below : above, e);
  }
  if (e.dimension() != 2) throw std::domain_error("halfspace depth is implemented for d = 1 or 2");

  // Rotating sweep over directions u; the open halfplane {v : u.v > 0} is
  // the arc of angles (beta, beta + pi). Generic directions attain the
  // minimum over closed halfplanes, so only open arcs between events count.
  Tally coincident;
  struct Event {
    Vec2 dir;
    std::size_t index;
    int delta;  // -1 leaves the arc, +1 enters
  };
  std::vector<Event> events;
  std::vector<Vec2> offsets;
  std::vector<std::size_t> offset_index;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec2 v{e.point(i)[0] - z[0], e.point(i)[1] - z[1]};
    if (v.x == 0.0 && v.y == 0.0) {
      coincident.add(e.weight(i));
      continue;
    }
    offsets.push_back(v);
    offset_index.push_back(i);
    events.push_back({v, i, -1});
    events.push_back({{-v.x, -v.y}, i, +1});
  }
  if (offsets.empty()) return tally_value(coincident, e);

  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return angle_less(a.dir, b.dir); });

  const Vec2 first = events.front().dir;
  Tally arc;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const double c = cross(first, offsets[k]);
    if (c > 0.0 || (c == 0.0 && dot2(first, offsets[k]) > 0.0)) arc.add(e.weight(offset_index[k]));
  }
  Tally best = arc;
  std::size_t g = 0;
  while (g < events.size()) {
    std::size_t h = g;
    while (h < events.size() && same_direction(events[h].dir, events[g].dir)) {
      arc.add(e.weight(events[h].index), events[h].delta);
      ++h;
    }
    if (tally_less(arc, best, uniform)) best = arc;
    g = h;
  }
  Tally total = coincident;
  total.count += best.count;
  total.weight += best.weight;
  return tally_value(total, e);
}

double brute_halfspace_oracle(std::span<const double> z, const EmpiricalMeasure& e) {
  require_dimension(z, 2);
  if (e.size() > 200) throw std::invalid_argument("brute_halfspace_oracle is limited to n <= 200");
  const bool uniform = e.has_uniform_weights();
  Tally coincident;
  std::vector<Vec2> v;
  std::vector<double> w;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec2 d{e.point(i)[0] - z[0], e.point(i)[1] - z[1]};
    if (d.x == 0.0 && d.y == 0.0) {
      coincident.add(e.weight(i));
    } else {
      v.push_back(d);
      w.push_back(e.weight(i));
    }
  }
  if (v.empty()) return tally_value(coincident, e);

  std::optional<Tally> best;
  for (const Vec2 r : v) {
    for (const double orientation : {1.0, -1.0}) {
      Tally strict;
      Tally ray_plus;
      Tally ray_minus;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double side = orientation * cross(r, v[i]);
        if (side > 0.0) {
          strict.add(w[i]);
        } else if (side == 0.0) {
          (dot2(r, v[i]) > 0.0 ? ray_plus : ray_minus).add(w[i]);
        }
      }
      for (const Tally* ray : {&ray_plus, &ray_minus}) {
        Tally candidate = strict;
        candidate.count += ray->count;
        candidate.weight += ray->weight;
        if (!best || tally_less(candidate, *best, uniform)) best = candidate;
      }
    }
  }
  Tally total = coincident;
  total.count += best->count;
  total.weight += best->weight;
  return tally_value(total, e);
}

bool zonoid_contains(std::span<const double> z, const EmpiricalMeasure& e, double alpha) {
  require_dimension(z, e.dimension());
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const ZonoidProblem problem(e);
  return problem.contains_whitened(problem.whiten(z), alpha);
}

double zonoid_depth(std::span<const double> z, const EmpiricalMeasure& e, double tol) {
  require_dimension(z, e.dimension());
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return ZonoidProblem(e).depth(z, tol);
}

double wm_region_support(const EmpiricalMeasure& e, double alpha, const WeightFunction& w,
                         std::span<const double> direction) {
  require_dimension(direction, e.dimension());
  if (std::all_of(direction.begin(), direction.end(), [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("direction must be non-zero");
  }
  const auto sp = sorted_projection(e, direction);
  const std::size_t n = sp.values.size();
  const bool uniform = e.has_uniform_weights();
  double cumulative = 0.0;
  double previous = w(alpha, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative = uniform ? static_cast<double>(i + 1) / static_cast<double>(n) : cumulative + sp.weights[i];
    const double level = i + 1 == n ? 1.0 : std::min(cumulative, 1.0);
    const double current = w(alpha, level);
    sum += sp.values[i] * (current - previous);
    previous = current;
  }
  return sum;
}

DepthPtr make_mahalanobis(MomentSummary m) { return std::make_shared<MahalanobisEvaluator>(std::move(m)); }
DepthPtr make_mahalanobis(const EmpiricalMeasure& e) { return make_mahalanobis(moments(e)); }
DepthPtr make_asym_mahalanobis(EmpiricalMeasure e, std::size_t n_directions) {
  return std::make_shared<AsymMahalanobisEvaluator>(std::move(e), n_directions);
}
DepthPtr make_halfspace(Measure1D m) { return std::make_shared<HalfspaceMeasure1DEvaluator>(std::move(m)); }
DepthPtr make_halfspace(EmpiricalMeasure e) {
  return std::make_shared<HalfspaceEmpiricalEvaluator>(std::move(e));
}
DepthPtr make_zonoid(EmpiricalMeasure e, double tol) {
  return std::make_shared<ZonoidEvaluator>(std::move(e), tol);
}
DepthPtr make_function_depth(std::string name, std::size_t dimension, SearchBox box,
                             std::function<double(std::span<const double>)> fn) {
  return std::make_shared<FunctionEvaluator>(std::move(name), dimension, std::move(box), std::move(fn));
}

DepthPtr make_depth(const std::string& name, const EmpiricalMeasure& e) {
  if (name == "mahalanobis") return make_mahalanobis(e);
  if (name == "asym-mahalanobis") return make_asym_mahalanobis(e);
  if (name == "halfspace") return make_halfspace(e);
  if (name == "zonoid") return make_zonoid(e);
  throw std::invalid_argument("unknown depth '" + name + "'");
}

}  // namespace depthkit
