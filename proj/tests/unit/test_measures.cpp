#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "depthkit/measures.hpp"
#include "oracles.hpp"

using namespace depthkit;

TEST_CASE("cdf and tail on the two-interval family") {
  const Measure1D p0 = oracle::family(1, 0);
  CHECK(p0.cdf(-2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p0.tail(2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p0.cdf(10.0) == 1.0);
  CHECK(p0.tail(-10.0) == 1.0);
  CHECK(p0.cdf(0.0) == doctest::Approx(0.5));
}

TEST_CASE("atoms are included on both closed sides") {
  const Measure1D p0 = oracle::family(3, 0);
  CHECK(p0.cdf(-1.0) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(p0.tail(1.0) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(p0.cdf_left(-1.0) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(p0.atom_mass(1.0) == doctest::Approx(0.2));
  CHECK(p0.atom_mass(0.5) == 0.0);
}

TEST_CASE("invalid mixtures are rejected") {
  CHECK_THROWS_AS(Measure1D({}), std::invalid_argument);
  CHECK_THROWS_AS(Measure1D({{UniformSegment{1.0, 1.0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Measure1D({{Atom{0.0}, 0.6}, {Atom{1.0}, 0.3}}), std::invalid_argument);
  CHECK_THROWS_AS(Measure1D({{Atom{0.0}, 1.5}, {Atom{1.0}, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalMeasure(2, {0.0, 1.0, NAN, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalMeasure(1, {0.0, 1.0}, {0.5, 0.6}), std::invalid_argument);
}

TEST_CASE("cdf and tail properties on random mixtures") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Component> parts;
    std::vector<double> w;
    for (int k = 0; k < 4; ++k) w.push_back(0.1 + std::abs(u(rng)));
    double total = 0.0;
    for (double x : w) total += x;
    for (int k = 0; k < 4; ++k) {
      const double a = u(rng);
      if (k % 2 == 0) {
        parts.push_back({UniformSegment{a, a + 0.1 + std::abs(u(rng))}, w[k] / total});
      } else {
        parts.push_back({Atom{a}, w[k] / total});
      }
    }
    const Measure1D m(parts);
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(u(rng) * 1.5);
    for (double b : m.breakpoints()) xs.push_back(b);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      CHECK(std::abs(m.cdf(x) + m.tail(x) - m.atom_mass(x) - 1.0) <= 1e-12);
      CHECK(std::abs(m.cdf(x) - oracle::mixture_cdf(m, x)) <= 1e-12);
      CHECK(std::abs(m.tail(x) - oracle::mixture_tail(m, x)) <= 1e-12);
      if (i > 0) {
        CHECK(m.cdf(xs[i - 1]) <= m.cdf(x));
        CHECK(m.tail(xs[i - 1]) >= m.tail(x));
      }
    }
  }
}

TEST_CASE("quantiles") {
  const Measure1D p0 = oracle::family(1, 0);
  CHECK(p0.quantile(0.25) == doctest::Approx(-2.0));
  CHECK(p0.upper_quantile(0.25) == doctest::Approx(2.0));
  CHECK(p0.quantile(0.3) == doctest::Approx(-0.8));
  CHECK(p0.quantile(1.0) == doctest::Approx(3.0));
  const Measure1D atom = Measure1D::atom(3.0);
  CHECK(atom.quantile(0.5) == 3.0);
  CHECK(atom.upper_quantile(1.0) == 3.0);
}

TEST_CASE("mirrored measure reflects cdf into tail") {
  const Measure1D m({{UniformSegment{0.0, 2.0}, 0.5}, {Atom{3.0}, 0.5}});
  const Measure1D r = m.mirrored();
  for (double x : {-3.5, -3.0, -1.0, 0.0, 1.0}) CHECK(r.cdf(x) == doctest::Approx(m.tail(-x)));
}

TEST_CASE("sampling is deterministic") {
  const Measure1D m = oracle::family(3, 4);
  const EmpiricalMeasure a = sample(m, 5, 7);
  const EmpiricalMeasure b = sample(m, 5, 7);
  CHECK(a.coordinates() == b.coordinates());
  const EmpiricalMeasure c = sample(m, 5, 8);
  CHECK(a.coordinates() != c.coordinates());
  const EmpiricalMeasure atoms = sample(Measure1D::atom(3.0), 4, 1);
  for (double x : atoms.coordinates()) CHECK(x == 3.0);
}

TEST_CASE("uniform sample cdf gap at 10^4 points") {
  const EmpiricalMeasure e = sample(Measure1D::uniform(0.0, 1.0), 10000, 42);
  std::vector<double> xs = e.coordinates();
  std::sort(xs.begin(), xs.end());
  double gap = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    gap = std::max(gap, std::abs((i + 1) / n - xs[i]));
    gap = std::max(gap, std::abs(i / n - xs[i]));
  }
  CHECK(gap <= 0.03);
}

TEST_CASE("moments") {
  const MomentSummary sq = moments(EmpiricalMeasure(2, {0, 0, 2, 0, 0, 2, 2, 2}));
  CHECK(sq.mean[0] == doctest::Approx(1.0));
  CHECK(sq.mean[1] == doctest::Approx(1.0));
  CHECK(sq.covariance[0] == doctest::Approx(1.0));
  CHECK(sq.covariance[1] == doctest::Approx(0.0));
  CHECK(sq.covariance[3] == doctest::Approx(1.0));
  CHECK_FALSE(sq.degenerate);

  const MomentSummary same = moments(EmpiricalMeasure(2, {1, 1, 1, 1, 1, 1}));
  CHECK(same.degenerate);
  CHECK(same.covariance[0] == 0.0);

  const MomentSummary line = moments(EmpiricalMeasure(1, {0.0, 1.0}));
  CHECK(line.mean[0] == doctest::Approx(0.5));
  CHECK(line.covariance[0] == doctest::Approx(0.25));
}

TEST_CASE("projection quantile") {
  const EmpiricalMeasure three(1, {0.0, 1.0, 2.0});
  const std::vector<double> p{1.0};
  CHECK(projection_quantile(three, p, 0.5) == 1.0);
  CHECK(projection_quantile(three, p, 1.0) == 2.0);
  const EmpiricalMeasure four(1, {0.0, 1.0, 2.0, 3.0});
  CHECK(projection_quantile(four, p, 0.25) == 0.0);
  CHECK(projection_quantile(four, p, 0.26) == 1.0);
}

TEST_CASE("projection quantile is monotone and scale equivariant") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const EmpiricalMeasure e = oracle::gaussian_cloud(rng, 15);
    const std::vector<double> p{u(rng) - 0.5, u(rng) - 0.5};
    const double c = 0.1 + 3.0 * u(rng);
    const std::vector<double> cp{c * p[0], c * p[1]};
    double prev = -INFINITY;
    for (int k = 1; k <= 20; ++k) {
      const double t = k / 20.0;
      const double q = projection_quantile(e, p, t);
      CHECK(q >= prev);
      prev = q;
      CHECK(projection_quantile(e, cp, t) == doctest::Approx(c * q).epsilon(1e-12));
    }
  }
}

TEST_CASE("Measure1D file round trip and errors") {
  const Measure1D m = oracle::family(3, 2);
  std::stringstream ss;
  write_measure1d(ss, m);
  const Measure1D back = read_measure1d(ss);
  for (double x : {-2.0, -1.2, 0.0, 1.0, 1.5}) CHECK(back.cdf(x) == m.cdf(x));

  std::istringstream bad("# header\nsegment 0 1 0.5\natom x 0.5\n");
  try {
    read_measure1d(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("empirical CSV round trip with weights") {
  const EmpiricalMeasure e(2, {0, 0, 1, 0, 0, 1}, {0.5, 0.25, 0.25});
  std::stringstream ss;
  write_empirical_csv(ss, e);
  const EmpiricalMeasure back = read_empirical_csv(ss);
  CHECK(back.coordinates() == e.coordinates());
  CHECK(back.weights() == e.weights());
  CHECK_FALSE(back.has_uniform_weights());

  std::istringstream bad("x,y\n1,2\n3\n");
  CHECK_THROWS_AS(read_empirical_csv(bad), ParseError);
}
