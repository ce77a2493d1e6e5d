#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "depthkit/counterexamples.hpp"
#include "depthkit/hausdorff.hpp"
#include "depthkit/regions.hpp"
#include "oracles.hpp"

using namespace depthkit;

namespace {

std::vector<double> dense_grid(const Measure1D& m) {
  std::vector<double> xs;
  for (int k = 0; k <= 10000; ++k) xs.push_back(-4.0 + 8.0 * k / 10000.0);
  for (double b : m.breakpoints()) xs.push_back(b);
  return xs;
}

}  // namespace

TEST_CASE("family parameters") {
  CHECK(family_parameter(1, 0) == 0.5);
  CHECK(family_parameter(1, 3) == doctest::Approx((1.0 - 1.0 / 3.0) / 2.0));
  CHECK(family_parameter(2, 10) == doctest::Approx(0.55));
  CHECK(family_parameter(3, 0) == 1.0);
  CHECK(family_parameter(3, 1) == doctest::Approx(0.5));
  CHECK(family_parameter(3, 2) == doctest::Approx(4.0 / 3.0));
  CHECK(family_parameter(4, 1) == doctest::Approx(1.5));
  CHECK_THROWS_AS(build_family(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_family(0, 1), std::invalid_argument);
}

TEST_CASE("built families match the component-by-component construction") {
  for (int id = 1; id <= 4; ++id) {
    for (std::size_t n : {0u, 1u, 2u, 3u, 10u, 99u}) {
      const Measure1D m = build_family(id, n);
      const Measure1D o = oracle::family(id, n);
      for (double x : dense_grid(o)) {
        CHECK(std::abs(m.cdf(x) - oracle::mixture_cdf(o, x)) <= 1e-12);
        CHECK(std::abs(m.tail(x) - oracle::mixture_tail(o, x)) <= 1e-12);
      }
    }
  }
  const Measure1D p0 = build_family(3, 0);
  CHECK(p0.atom_mass(1.0) == doctest::Approx(0.2));
  CHECK(p0.atom_mass(-1.0) == doctest::Approx(0.2));
}

TEST_CASE("closed-form depth equals min of cdf and tail") {
  for (int id = 1; id <= 4; ++id) {
    for (std::size_t n : {0u, 1u, 2u, 5u, 6u, 50u}) {
      const Measure1D m = oracle::family(id, n);
      for (double x : dense_grid(m)) {
        const double exact = exact_depth(id, n, x);
        CHECK(std::abs(exact - oracle::mixture_depth(m, x)) <= 1e-12);
        CHECK(exact == exact_depth(id, n, -x));
      }
    }
  }
}

TEST_CASE("closed-form regions equal the quantile construction") {
  for (int id = 1; id <= 4; ++id) {
    for (std::size_t n : {0u, 1u, 2u, 7u, 8u}) {
      const Measure1D m = oracle::family(id, n);
      for (int k = 1; k <= 1000; ++k) {
        const double alpha = k / 1000.0;
        const Region1D exact = exact_region(id, n, alpha);
        const Region1D q = region_1d_halfspace(m, alpha);
        REQUIRE(exact.is_empty() == q.is_empty());
        if (!exact.is_empty()) {
          CHECK(std::abs(exact.lo() - q.lo()) <= 1e-12);
          CHECK(std::abs(exact.hi() - q.hi()) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("second and fourth families dominate their limits") {
  for (int id : {2, 4}) {
    for (std::size_t n = 1; n <= 30; ++n) {
      for (int k = -400; k <= 400; ++k) {
        const double x = k * 0.01;
        CHECK(exact_depth(id, n, x) >= exact_depth(id, 0, x) - 1e-15);
      }
    }
  }
}

TEST_CASE("first family headline facts") {
  CHECK(exact_region(1, 0, 0.25) == Region1D::interval(-2.0, 2.0));
  for (std::size_t m = 1; m <= 99; m += 2) {
    const Region1D r = exact_region(1, m, 0.25);
    CHECK(r.hi() <= 1.0 - 1e-9);
    CHECK(hausdorff_intervals(r, exact_region(1, 0, 0.25)).distance >= 1.0 - 1e-9);
  }
  for (std::size_t n = 2; n <= 100; n += 2) {
    const Region1D r = exact_region(1, n, 0.25);
    CHECK(r.lo() <= -2.0);
    CHECK(r.hi() >= 2.0);
  }
}

TEST_CASE("third family depth at one oscillates") {
  for (std::size_t n = 1; n <= 50; ++n) {
    const double v = halfspace_depth_1d(1.0, oracle::family(3, n));
    if (n % 2 == 1) {
      CHECK(v < 0.15);
    } else {
      CHECK(v > 0.35);
    }
  }
}

TEST_CASE("fourth family gap at the midpoint witness") {
  for (std::size_t n = 1; n <= 200; n += 7) {
    const double s = 1.0 + 1.0 / (n + 1.0);
    const double x = 0.5 * (1.0 + s);
    const double gap = oracle::mixture_depth(oracle::family(4, n), x) - oracle::mixture_depth(oracle::family(4, 0), x);
    CHECK(gap > 0.2);
    const double closed = 0.35 + 0.15 * (s - x) / s - 0.15 * (2.0 - x);
    CHECK(gap == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("every claim passes") {
  for (int id = 1; id <= 4; ++id) {
    const ClaimReport r = verify_claims(id, 1, id == 3 ? 50 : 60);
    CHECK(r.passed());
    for (const ClaimRecord& row : r.rows) CHECK_MESSAGE(row.passed, row.claim, " n=", row.n);
  }
}

TEST_CASE("sup-gap and sup-alpha claims carry the exact values") {
  const ClaimReport one = verify_claims(1, 1, 100);
  int seen = 0;
  for (const ClaimRecord& row : one.rows) {
    if (row.claim.rfind("sup_gap", 0) != 0) continue;
    ++seen;
    CHECK(std::abs(row.computed - 0.25 / static_cast<double>(row.n)) <= 1e-12);
  }
  CHECK(seen == 100);
  const ClaimReport three = verify_claims(3, 1, 50);
  seen = 0;
  for (const ClaimRecord& row : three.rows) {
    if (row.claim.rfind("sup_alpha", 0) != 0) continue;
    ++seen;
    CHECK(std::abs(row.computed - 1.0 / (row.n + 1.0)) <= 1e-12);
  }
  CHECK(seen == 50);
}

TEST_CASE("claim output") {
  const ClaimReport r = verify_claims(3, 1, 3);
  std::ostringstream table;
  write_claims_table(table, r);
  CHECK(table.str().find("sup_alpha") != std::string::npos);
  const auto j = nlohmann::json::parse(claims_json({r}));
  CHECK(j.dump().find("sup_alpha") != std::string::npos);
  CHECK(std::string(comparison_symbol(Comparison::AtLeast)) == ">=");
}
