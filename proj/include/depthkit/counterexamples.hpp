#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "depthkit/geometry.hpp"
#include "depthkit/measures.hpp"

namespace depthkit {

// Four symmetric families of measures on the line whose halfspace depths
// and regions converge in different senses.
//
//   1, 2: P_n = a_n U([-3,-2] u [2,3]) + (1 - a_n) U([-1,1]) with
//         a_n = (1 + (-1)^n / n) / 2 (family 1) or (1 + 1/n) / 2 (family 2).
//   3, 4: P_n = 0.3 U([-2,-s] u [s,2]) + 0.3 U([-s,s]) + 0.2 (d_{-s} + d_{s})
//         with s = 1 + (-1)^n / (n+1) (family 3) or 1 + 1/(n+1) (family 4).
//
// n = 0 gives the common limit P_0 (a_0 = 1/2, s = 1).

/// a_n for families 1 and 2, s = a_n for families 3 and 4.
double family_parameter(int id, std::size_t n);

/// Throws std::invalid_argument unless id is 1..4.
Measure1D build_family(int id, std::size_t n);

/// Closed-form halfspace depth of build_family(id, n) at x.
double exact_depth(int id, std::size_t n, double x);

/// Closed-form halfspace region of build_family(id, n) at level alpha > 0.
Region1D exact_region(int id, std::size_t n, double alpha);

enum class Comparison { Equal, AtMost, AtLeast, LessThan, GreaterThan };

struct ClaimRecord {
  std::string claim;
  std::size_t n = 0;
  double computed = 0.0;
  double expected = 0.0;
  Comparison comparison = Comparison::Equal;
  double tol = 0.0;
  bool passed = false;
  std::string witness;
};

struct ClaimReport {
  int family = 0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::vector<ClaimRecord> rows;

  bool passed() const;
};

/// Evaluates every claim of the family for n in [n_lo, n_hi]; equalities
/// hold to `tol`. Failures are recorded, never thrown.
ClaimReport verify_claims(int id, std::size_t n_lo, std::size_t n_hi, double tol = 1e-12);

/// Fixed-width table: claim, n, computed, relation, expected, pass.
void write_claims_table(std::ostream& out, const ClaimReport& report);
std::string claims_json(const std::vector<ClaimReport>& reports);

const char* comparison_symbol(Comparison c);

}  // namespace depthkit
