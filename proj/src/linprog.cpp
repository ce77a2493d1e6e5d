#include "depthkit/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace depthkit {

BoxFeasibilityResult box_feasibility(std::size_t rows, std::size_t cols,
                                     std::span<const double> matrix,
                                     std::span<const double> rhs,
                                     std::span<const double> upper, double tolerance) {
  if (matrix.size() != rows * cols || rhs.size() != rows || upper.size() != cols) {
    throw std::invalid_argument("box_feasibility: inconsistent shapes");
  }
  constexpr double kPivotEps = 1e-12;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Columns [0, cols) are structural, [cols, cols + rows) artificial.
  const std::size_t total = cols + rows;
  std::vector<double> tab(rows * total, 0.0);
  std::vector<double> beta(rows);
  std::vector<double> ub(total, kInf);
  std::vector<bool> at_upper(total, false);
  std::vector<std::size_t> basis(rows);
  std::vector<bool> is_basic(total, false);

  for (std::size_t j = 0; j < cols; ++j) ub[j] = std::max(0.0, upper[j]);
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) tab[i * total + j] = sign * matrix[i * cols + j];
    tab[i * total + cols + i] = 1.0;
    beta[i] = sign * rhs[i];
    basis[i] = cols + i;
    is_basic[cols + i] = true;
  }
  auto cost = [&](std::size_t j) { return j >= cols ? 1.0 : 0.0; };

  const std::size_t max_iterations = 50 * (total + 10);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    // Bland: first eligible nonbasic column.
    std::size_t enter = total;
    double direction = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      if (is_basic[j]) continue;
      double reduced = cost(j);
      for (std::size_t i = 0; i < rows; ++i) reduced -= cost(basis[i]) * tab[i * total + j];
      if (!at_upper[j] && reduced < -kPivotEps && ub[j] > 0.0) {
        enter = j;
        direction = 1.0;
        break;
      }
      if (at_upper[j] && reduced > kPivotEps) {
        enter = j;
        direction = -1.0;
        break;
      }
    }
    if (enter == total) break;

    // Ratio test; basic values move by -direction * theta * column.
    double theta = ub[enter];
    std::size_t leave_row = rows;
    bool leave_to_upper = false;
    for (std::size_t i = 0; i < rows; ++i) {
      const double a = direction * tab[i * total + enter];
      if (a > kPivotEps) {
        const double t = beta[i] / a;
        if (t < theta || (t == theta && leave_row < rows && basis[i] < basis[leave_row])) {
          theta = t;
          leave_row = i;
          leave_to_upper = false;
        }
      } else if (a < -kPivotEps && std::isfinite(ub[basis[i]])) {
        const double t = (ub[basis[i]] - beta[i]) / (-a);
        if (t < theta || (t == theta && leave_row < rows && basis[i] < basis[leave_row])) {
          theta = t;
          leave_row = i;
          leave_to_upper = true;
        }
      }
    }
    theta = std::max(theta, 0.0);
    if (!std::isfinite(theta)) break;  // unbounded phase-I cannot happen; defensive stop

    for (std::size_t i = 0; i < rows; ++i) beta[i] -= direction * theta * tab[i * total + enter];

    if (leave_row == rows) {
      at_upper[enter] = !at_upper[enter];  // bound flip
      continue;
    }

    const std::size_t leaving = basis[leave_row];
    const double entering_value = (at_upper[enter] ? ub[enter] : 0.0) + direction * theta;
    const double pivot = tab[leave_row * total + enter];
    for (std::size_t j = 0; j < total; ++j) tab[leave_row * total + j] /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave_row) continue;
      const double f = tab[i * total + enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total; ++j) tab[i * total + j] -= f * tab[leave_row * total + j];
    }
    beta[leave_row] = entering_value;
    basis[leave_row] = enter;
    is_basic[enter] = true;
    at_upper[enter] = false;
    is_basic[leaving] = false;
    at_upper[leaving] = leave_to_upper;
  }

  BoxFeasibilityResult result;
  result.solution.assign(cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    if (!is_basic[j] && at_upper[j]) result.solution[j] = ub[j];
  }
  double artificial = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] >= cols) {
      artificial += std::max(0.0, beta[i]);
    } else {
      result.solution[basis[i]] = std::clamp(beta[i], 0.0, ub[basis[i]]);
    }
  }
  // Recompute the residual from the recovered point to avoid trusting drift.
  double residual = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double r = -rhs[i];
    for (std::size_t j = 0; j < cols; ++j) r += matrix[i * cols + j] * result.solution[j];
    residual += std::abs(r);
  }
  result.infeasibility = std::max(artificial, residual);
  result.feasible = result.infeasibility <= tolerance;
  return result;
}

}  // namespace depthkit
