#include "ssg/matrix_game.hpp"

#include <cmath>
#include <limits>

#include "ssg/errors.hpp"

namespace ssg {

MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& G) {
  const int m = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  if (m == 0 || n == 0) throw DomainError("empty matrix game");
  if (G.minCoeff() <= 0.0) throw DomainError("matrix game entries must be positive");

  // tableau: m constraint rows + objective row; columns y (n), slack (m), rhs
  const int width = n + m + 1;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, width);
  T.block(0, 0, m, n) = G;
  T.block(0, n, m, m).setIdentity();
  T.col(width - 1).head(m).setOnes();
  T.row(m).head(n).setConstant(-1.0);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-12;
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > eps) {
        const double ratio = T(i, width - 1) / T(i, enter);
        if (ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw DomainError("matrix game LP is unbounded");
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }

  const double total = T(m, width - 1);  // = Σ y
  MatrixGameSolution sol;
  sol.value = 1.0 / total;
  sol.col.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) sol.col[basis[i]] = std::max(0.0, T(i, width - 1)) / total;
  }
  sol.row.assign(m, 0.0);
  double dual_total = 0.0;
  for (int i = 0; i < m; ++i) {
    sol.row[i] = std::max(0.0, T(m, n + i));
    dual_total += sol.row[i];
  }
  for (double& x : sol.row) x /= dual_total;
  return sol;
}

}  // namespace ssg
