#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ssg {

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row;  // maximiser's mixed strategy
  std::vector<double> col;  // minimiser's mixed strategy
};

// Zero-sum game, rows maximise and columns minimise. Entries must be
// positive (hitting times always are). Solved as the LP
//   max 1'y  s.t.  G y <= 1, y >= 0
// with a dense tableau simplex (Bland's rule); the row strategy comes from
// the duals.
MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& G);

}  // namespace ssg
