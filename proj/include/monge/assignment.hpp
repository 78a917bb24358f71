#pragma once

#include <vector>

#include <Eigen/Dense>

namespace monge {

struct Assignment {
  std::vector<int> column;  // column[i] is the column matched to row i
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian
/// method with row potentials, O(n^3)).
Assignment solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace monge
