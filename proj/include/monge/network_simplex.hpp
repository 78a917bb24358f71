#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace monge {

struct Flow {
  int source;
  int target;
  double mass;
};

struct TransportSolution {
  std::vector<Flow> flows;
  double objective = 0.0;
  /// u_i + v_j <= cost(i, j) up to the pricing tolerance.
  std::vector<double> u;
  std::vector<double> v;
  std::int64_t pivots = 0;
};

struct SimplexOptions {
  std::int64_t max_pivots = 10'000'000;
};

/// Exact balanced transportation problem min sum c_ij x_ij, rows summing
/// to `supply`, columns to `demand`, by the primal network simplex method
/// on the complete bipartite graph (arcs are implicit, priced in blocks).
/// Supplies and demands must be positive with equal totals.
TransportSolution solve_transportation(const std::vector<double>& supply,
                                       const std::vector<double>& demand,
                                       const Eigen::MatrixXd& cost,
                                       const SimplexOptions& options = {});

/// Row-major cost, the layout the pricing loop walks; no copy is made.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
TransportSolution solve_transportation(const std::vector<double>& supply,
                                       const std::vector<double>& demand,
                                       const RowMatrix& cost,
                                       const SimplexOptions& options = {});

/// Same with geodesic cost between unit vectors on S^2, evaluated on the
/// fly; for problems whose dense cost matrix would not fit in memory.
TransportSolution solve_transportation(const std::vector<double>& supply,
                                       const std::vector<double>& demand,
                                       const std::vector<Eigen::Vector3d>& source_points,
                                       const std::vector<Eigen::Vector3d>& target_points,
                                       const SimplexOptions& options = {});

/// Ground cost used for sphere transport: the angle between unit vectors.
inline double arc_cost(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  // acos loses half the digits near 0 and pi
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace monge
