#include "monge/assignment.hpp"

#include <cmath>
#include <limits>

#include "monge/errors.hpp"

namespace monge {

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw ValidationError("assignment needs a square cost matrix");
  if (!cost.allFinite()) throw ValidationError("assignment costs must be finite");
  Assignment out;
  if (n == 0) return out;

  // 1-based shortest augmenting paths; row_of[j] is the row on column j,
  // column 0 is the free slot the new row starts from.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = row_of[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.column.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.column[row_of[j] - 1] = j - 1;
  // Sum in row order so equal inputs give bit-identical totals.
  for (int i = 0; i < n; ++i) out.cost += cost(i, out.column[i]);
  return out;
}

}  // namespace monge
