#include "monge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "monge/analytic.hpp"
#include "monge/states.hpp"
#include "monge/stellar.hpp"
#include "monge/transport.hpp"

namespace monge {

Matrix kicked_top(SpinQuantum j, double p, double k) {
  if (!std::isfinite(p) || !std::isfinite(k)) throw ValidationError("map parameters must be finite");
  const Matrix z = jz(j);
  Matrix torsion = Matrix::Zero(j.dim(), j.dim());
  for (int r = 0; r < j.dim(); ++r) {
    const double m = z(r, r).real();
    torsion(r, r) = std::polar(1.0, -k * m * m / (2.0 * j.j()));
  }
  return torsion * rotation(j, Axis::y, p);
}

std::vector<DivergencePoint> divergence_series(const DivergenceRun& run) {
  if (run.steps < 1) throw ValidationError("need at least one step");
  if (!(run.xi0 >= 0.0) || run.start.theta + run.xi0 > std::numbers::pi)
    throw ValidationError("second state must stay on the sphere: need 0 <= xi0 <= pi - theta");
  if (run.metric == DivergenceMetric::numeric && !run.grid)
    throw ValidationError("numeric divergence needs a grid");
  const Matrix u = kicked_top(run.j, run.p, run.k);
  PureState a = coherent_amplitudes(run.j, run.start);
  PureState b = coherent_amplitudes(run.j, SpherePoint(run.start.theta + run.xi0, run.start.phi));
  const auto distance = [&](const PureState& x, const PureState& y) {
    if (run.metric == DivergenceMetric::simplified) return simplified_monge(x, y, run.j);
    return monge_numeric(DensityMatrix::from_pure(x), DensityMatrix::from_pure(y), run.j, run.grid)
        .estimate;
  };
  std::vector<DivergencePoint> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double d0 = 0.0;
  for (int t = 0; t <= run.steps; ++t) {
    if (t > 0) {
      a = evolve(u, a);
      b = evolve(u, b);
    }
    const double d = distance(a, b);
    if (t == 0) d0 = d;
    const double lambda = (t == 0 || d0 <= 0.0 || d <= 0.0) ? nan : std::log(d / d0) / t;
    out.push_back({t, d, lambda});
  }
  return out;
}

Localization localization(const Matrix& op, SpinQuantum j, std::shared_ptr<const SphereGrid> grid) {
  const int n = j.dim();
  if (op.rows() != n || op.cols() != n) throw ValidationError("operator dimension does not match j");
  const double scale = std::max(1.0, op.norm());
  const bool hermitian = (op - op.adjoint()).norm() <= tol::herm * scale;
  const bool unitary = (op * op.adjoint() - Matrix::Identity(n, n)).norm() <= 1e-10 * n;
  if (!hermitian && !unitary) throw ValidationError("operator must be Hermitian or unitary");

  Matrix vectors;
  Vector values;
  const bool diagonal = (op - Matrix(op.diagonal().asDiagonal())).norm() <= 1e-14 * scale;
  if (diagonal) {
    vectors = Matrix::Identity(n, n);
    values = op.diagonal();
  } else if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (op + op.adjoint()));
    vectors = es.eigenvectors();
    values = es.eigenvalues().cast<cplx>();
  } else {
    // Normal matrix: the Schur vectors are orthonormal eigenvectors, even
    // inside degenerate eigenspaces.
    Eigen::ComplexSchur<Matrix> schur(op);
    vectors = schur.matrixU();
    values = schur.matrixT().diagonal();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return std::arg(values(x)) < std::arg(values(y)); });
    Matrix sv(n, n);
    Vector vv(n);
    for (int i = 0; i < n; ++i) {
      sv.col(i) = vectors.col(order[i]);
      vv(i) = values(order[i]);
    }
    vectors = sv;
    values = vv;
  }

  Localization out;
  for (int x = 0; x < n && !out.degenerate; ++x)
    for (int y = x + 1; y < n; ++y)
      if (std::abs(values(x) - values(y)) <= 1e-8 * scale) {
        out.degenerate = true;
        break;
      }
  const DensityMatrix star = DensityMatrix::maximally_mixed(n);
  for (int c = 0; c < n; ++c) {
    const DensityMatrix v = DensityMatrix::from_pure(PureState::normalized(vectors.col(c)));
    try {
      const MongeResult r = monge_exact(v, star, j);
      out.distances.push_back(r.value);
      out.paths.push_back(r.path);
    } catch (const PathRefused&) {
      if (!grid) throw;
      out.distances.push_back(monge_numeric(v, star, j, grid).estimate);
      out.paths.push_back("numeric");
    }
  }
  for (double d : out.distances) out.gamma += d;
  out.gamma /= n;
  return out;
}

}  // namespace monge
