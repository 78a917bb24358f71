#pragma once

#include <memory>
#include <string>
#include <vector>

#include "monge/qstate.hpp"
#include "monge/sphere.hpp"

namespace monge {

/// One period of the kicked top: exp(-i k Jz^2 / 2j) exp(-i p Jy).
Matrix kicked_top(SpinQuantum j, double p, double k);

enum class DivergenceMetric { simplified, numeric };

struct DivergenceRun {
  SpinQuantum j{1};
  double p = 1.7;
  double k = 6.0;
  SpherePoint start{1.0, 0.5};
  double xi0 = 0.1;  // initial angle between the two coherent states
  int steps = 20;
  DivergenceMetric metric = DivergenceMetric::simplified;
  std::shared_ptr<const SphereGrid> grid;  // numeric metric only
};

struct DivergencePoint {
  int t = 0;
  double distance = 0.0;
  double lambda = 0.0;  // ln(D(t)/D(0)) / t; NaN at t = 0 or when D(0) = 0
};

/// Evolves two coherent states a distance xi0 apart under the kicked top
/// and records their distance after every period.
std::vector<DivergencePoint> divergence_series(const DivergenceRun& run);

struct Localization {
  double gamma = 0.0;                  // mean distance of eigenvectors from rho_*
  std::vector<double> distances;       // per eigenvector, eigenvalue order
  std::vector<std::string> paths;      // how each distance was obtained
  bool degenerate = false;             // repeated eigenvalues: basis is arbitrary
};

/// Mean Monge distance of the eigenvectors of a Hermitian or unitary
/// operator from the maximally mixed state. Exact paths are used when they
/// apply, otherwise the transport estimate on `grid`.
Localization localization(const Matrix& op, SpinQuantum j, std::shared_ptr<const SphereGrid> grid);

}  // namespace monge
