#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "json.hpp"
#include "monge/husimi.hpp"
#include "monge/network_simplex.hpp"
#include "monge/sphere.hpp"

namespace monge {

/// Nonnegative masses on the nodes of a grid, summing to 1.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::shared_ptr<const SphereGrid> grid, std::vector<double> masses);

  const SphereGrid& grid() const { return *grid_; }
  const std::shared_ptr<const SphereGrid>& grid_ptr() const { return grid_; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  std::shared_ptr<const SphereGrid> grid_;
  std::vector<double> masses_;
};

/// Masses proportional to H(node) * weight, renormalized to sum to 1.
DiscreteMeasure discretize(const HusimiField& h, std::shared_ptr<const SphereGrid> grid);

struct TransportPair {
  std::size_t source;
  std::size_t target;
  double mass;
};

struct TransportPlan {
  std::vector<TransportPair> pairs;
  double objective = 0.0;
  double dual_objective = 0.0;
  /// Kantorovich potentials: dual_source[i] + dual_target[j] <= cost(i, j).
  std::vector<double> dual_source;
  std::vector<double> dual_target;
  std::int64_t pivots = 0;
};

struct TransportOptions {
  std::int64_t max_pivots = 10'000'000;
  /// Cache the dense cost matrix when it has at most this many entries.
  std::int64_t cache_limit = 24'000'000;
};

/// Optimal plan for geodesic cost between the two measures. On a shared
/// grid only the excess of each measure over their common part is moved
/// (valid because the cost is a metric); the common part stays in place.
TransportPlan solve_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const TransportOptions& options = {});

/// Largest distance from a point of the sphere to its cell's node,
/// estimated from the grid geometry; 2x this bounds how far a discretized
/// measure can sit from the continuous one in transport distance when the
/// node masses equal the cell masses.
double covering_radius(const SphereGrid& grid);

struct MongeBracket {
  double estimate = 0.0;  // primal objective
  double lower = 0.0;     // dual objective
  double upper = 0.0;     // min(primal, (pi/2) times the L1 mass difference)
  double l1_bound = 0.0;  // (pi/2) sum |mu_i - nu_i|
  double discretization_radius = 0.0;
  int theta_count = 0;
  int phi_count = 0;
  std::size_t nodes = 0;
  TransportPlan plan;
};

MongeBracket monge_numeric(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j,
                           std::shared_ptr<const SphereGrid> grid,
                           const TransportOptions& options = {});

/// Numeric distance of (a, b) and of (R a R^+, R b R^+) for the rotation
/// exp(-i angle J_axis).
std::pair<double, double> rotation_invariance_check(const DensityMatrix& a, const DensityMatrix& b,
                                                    SpinQuantum j, Axis axis, double angle,
                                                    std::shared_ptr<const SphereGrid> grid,
                                                    const TransportOptions& options = {});

/// Rows "src_theta,src_phi,dst_theta,dst_phi,mass".
void write_plan_csv(std::ostream& os, const TransportPlan& plan, const SphereGrid& source,
                    const SphereGrid& target);

/// {estimate, lower, upper, resolution, ...}
nlohmann::json bracket_json(const MongeBracket& b);

}  // namespace monge
