#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monge/errors.hpp"

namespace monge {

/// Point on S^2 in colatitude/longitude. Construction canonicalizes: theta
/// is clamped to [0, pi], phi wrapped into [0, 2pi), and phi := 0 at the
/// poles.
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;

  SpherePoint() = default;
  SpherePoint(double theta, double phi);

  static SpherePoint from_unit(const Eigen::Vector3d& v);
  Eigen::Vector3d unit() const;
  SpherePoint antipode() const;
};

/// Great-circle distance, in [0, pi].
double geodesic(const SpherePoint& a, const SpherePoint& b);
double geodesic(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int order);

enum class GridKind { gauss_product, fibonacci };
GridKind parse_grid_kind(const std::string& text);

/// Weighted node set on S^2; weights sum to 1 (the sphere has unit
/// measure, d mu = sin(theta) dtheta dphi / 4pi).
class SphereGrid {
 public:
  SphereGrid(std::vector<SpherePoint> nodes, std::vector<double> weights);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<SpherePoint>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Eigen::Vector3d>& units() const { return units_; }

  /// theta-order x phi-count for product grids, 0 x 0 otherwise.
  int theta_count() const { return theta_count_; }
  int phi_count() const { return phi_count_; }

  double integrate(const std::function<double(const SpherePoint&)>& f) const;

  bool same_nodes(const SphereGrid& other) const;

 private:
  friend SphereGrid gauss_product_grid(int, int);
  std::vector<SpherePoint> nodes_;
  std::vector<double> weights_;
  std::vector<Eigen::Vector3d> units_;
  int theta_count_ = 0;
  int phi_count_ = 0;
};

/// Gauss-Legendre in cos(theta) times a uniform phi grid (phi_k = 2 pi k / n
/// shifted by half a step).
SphereGrid gauss_product_grid(int theta_order, int phi_count);
SphereGrid fibonacci_grid(int count);

/// gauss-product: resolution is the theta order, with 2*resolution phi
/// points. fibonacci: resolution is the node count.
SphereGrid build_grid(GridKind kind, int resolution);

/// (1/2) int_0^t f(theta, phi) sin(theta) dtheta by adaptive Gauss-Kronrod.
double meridian_cdf(const std::function<double(const SpherePoint&)>& f, double phi, double t);

/// Rows "theta,phi,weight".
void write_grid_csv(std::ostream& os, const SphereGrid& grid);

}  // namespace monge
