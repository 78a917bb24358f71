#include "monge/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "monge/format.hpp"

namespace monge {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double pole_eps = 1e-12;
constexpr double duplicate_radius = 1e-9;
}  // namespace

SpherePoint::SpherePoint(double t, double p) : theta(std::clamp(t, 0.0, pi)), phi(p) {
  if (!std::isfinite(t) || !std::isfinite(p)) throw ValidationError("non-finite sphere coordinate");
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi = 0.0;
  if (std::sin(theta) < pole_eps) phi = 0.0;
}

SpherePoint SpherePoint::from_unit(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw ValidationError("zero vector has no direction");
  const double z = std::clamp(v.z() / n, -1.0, 1.0);
  return SpherePoint(std::acos(z), std::atan2(v.y(), v.x()));
}

Eigen::Vector3d SpherePoint::unit() const {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

SpherePoint SpherePoint::antipode() const { return SpherePoint(pi - theta, phi + pi); }

double geodesic(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  // atan2 form keeps full precision near 0 and pi, where acos(dot) does not.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double geodesic(const SpherePoint& a, const SpherePoint& b) { return geodesic(a.unit(), b.unit()); }

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw ValidationError("Gauss-Legendre order must be >= 1");
  // legendre_p_zeros returns the nonnegative zeros in ascending order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(order);
  GaussLegendre gl;
  for (auto it = half.rbegin(); it != half.rend(); ++it)
    if (*it != 0.0) gl.nodes.push_back(-*it);
  for (double x : half) gl.nodes.push_back(x);
  gl.weights.reserve(gl.nodes.size());
  for (double x : gl.nodes) {
    const double dp = boost::math::legendre_p_prime(order, x);
    gl.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return gl;
}

GridKind parse_grid_kind(const std::string& text) {
  if (text == "gauss-product") return GridKind::gauss_product;
  if (text == "fibonacci") return GridKind::fibonacci;
  throw ValidationError("unsupported grid kind: " + text);
}

SphereGrid::SphereGrid(std::vector<SpherePoint> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() < 2) throw ValidationError("a sphere grid needs at least 2 nodes");
  if (nodes_.size() != weights_.size()) throw ValidationError("grid nodes/weights size mismatch");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw ValidationError("grid weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("grid weights must sum to 1");

  units_.reserve(nodes_.size());
  for (const auto& p : nodes_) units_.push_back(p.unit());

  // Duplicate scan on nodes sorted by z: two nodes within the duplicate
  // radius differ in z by at most that radius.
  std::vector<std::size_t> order(nodes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return units_[a].z() < units_[b].z(); });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& ua = units_[order[a]];
      const auto& ub = units_[order[b]];
      if (ub.z() - ua.z() > duplicate_radius) break;
      if (geodesic(ua, ub) < duplicate_radius) throw ValidationError("duplicate grid nodes");
    }
  }
}

double SphereGrid::integrate(const std::function<double(const SpherePoint&)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
  return s;
}

bool SphereGrid::same_nodes(const SphereGrid& other) const {
  if (this == &other) return true;
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (nodes_[i].theta != other.nodes_[i].theta || nodes_[i].phi != other.nodes_[i].phi)
      return false;
  return true;
}

SphereGrid gauss_product_grid(int theta_order, int phi_count) {
  if (theta_order < 2 || phi_count < 1)
    throw ValidationError("gauss-product grid needs theta order >= 2 and phi count >= 1");
  const GaussLegendre gl = gauss_legendre(theta_order);
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  nodes.reserve(static_cast<std::size_t>(theta_order) * phi_count);
  const double dphi = 2.0 * pi / phi_count;
  // Nodes ordered theta-major from the north pole down.
  for (int a = theta_order - 1; a >= 0; --a) {
    const double theta = std::acos(gl.nodes[a]);
    for (int k = 0; k < phi_count; ++k) {
      nodes.emplace_back(theta, (k + 0.5) * dphi);
      weights.push_back(0.5 * gl.weights[a] / phi_count);
    }
  }
  SphereGrid g(std::move(nodes), std::move(weights));
  g.theta_count_ = theta_order;
  g.phi_count_ = phi_count;
  return g;
}

SphereGrid fibonacci_grid(int count) {
  if (count < 2) throw ValidationError("fibonacci grid needs at least 2 nodes");
  const double golden = pi * (3.0 - std::sqrt(5.0));
  std::vector<SpherePoint> nodes;
  nodes.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    nodes.emplace_back(std::acos(z), golden * i);
  }
  return SphereGrid(std::move(nodes), std::vector<double>(count, 1.0 / count));
}

SphereGrid build_grid(GridKind kind, int resolution) {
  if (resolution < 2) throw ValidationError("grid resolution must be >= 2");
  switch (kind) {
    case GridKind::gauss_product: return gauss_product_grid(resolution, 2 * resolution);
    case GridKind::fibonacci: return fibonacci_grid(resolution);
  }
  throw ValidationError("unsupported grid kind");
}

double meridian_cdf(const std::function<double(const SpherePoint&)>& f, double phi, double t) {
  if (t <= 0.0) return 0.0;
  t = std::min(t, pi);
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double theta) { return 0.5 * f(SpherePoint(theta, phi)) * std::sin(theta); }, 0.0, t,
      15, 1e-13, &err);
  if (!std::isfinite(value) || err > 1e-8)
    throw SolverError("meridian quadrature did not converge");
  return value;
}

void write_grid_csv(std::ostream& os, const SphereGrid& grid) {
  os << "theta,phi,weight\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << csv_number(grid.nodes()[i].theta) << ',' << csv_number(grid.nodes()[i].phi) << ','
       << csv_number(grid.weights()[i]) << '\n';
}

}  // namespace monge
