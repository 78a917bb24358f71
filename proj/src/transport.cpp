#include "monge/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <ostream>

#include "monge/format.hpp"

namespace monge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double drop_threshold = 1e-14;

// Keeps nodes whose mass is at least drop_threshold and rescales the kept
// masses to `total`.
void sparsify(const std::vector<double>& masses, double total, std::vector<int>& index,
              std::vector<double>& kept) {
  index.clear();
  kept.clear();
  double s = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (masses[i] >= drop_threshold) {
      index.push_back(static_cast<int>(i));
      kept.push_back(masses[i]);
      s += masses[i];
    }
  if (s > 0.0)
    for (double& x : kept) x *= total / s;
}

TransportSolution run_simplex(const std::vector<double>& a, const std::vector<double>& b,
                              const std::vector<Eigen::Vector3d>& pa,
                              const std::vector<Eigen::Vector3d>& pb,
                              const TransportOptions& options) {
  SimplexOptions so;
  so.max_pivots = options.max_pivots;
  const auto entries = static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size());
  if (entries <= options.cache_limit) {
    RowMatrix cost(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) cost(i, j) = arc_cost(pa[i], pb[j]);
    return solve_transportation(a, b, cost, so);
  }
  return solve_transportation(a, b, pa, pb, so);
}

double dual_value(const std::vector<double>& mu, const std::vector<double>& nu,
                  const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += mu[i] * u[i];
  for (std::size_t j = 0; j < nu.size(); ++j) s += nu[j] * v[j];
  return s;
}

// Common grid: f(x) = min_t (c(x, t) - v_t) over the reduced sinks is
// 1-Lipschitz, so (f, -f) is dual feasible on every pair and is at least
// as good as the reduced duals on the reduced sources.
void lipschitz_duals(const SphereGrid& grid, const std::vector<int>& sinks,
                     const std::vector<double>& v, TransportPlan& plan) {
  const auto& pts = grid.units();
  std::vector<double> f(grid.size(), 0.0);
  if (!sinks.empty()) {
    for (std::size_t x = 0; x < grid.size(); ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < sinks.size(); ++k)
        best = std::min(best, arc_cost(pts[x], pts[sinks[k]]) - v[k]);
      f[x] = best;
    }
    // Normalize: shifting f by a constant changes nothing.
    const double shift = *std::min_element(f.begin(), f.end());
    for (double& x : f) x -= shift;
  }
  plan.dual_source = f;
  plan.dual_target.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) plan.dual_target[i] = -f[i];
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::shared_ptr<const SphereGrid> grid, std::vector<double> masses)
    : grid_(std::move(grid)), masses_(std::move(masses)) {
  if (!grid_) throw ValidationError("discrete measure needs a grid");
  if (masses_.size() != grid_->size()) throw ValidationError("one mass per grid node required");
  double s = 0.0;
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError("masses must be nonnegative");
    s += m;
  }
  if (std::abs(s - 1.0) > 1e-10) throw ValidationError("masses must sum to 1");
}

DiscreteMeasure discretize(const HusimiField& h, std::shared_ptr<const SphereGrid> grid) {
  if (!grid) throw ValidationError("discretize needs a grid");
  std::vector<double> m = h.sample(*grid);
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::max(0.0, m[i]) * grid->weights()[i];
    s += m[i];
  }
  if (!(s > 0.0)) throw ValidationError("Husimi field vanishes on every grid node");
  for (double& x : m) x /= s;
  return DiscreteMeasure(std::move(grid), std::move(m));
}

TransportPlan solve_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const TransportOptions& options) {
  TransportPlan plan;
  const SphereGrid& gm = mu.grid();
  const SphereGrid& gn = nu.grid();
  std::vector<int> si, ti;
  std::vector<double> a, b;

  if (gm.same_nodes(gn)) {
    // Move only the excess; the overlap min(mu, nu) stays put at zero cost.
    const std::size_t n = gm.size();
    std::vector<double> ex_mu(n), ex_nu(n);
    double excess = 0.0, excess_nu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double common = std::min(mu.masses()[i], nu.masses()[i]);
      ex_mu[i] = mu.masses()[i] - common;
      ex_nu[i] = nu.masses()[i] - common;
      excess += ex_mu[i];
      excess_nu += ex_nu[i];
      if (common > 0.0) plan.pairs.push_back({i, i, common});
    }
    const double total = 0.5 * (excess + excess_nu);
    sparsify(ex_mu, total, si, a);
    sparsify(ex_nu, total, ti, b);
    std::vector<double> v;
    if (!a.empty() && !b.empty()) {
      std::vector<Eigen::Vector3d> pa, pb;
      for (int i : si) pa.push_back(gm.units()[i]);
      for (int j : ti) pb.push_back(gm.units()[j]);
      const auto sol = run_simplex(a, b, pa, pb, options);
      for (const auto& f : sol.flows) {
        plan.pairs.push_back({static_cast<std::size_t>(si[f.source]),
                              static_cast<std::size_t>(ti[f.target]), f.mass});
        plan.objective += f.mass * arc_cost(pa[f.source], pb[f.target]);
      }
      plan.pivots = sol.pivots;
      v = sol.v;
    } else {
      ti.clear();
    }
    lipschitz_duals(gm, ti, v, plan);
    plan.dual_objective = dual_value(mu.masses(), nu.masses(), plan.dual_source, plan.dual_target);
  } else {
    sparsify(mu.masses(), 1.0, si, a);
    sparsify(nu.masses(), 1.0, ti, b);
    std::vector<Eigen::Vector3d> pa, pb;
    for (int i : si) pa.push_back(gm.units()[i]);
    for (int j : ti) pb.push_back(gn.units()[j]);
    const auto sol = run_simplex(a, b, pa, pb, options);
    for (const auto& f : sol.flows) {
      plan.pairs.push_back({static_cast<std::size_t>(si[f.source]),
                            static_cast<std::size_t>(ti[f.target]), f.mass});
      plan.objective += f.mass * arc_cost(pa[f.source], pb[f.target]);
    }
    plan.pivots = sol.pivots;
    // c-transforms: v_j = min_i (c_ij - u_i) over the support, then
    // u_i = min_j (c_ij - v_j) over every node.
    plan.dual_target.assign(gn.size(), 0.0);
    for (std::size_t j = 0; j < gn.size(); ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < si.size(); ++k)
        best = std::min(best, arc_cost(pa[k], gn.units()[j]) - sol.u[k]);
      plan.dual_target[j] = best;
    }
    plan.dual_source.assign(gm.size(), 0.0);
    for (std::size_t i = 0; i < gm.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < gn.size(); ++j)
        best = std::min(best, arc_cost(gm.units()[i], gn.units()[j]) - plan.dual_target[j]);
      plan.dual_source[i] = best;
    }
    plan.dual_objective = dual_value(mu.masses(), nu.masses(), plan.dual_source, plan.dual_target);
  }
  std::sort(plan.pairs.begin(), plan.pairs.end(), [](const TransportPair& x, const TransportPair& y) {
    return x.source != y.source ? x.source < y.source : x.target < y.target;
  });
  return plan;
}

double covering_radius(const SphereGrid& grid) {
  if (grid.theta_count() > 0) {
    // Product grid: cells are bounded by the midpoints between rows and by
    // half a phi step on either side.
    std::vector<double> thetas;
    for (std::size_t i = 0; i < grid.size(); i += grid.phi_count())
      thetas.push_back(grid.nodes()[i].theta);
    const double half_phi = pi / grid.phi_count();
    double r = 0.0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const double lo = k == 0 ? 0.0 : 0.5 * (thetas[k - 1] + thetas[k]);
      const double hi = k + 1 == thetas.size() ? pi : 0.5 * (thetas[k] + thetas[k + 1]);
      // The farthest point of a cell from its node is one of its corners.
      for (double edge : {lo, hi})
        r = std::max(r, geodesic(SpherePoint(thetas[k], 0.0), SpherePoint(edge, half_phi)));
    }
    return r;
  }
  // Generic grid: radius of a cap holding the average cell area, doubled
  // for irregular cells.
  return 2.0 * std::acos(1.0 - 2.0 / static_cast<double>(grid.size()));
}

MongeBracket monge_numeric(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j,
                           std::shared_ptr<const SphereGrid> grid, const TransportOptions& options) {
  const DiscreteMeasure mu = discretize(HusimiField(a, j), grid);
  const DiscreteMeasure nu = discretize(HusimiField(b, j), grid);
  MongeBracket r;
  r.plan = solve_transport(mu, nu, options);
  double l1 = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) l1 += std::abs(mu.masses()[i] - nu.masses()[i]);
  r.l1_bound = 0.5 * pi * l1;
  r.estimate = r.plan.objective;
  r.lower = r.plan.dual_objective;
  r.upper = std::min(r.estimate, r.l1_bound);
  r.discretization_radius = 2.0 * covering_radius(*grid);
  r.theta_count = grid->theta_count();
  r.phi_count = grid->phi_count();
  r.nodes = grid->size();
  return r;
}

std::pair<double, double> rotation_invariance_check(const DensityMatrix& a, const DensityMatrix& b,
                                                    SpinQuantum j, Axis axis, double angle,
                                                    std::shared_ptr<const SphereGrid> grid,
                                                    const TransportOptions& options) {
  const Matrix r = rotation(j, axis, angle);
  const double before = monge_numeric(a, b, j, grid, options).estimate;
  const double after = monge_numeric(conjugate(a, r), conjugate(b, r), j, grid, options).estimate;
  return {before, after};
}

void write_plan_csv(std::ostream& os, const TransportPlan& plan, const SphereGrid& source,
                    const SphereGrid& target) {
  os << "src_theta,src_phi,dst_theta,dst_phi,mass\n";
  for (const auto& p : plan.pairs) {
    const auto& s = source.nodes()[p.source];
    const auto& t = target.nodes()[p.target];
    os << csv_number(s.theta) << ',' << csv_number(s.phi) << ',' << csv_number(t.theta) << ','
       << csv_number(t.phi) << ',' << csv_number(p.mass) << '\n';
  }
}

nlohmann::json bracket_json(const MongeBracket& b) {
  std::string res = b.theta_count > 0
                        ? std::to_string(b.theta_count) + "x" + std::to_string(b.phi_count)
                        : std::to_string(b.nodes);
  return {{"estimate", b.estimate},
          {"lower", b.lower},
          {"upper", b.upper},
          {"resolution", res},
          {"l1_bound", b.l1_bound},
          {"discretization_radius", b.discretization_radius},
          {"pivots", b.plan.pivots}};
}

}  // namespace monge
