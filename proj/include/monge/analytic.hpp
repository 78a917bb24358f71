#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monge/husimi.hpp"
#include "monge/qstate.hpp"

namespace monge {

using RealFn = std::function<double(double)>;

/// int_a^b |F1 - F2| dx. `breakpoints` lists known jumps or kinks of either
/// cdf so the adaptive rule never straddles them.
double salvemini(const RealFn& f1, const RealFn& f2, double a, double b,
                 const std::vector<double>& breakpoints = {});

/// Colatitude marginal of an axially symmetric Husimi field:
/// h(theta) = H(theta, 0) sin(theta) / 2 and its cdf on [0, pi].
struct LineDensity {
  RealFn density;
  RealFn cdf;
};
LineDensity colatitude_marginal(const HusimiField& h);

/// True when H varies by less than `tolerance` along every sampled latitude
/// (16 longitudes x 32 colatitudes).
bool is_axially_symmetric(const HusimiField& h, double tolerance = 1e-8);

/// Monge distance of two axially symmetric states as the 1-D transport
/// cost between their colatitude marginals. Throws PathRefused otherwise.
double monge_symmetric(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j);

/// F(t, phi) = (1/2) int_0^t H(theta, phi) sin(theta) dtheta.
double meridian_mass(const HusimiField& h, double phi, double t);

/// Monge distance via the meridian reduction
///   D = (1/2pi) int_0^{2pi} int_0^pi (F1 - F2) dt dphi,
/// valid when every meridian carries equal mass for both states and one
/// meridian cdf dominates the other. The hypotheses are checked on a
/// 64 x 64 (t, phi) sample; on failure PathRefused names the violated one.
double monge_meridian(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j);

/// Bloch vector v with rho = I/2 + sigma . v (N = 2 only).
Eigen::Vector3d bloch_vector(const DensityMatrix& rho);
/// (pi/4) |v1 - v2| for N = 2.
double monge_bloch(const DensityMatrix& a, const DensityMatrix& b);

/// Distance between neighbouring eigenstates |j,m> and |j,m-1>.
double eigenstate_gap(SpinQuantum j, int two_m);
/// Distance between |j,m> and |j,m'>: the gaps add along the line.
double eigenstate_distance(SpinQuantum j, int two_m, int two_m2);
/// Distance of any coherent state from the maximally mixed state.
double coherent_to_star(SpinQuantum j);
/// Distance of |j,0> from the maximally mixed state (integer j).
double zero_state_to_star(SpinQuantum j);

/// W_j(x) assembled from the symmetric coefficients S_{j,u,v} and the
/// finite sums A_{u,v}; coefficients are in the monomial basis of x.
class WPolynomial {
 public:
  explicit WPolynomial(SpinQuantum j);

  SpinQuantum j() const { return j_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  /// Evaluated in the positive (u, v) form, not from the monomials.
  double operator()(double x) const;

 private:
  struct Term {
    int u;
    int v;
    double weight;  // prefactor * S_{j,u,v} * A_{u,v}
  };
  SpinQuantum j_;
  std::vector<Term> terms_;
  std::vector<double> coeffs_;
};

WPolynomial build_w_polynomial(SpinQuantum j);

/// S_{j,u,v}; requires u + v < j.
double symmetric_coefficient(SpinQuantum j, int u, int v);
/// A_{u,v} by its finite form.
double a_coefficient(int u, int v);

/// C(Xi, j) = pi sin(Xi/2) W_j(sin^2(Xi/2)): distance of two coherent
/// states separated by the angle Xi.
double coherent_pair_distance(SpinQuantum j, double xi);
double coherent_pair_distance(const WPolynomial& w, double xi);

/// (pi/2) int |H1 - H2| dmu on `grid`.
double l1_upper_bound(const HusimiField& a, const HusimiField& b, const SphereGrid& grid);
double l1_upper_bound(const HusimiField& a, const HusimiField& b);

/// Direction of a coherent state, or nullopt when psi is not one.
std::optional<SpherePoint> coherent_direction(const DensityMatrix& rho, SpinQuantum j,
                                              double tolerance = 1e-10);

/// Monge distance from a closed form when the pair is one of the
/// recognised families (eigenstates, coherent states, the maximally mixed
/// state, the rho_plus/rho_minus line, any pair at j = 1/2, and diagonal
/// states against rho_plus or rho_minus at j = 1).
struct ClosedForm {
  double value;
  std::string formula;
};
std::optional<ClosedForm> monge_closed_form(const DensityMatrix& a, const DensityMatrix& b,
                                            SpinQuantum j);

struct MongeResult {
  double value;
  std::string path;  // "closed-form", "axial-salvemini", "meridian-salvemini"
  std::string detail;
};

/// Tries the exact paths in order closed form, axial reduction, meridian
/// reduction. Throws PathRefused when none applies.
MongeResult monge_exact(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j);

}  // namespace monge
