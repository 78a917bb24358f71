#include "monge/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "monge/format.hpp"
#include "monge/special.hpp"
#include "monge/states.hpp"

namespace monge {

namespace {

constexpr double pi = std::numbers::pi;

// Composite Gauss-Legendre on [0, t]: panels no wider than pi/16, 32 nodes
// each. Meridian profiles of Husimi fields are trigonometric polynomials of
// degree 2j+1, which this integrates to rounding for 2j up to ~100.
constexpr int panel_order = 32;
constexpr double panel_width = pi / 16.0;

const GaussLegendre& panel_rule() {
  static const GaussLegendre gl = gauss_legendre(panel_order);
  return gl;
}

double composite_gl(const RealFn& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const auto& gl = panel_rule();
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width - 1e-12)));
  const double w = (hi - lo) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * w;
    double ps = 0.0;
    for (int i = 0; i < panel_order; ++i) ps += gl.weights[i] * f(a + 0.5 * w * (gl.nodes[i] + 1.0));
    s += 0.5 * w * ps;
  }
  return s;
}

// Adaptive Gauss-Kronrod with an absolute error target; a relative target
// never converges on segments where the two cdfs agree to rounding.
double adaptive_abs(const RealFn& d, double lo, double hi, double tol, int depth, double& err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double x) { return std::abs(d(x)); }, lo, hi, 0, 0.0, &e);
  if (e <= tol || depth == 0) {
    err += e;
    return v;
  }
  const double mid = 0.5 * (lo + hi);
  return adaptive_abs(d, lo, mid, 0.5 * tol, depth - 1, err) +
         adaptive_abs(d, mid, hi, 0.5 * tol, depth - 1, err);
}

double integrate_abs(const RealFn& d, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double err = 0.0;
  const double v = adaptive_abs(d, lo, hi, 1e-13 * (hi - lo), 20, err);
  if (!std::isfinite(v) || err > 1e-9 * (1.0 + std::abs(v)))
    throw SolverError("1-D transport quadrature did not converge");
  return v;
}

bool is_pure(const DensityMatrix& rho, double tolerance) {
  return std::abs(rho.matrix().squaredNorm() - 1.0) < tolerance;
}

// Index k of |j, j-k> when rho is that eigenstate, otherwise -1.
int eigenstate_index(const DensityMatrix& rho, double tolerance) {
  if (!rho.is_diagonal(tolerance)) return -1;
  for (int k = 0; k < rho.dim(); ++k)
    if (std::abs(rho(k, k).real() - 1.0) < tolerance) return k;
  return -1;
}

bool is_star(const DensityMatrix& rho, double tolerance) {
  const double level = 1.0 / rho.dim();
  for (int r = 0; r < rho.dim(); ++r)
    for (int c = 0; c < rho.dim(); ++c)
      if (std::abs(rho(r, c) - (r == c ? level : 0.0)) > tolerance) return false;
  return true;
}

std::string describe_angle(double x) { return number(x); }

}  // namespace

double salvemini(const RealFn& f1, const RealFn& f2, double a, double b,
                 const std::vector<double>& breakpoints) {
  if (!(b > a)) throw ValidationError("salvemini needs a < b");
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const RealFn d = [&](double x) { return f1(x) - f2(x); };
  constexpr int samples = 256;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    // Sample strictly inside the segment so jumps at its ends do not count
    // as sign changes, then refine each change to a root.
    std::vector<double> roots{lo};
    const double h = (hi - lo) / samples;
    double x_prev = lo + 0.5 * h;
    double d_prev = d(x_prev);
    for (int i = 1; i < samples; ++i) {
      const double x = lo + (i + 0.5) * h;
      const double dx = d(x);
      if ((d_prev < 0.0 && dx > 0.0) || (d_prev > 0.0 && dx < 0.0)) {
        std::uintmax_t iters = 100;
        const auto r = boost::math::tools::toms748_solve(
            d, x_prev, x, d_prev, dx, boost::math::tools::eps_tolerance<double>(50), iters);
        roots.push_back(0.5 * (r.first + r.second));
      }
      x_prev = x;
      d_prev = dx;
    }
    roots.push_back(hi);
    for (std::size_t r = 0; r + 1 < roots.size(); ++r)
      total += integrate_abs(d, roots[r], roots[r + 1]);
  }
  return total;
}

LineDensity colatitude_marginal(const HusimiField& h) {
  LineDensity line;
  line.density = [h](double theta) {
    return 0.5 * h(SpherePoint(theta, 0.0)) * std::sin(theta);
  };
  line.cdf = [density = line.density](double t) {
    return composite_gl(density, 0.0, std::clamp(t, 0.0, pi));
  };
  return line;
}

bool is_axially_symmetric(const HusimiField& h, double tolerance) {
  for (int a = 0; a < 32; ++a) {
    const double theta = pi * (a + 0.5) / 32;
    double lo = 1e300, hi = -1e300;
    for (int b = 0; b < 16; ++b) {
      const double v = h(SpherePoint(theta, 2.0 * pi * (b + 0.3) / 16));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > tolerance) return false;
  }
  return true;
}

double monge_symmetric(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j) {
  const HusimiField ha(a, j), hb(b, j);
  if (!is_axially_symmetric(ha) || !is_axially_symmetric(hb))
    throw PathRefused("Husimi field depends on the longitude; the axial reduction does not apply");
  const LineDensity la = colatitude_marginal(ha), lb = colatitude_marginal(hb);
  return salvemini(la.cdf, lb.cdf, 0.0, pi);
}

double meridian_mass(const HusimiField& h, double phi, double t) {
  return composite_gl(
      [&](double theta) { return 0.5 * h(SpherePoint(theta, phi)) * std::sin(theta); }, 0.0,
      std::clamp(t, 0.0, pi));
}

namespace {

// F(pi q / count, phi) for q = 1..count, accumulated interval by interval.
std::vector<double> meridian_profile(const HusimiField& h, double phi, int count) {
  const auto& gl = panel_rule();
  std::vector<double> out(count);
  const double w = pi / count;
  double acc = 0.0;
  for (int q = 0; q < count; ++q) {
    const double a = q * w;
    double s = 0.0;
    for (int i = 0; i < panel_order; ++i) {
      const double x = a + 0.5 * w * (gl.nodes[i] + 1.0);
      s += gl.weights[i] * 0.5 * h(SpherePoint(x, phi)) * std::sin(x);
    }
    acc += 0.5 * w * s;
    out[q] = acc;
  }
  return out;
}

// Integral over t in [0, pi] of F(t, phi), with F accumulated panel by
// panel so each outer node costs one inner panel.
double meridian_area(const HusimiField& h, double phi) {
  const auto& gl = panel_rule();
  const int panels = static_cast<int>(std::ceil(pi / panel_width - 1e-12));
  const double w = pi / panels;
  auto dens = [&](double theta) { return 0.5 * h(SpherePoint(theta, phi)) * std::sin(theta); };
  auto partial = [&](double a, double t) {
    double s = 0.0;
    for (int i = 0; i < panel_order; ++i) {
      const double x = a + 0.5 * (t - a) * (gl.nodes[i] + 1.0);
      s += gl.weights[i] * dens(x);
    }
    return 0.5 * (t - a) * s;
  };
  double before = 0.0, area = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * w;
    double ps = 0.0;
    for (int i = 0; i < panel_order; ++i) {
      const double t = a + 0.5 * w * (gl.nodes[i] + 1.0);
      ps += gl.weights[i] * (before + partial(a, t));
    }
    area += 0.5 * w * ps;
    before += partial(a, a + w);
  }
  return area;
}

}  // namespace

double monge_meridian(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j) {
  const HusimiField ha(a, j), hb(b, j);
  constexpr int grid = 64;
  constexpr double tolerance = 1e-8;
  double lo = 0.0, hi = 0.0;
  for (int p = 0; p < grid; ++p) {
    const double phi = 2.0 * pi * p / grid;
    const auto fa = meridian_profile(ha, phi, grid), fb = meridian_profile(hb, phi, grid);
    const double total = fa.back() - fb.back();
    if (std::abs(total) > tolerance) {
      std::ostringstream os;
      os << "meridian masses differ at phi = " << number(phi) << " by " << number(total)
         << "; the meridian reduction does not apply";
      throw PathRefused(os.str());
    }
    for (int q = 0; q < grid; ++q) {
      const double d = fa[q] - fb[q];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  double sign = 1.0;
  if (lo < -tolerance) {
    if (hi > tolerance)
      throw PathRefused("meridian cdfs cross (min " + number(lo) + ", max " + number(hi) +
                        "); the meridian reduction does not apply");
    sign = -1.0;
  }
  // H is a trigonometric polynomial of degree 2j in phi, so the periodic
  // trapezoid rule with more than 2j nodes is exact.
  const int m = std::max(8, 2 * j.two_j() + 2);
  double s = 0.0;
  for (int p = 0; p < m; ++p) {
    const double phi = 2.0 * pi * (p + 0.25) / m;
    s += meridian_area(ha, phi) - meridian_area(hb, phi);
  }
  return std::max(0.0, sign * s / m);
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw ValidationError("Bloch vectors exist only for N = 2");
  return {rho(0, 1).real(), -rho(0, 1).imag(), 0.5 * (rho(0, 0).real() - rho(1, 1).real())};
}

double monge_bloch(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.25 * pi * (bloch_vector(a) - bloch_vector(b)).norm();
}

double eigenstate_gap(SpinQuantum j, int two_m) {
  const int tj = j.two_j();
  if (two_m > tj || two_m < -tj + 2 || (tj - two_m) % 2 != 0)
    throw ValidationError("eigenstate gap needs -j+1 <= m <= j");
  const int n = (tj + two_m) / 2;
  const int big_n = tj + 1;
  const double lg = log_binomial(2 * (big_n - n), big_n - n) + log_binomial(2 * n, n) -
                    2.0 * big_n * std::numbers::ln2;
  return pi * std::exp(lg);
}

double eigenstate_distance(SpinQuantum j, int two_m, int two_m2) {
  const int tj = j.two_j();
  for (int m : {two_m, two_m2})
    if (std::abs(m) > tj || (tj - m) % 2 != 0)
      throw ValidationError("m must satisfy -j <= m <= j with j - m integer");
  double s = 0.0;
  for (int m = std::max(two_m, two_m2); m > std::min(two_m, two_m2); m -= 2)
    s += eigenstate_gap(j, m);
  return s;
}

double coherent_to_star(SpinQuantum j) {
  const int big_n = j.dim();
  const double tail = std::exp(log_binomial(2 * big_n, big_n) + (1.0 - 2.0 * big_n) * std::numbers::ln2);
  return 0.5 * pi * (1.0 - tail);
}

double zero_state_to_star(SpinQuantum j) {
  if (!j.is_integer()) throw ValidationError("|j,0> exists only for integer j");
  double ratio = 1.0;  // (2k-1)!!/(2k)!!
  double s = 0.0;
  for (int k = 1; k <= j.two_j() / 2; ++k) {
    ratio *= (2.0 * k - 1.0) / (2.0 * k);
    s += ratio / (2.0 * k + 1.0);
  }
  return s;
}

double a_coefficient(int u, int v) {
  if (u < 0 || v < 0) throw ValidationError("A_{u,v} needs u, v >= 0");
  // r_s = C(2s, s) / 4^s
  double r = 1.0;
  for (int s = 1; s <= u; ++s) r *= (2.0 * s - 1.0) / (2.0 * s);
  const double head = 2.0 / (r * (2.0 * u + 1.0));
  double sum = 0.0;
  r = 1.0;
  for (int s = 0; s <= v; ++s) {
    if (s > 0) r *= (2.0 * s - 1.0) / (2.0 * s);
    sum += r / (u + 1.0 + s);
  }
  return head - sum;
}

double symmetric_coefficient(SpinQuantum j, int u, int v) {
  const int tj = j.two_j();
  if (u < 0 || v < 0 || 2 * (u + v) >= tj) throw ValidationError("S_{j,u,v} needs u + v < j");
  const int w = u + v;
  const double lg = log_factorial(tj) - log_factorial(tj - 2 * w - 1) - log_factorial(u) -
                    log_factorial(v) - log_factorial(w + 1) - 2.0 * w * std::numbers::ln2;
  return std::exp(lg);
}

WPolynomial::WPolynomial(SpinQuantum j) : j_(j) {
  const int tj = j.two_j();
  const double prefactor = (tj + 1.0) * std::exp(-(tj + 2.0) * std::numbers::ln2);
  int degree = 0;
  for (int w = 0; 2 * w < tj; ++w)
    for (int u = 0; u <= w; ++u) {
      const int v = w - u;
      terms_.push_back({u, v, prefactor * symmetric_coefficient(j, u, v) * a_coefficient(u, v)});
      degree = std::max(degree, w);
    }
  coeffs_.assign(degree + 1, 0.0);
  for (const auto& t : terms_) {
    // x^u (1-x)^v = sum_r C(v, r) (-1)^r x^{u+r}
    for (int r = 0; r <= t.v; ++r)
      coeffs_[t.u + r] += t.weight * binomial(t.v, r) * (r % 2 ? -1.0 : 1.0);
  }
}

double WPolynomial::operator()(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.weight * std::pow(x, t.u) * std::pow(1.0 - x, t.v);
  return s;
}

WPolynomial build_w_polynomial(SpinQuantum j) { return WPolynomial(j); }

double coherent_pair_distance(const WPolynomial& w, double xi) {
  if (!(xi >= 0.0 && xi <= pi)) throw ValidationError("angle must lie in [0, pi]");
  const double s = std::sin(0.5 * xi);
  return pi * s * w(s * s);
}

double coherent_pair_distance(SpinQuantum j, double xi) {
  return coherent_pair_distance(WPolynomial(j), xi);
}

double l1_upper_bound(const HusimiField& a, const HusimiField& b, const SphereGrid& grid) {
  if (!(a.j() == b.j())) throw ValidationError("Husimi fields have different spin");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.weights()[i] * std::abs(a(grid.nodes()[i]) - b(grid.nodes()[i]));
  return 0.5 * pi * s;
}

double l1_upper_bound(const HusimiField& a, const HusimiField& b) {
  static const SphereGrid grid = gauss_product_grid(96, 192);
  return l1_upper_bound(a, b, grid);
}

std::optional<SpherePoint> coherent_direction(const DensityMatrix& rho, SpinQuantum j,
                                              double tolerance) {
  if (rho.dim() != j.dim()) throw ValidationError("state dimension does not match 2j+1");
  if (!is_pure(rho, tolerance)) return std::nullopt;
  const Eigen::Vector3d mean((rho.matrix() * jx(j)).trace().real(),
                             (rho.matrix() * jy(j)).trace().real(),
                             (rho.matrix() * jz(j)).trace().real());
  // |<J>| = j only for coherent states; otherwise it is strictly smaller.
  if (mean.norm() < j.j() * (1.0 - tolerance)) return std::nullopt;
  return SpherePoint::from_unit(mean);
}

std::optional<ClosedForm> monge_closed_form(const DensityMatrix& a, const DensityMatrix& b,
                                            SpinQuantum j) {
  if (a.dim() != j.dim() || b.dim() != j.dim())
    throw ValidationError("state dimension does not match 2j+1");
  constexpr double eps = 1e-12;
  const int tj = j.two_j();
  const int n = j.dim();

  if (n == 2) return ClosedForm{monge_bloch(a, b), "Bloch-ball distance (pi/4)|v1 - v2|"};

  const int ka = eigenstate_index(a, eps), kb = eigenstate_index(b, eps);
  if (ka >= 0 && kb >= 0)
    return ClosedForm{eigenstate_distance(j, tj - 2 * ka, tj - 2 * kb),
                      "sum of neighbouring-eigenstate gaps"};

  // Diagonal state against |j,j> or |j,-j>: the extreme state's cdf
  // dominates every eigenstate's, so the distance is linear in the weights.
  for (int swap = 0; swap < 2; ++swap) {
    const DensityMatrix& y = swap ? a : b;
    const int kx = swap ? kb : ka;
    if ((kx == 0 || kx == n - 1) && y.is_diagonal(eps)) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += y(k, k).real() * eigenstate_distance(j, tj - 2 * kx, tj - 2 * k);
      return ClosedForm{s, "weighted eigenstate distances from an extreme eigenstate"};
    }
  }

  const bool star_a = is_star(a, eps), star_b = is_star(b, eps);
  if (star_a && star_b) return ClosedForm{0.0, "identical states"};

  const auto da = coherent_direction(a, j), db = coherent_direction(b, j);
  if (da && db) {
    const double xi = geodesic(*da, *db);
    return ClosedForm{coherent_pair_distance(j, xi),
                      "coherent pair at angle " + describe_angle(xi)};
  }
  if ((da && star_b) || (db && star_a))
    return ClosedForm{coherent_to_star(j), "coherent state to maximally mixed state"};
  if (j.is_integer() && ((ka == tj / 2 && star_b) || (kb == tj / 2 && star_a)))
    return ClosedForm{zero_state_to_star(j), "|j,0> to maximally mixed state"};
  return std::nullopt;
}

MongeResult monge_exact(const DensityMatrix& a, const DensityMatrix& b, SpinQuantum j) {
  if (auto cf = monge_closed_form(a, b, j)) return {cf->value, "closed-form", cf->formula};
  std::string why;
  try {
    return {monge_symmetric(a, b, j), "axial-salvemini", "colatitude marginals"};
  } catch (const PathRefused& e) {
    why = e.what();
  }
  try {
    return {monge_meridian(a, b, j), "meridian-salvemini", "meridian cdf reduction"};
  } catch (const PathRefused& e) {
    throw PathRefused("no exact path applies (" + why + "; " + e.what() +
                      "); use the numeric transport metric");
  }
}

}  // namespace monge
