#include "monge/stellar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "monge/assignment.hpp"
#include "monge/parallel.hpp"
#include "monge/random.hpp"
#include "monge/special.hpp"
#include "monge/states.hpp"

namespace monge {

namespace {

constexpr double pi = std::numbers::pi;

using Poly = std::vector<cplx>;  // coefficient of w^k at index k

cplx horner(const Poly& p, cplx w) {
  cplx s = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) s = s * w + p[k];
  return s;
}

cplx horner_derivative(const Poly& p, cplx w) {
  cplx s = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) s = s * w + static_cast<double>(k) * p[k];
  return s;
}

Poly reversed(const Poly& p) { return Poly(p.rbegin(), p.rend()); }

// Roots of a polynomial with nonzero constant and leading terms, as
// eigenvalues of the companion matrix of the rescaled polynomial.
std::vector<cplx> companion_roots(const Poly& p) {
  const int d = static_cast<int>(p.size()) - 1;
  if (d == 1) return {-p[0] / p[1]};
  // w = s x balances the constant and leading coefficients.
  const double s = std::pow(std::abs(p[0]) / std::abs(p[d]), 1.0 / d);
  Poly q(p.size());
  double sk = 1.0;
  for (int k = 0; k <= d; ++k) {
    q[k] = p[k] * sk;
    sk *= s;
  }
  Matrix c = Matrix::Zero(d, d);
  for (int k = 1; k < d; ++k) c(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) c(k, d - 1) = -q[k] / q[d];
  Eigen::ComplexEigenSolver<Matrix> es(c, false);
  if (es.info() != Eigen::Success) throw SolverError("companion eigenvalues did not converge");
  std::vector<cplx> roots(d);
  for (int k = 0; k < d; ++k) roots[k] = es.eigenvalues()(k) * s;
  return roots;
}

// Newton steps in whichever chart (w or 1/w) keeps the root inside the
// unit disk; a step is kept only when it lowers the residual.
cplx polish(const Poly& p, const Poly& rev, cplx w) {
  const bool inner = std::abs(w) <= 1.0;
  const Poly& f = inner ? p : rev;
  cplx x = inner ? w : 1.0 / w;
  double fx = std::abs(horner(f, x));
  for (int it = 0; it < 3 && fx > 0.0; ++it) {
    const cplx d = horner_derivative(f, x);
    if (d == 0.0) break;
    const cplx y = x - horner(f, x) / d;
    const double fy = std::abs(horner(f, y));
    if (!(fy < fx)) break;
    x = y;
    fx = fy;
  }
  return inner ? x : 1.0 / x;
}

// Newton ratio p(w)/p'(w), evaluated through the reversed polynomial
// outside the unit disk so Horner never sees powers above one.
cplx newton_ratio(const Poly& p, const Poly& rev, cplx w) {
  if (std::abs(w) <= 1.0) {
    const cplx d = horner_derivative(p, w);
    return d == 0.0 ? cplx(0.0) : horner(p, w) / d;
  }
  const cplx z = 1.0 / w;
  const cplx q = horner(rev, z);
  const cplx den = static_cast<double>(p.size() - 1) * q - z * horner_derivative(rev, z);
  return den == 0.0 ? cplx(0.0) : w * q / den;
}

// Aberth-Ehrlich simultaneous refinement. Companion eigenvalues carry a
// backward error relative to the largest monomial coefficient, which for
// binomially weighted coefficients at large j is far above the size of
// the polynomial near its roots; Horner in the right chart is not.
void aberth(const Poly& p, const Poly& rev, std::vector<cplx>& w) {
  const std::size_t d = w.size();
  for (int it = 0; it < 200; ++it) {
    double step = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const cplx r = newton_ratio(p, rev, w[i]);
      if (r == 0.0) continue;
      cplx s = 0.0;
      for (std::size_t k = 0; k < d; ++k)
        if (k != i && w[k] != w[i]) s += 1.0 / (w[i] - w[k]);
      const cplx c = r / (1.0 - r * s);
      if (!std::isfinite(std::abs(c))) continue;
      w[i] -= c;
      step = std::max(step, std::abs(c) / (1.0 + std::abs(w[i]) * std::abs(w[i])));
    }
    if (step < 1e-15) break;
  }
}

SpherePoint point_of(cplx w) {
  if (std::isinf(std::abs(w))) return SpherePoint(pi, 0.0);
  return SpherePoint(2.0 * std::atan(std::abs(w)), -std::arg(w));
}

// Amplitudes (unnormalized) of the state whose polynomial has the given
// finite roots; roots at infinity only lower the degree.
Vector amplitudes_from_roots(const std::vector<cplx>& finite, int n) {
  Poly c{1.0};
  for (cplx r : finite) {
    // (w - r) near the origin, (1 - w / r) far out: the overall scale is
    // irrelevant and both stay well conditioned.
    cplx lo, hi;
    if (std::abs(r) <= 1.0) {
      lo = -r;
      hi = 1.0;
    } else {
      lo = 1.0;
      hi = -1.0 / r;
    }
    Poly next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * lo;
      next[k + 1] += c[k] * hi;
    }
    c = std::move(next);
  }
  Vector amp = Vector::Zero(n + 1);
  for (std::size_t k = 0; k < c.size(); ++k)
    amp(static_cast<Eigen::Index>(k)) = c[k] / std::sqrt(binomial(n, static_cast<int>(k)));
  return amp;
}

Vector phase_fixed(Vector v) {
  v.normalize();
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  return v * std::polar(1.0, -std::arg(v(big)));
}

double mismatch(const Vector& psi, const Vector& rec) {
  const cplx overlap = rec.dot(psi);
  const double a = std::abs(overlap);
  if (a == 0.0) return 2.0;
  return (psi - rec * (overlap / a)).norm();
}

Vector with_cluster(const std::vector<cplx>& roots, const std::vector<int>& members,
                    cplx centroid, int n) {
  std::vector<cplx> r = roots;
  for (int i : members) r[i] = centroid;
  return amplitudes_from_roots(r, n).normalized();
}

cplx cluster_centroid(const std::vector<cplx>& roots, const std::vector<int>& members) {
  // The mean of a perturbed multiple root is well conditioned (it is a
  // trace); take it in the chart where the cluster is bounded.
  double mean_abs = 0.0;
  for (int i : members) mean_abs += std::abs(roots[i]);
  mean_abs /= static_cast<double>(members.size());
  cplx s = 0.0;
  if (mean_abs <= 1.0) {
    for (int i : members) s += roots[i];
    return s / static_cast<double>(members.size());
  }
  for (int i : members) s += 1.0 / roots[i];
  return static_cast<double>(members.size()) / s;
}

// A k-fold root is a simple root of the (k-1)-th derivative, so Newton on
// that derivative sharpens the cluster mean, whose error grows with the
// companion matrix norm.
cplx refine_centre(const Poly& full, cplx c, int k) {
  if (k < 2) return c;
  const bool inner = std::abs(c) <= 1.0;
  const Poly f = inner ? full : reversed(full);
  const int m = k - 1;
  if (static_cast<int>(f.size()) <= k) return c;
  Poly d(f.size() - m);
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = f[i + m] * binomial(static_cast<int>(i) + m, m);
  cplx x = inner ? c : 1.0 / c;
  double fx = std::abs(horner(d, x));
  for (int it = 0; it < 5 && fx > 0.0; ++it) {
    const cplx dd = horner_derivative(d, x);
    if (dd == 0.0) break;
    const cplx y = x - horner(d, x) / dd;
    const double fy = std::abs(horner(d, y));
    if (!(fy < fx)) break;
    x = y;
    fx = fy;
  }
  return inner ? x : 1.0 / x;
}

// Merges groups among the first `movable` roots into exact multiple roots
// when the merged set still reproduces psi; the rest are fixed pole roots. Groups grow by single linkage in order
// of chordal distance. Merging part of a perturbed multiple root changes
// psi only at second order, so a validated group is not final: a larger
// validated group containing it replaces it.
void merge_multiple_roots(std::vector<cplx>& roots, std::size_t movable, const Poly& full,
                          const Vector& psi, int n) {
  if (movable < 2) return;

  std::vector<Eigen::Vector3d> unit(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) unit[i] = point_of(roots[i]).unit();
  struct Pair {
    double d;
    int a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t x = 0; x < movable; ++x)
    for (std::size_t y = x + 1; y < movable; ++y)
      pairs.push_back({(unit[x] - unit[y]).norm(), static_cast<int>(x), static_cast<int>(y)});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    return p.d != q.d ? p.d < q.d : (p.a != q.a ? p.a < q.a : p.b < q.b);
  });

  const double tol = std::max(1e-10, 10.0 * mismatch(psi, amplitudes_from_roots(roots, n).normalized()));
  std::vector<int> group(roots.size());
  std::iota(group.begin(), group.end(), 0);
  std::vector<std::vector<int>> members(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) members[i] = {static_cast<int>(i)};
  // Validated clusters inside each group, with their centroids.
  struct Cluster {
    std::vector<int> members;
    cplx centre;
  };
  std::vector<std::vector<Cluster>> accepted(roots.size());

  for (const auto& p : pairs) {
    const int ga = group[p.a], gb = group[p.b];
    if (ga == gb) continue;
    for (int i : members[gb]) {
      group[i] = ga;
      members[ga].push_back(i);
    }
    members[gb].clear();
    for (auto& c : accepted[gb]) accepted[ga].push_back(std::move(c));
    accepted[gb].clear();
    const cplx c = refine_centre(full, cluster_centroid(roots, members[ga]),
                                 static_cast<int>(members[ga].size()));
    if (mismatch(psi, with_cluster(roots, members[ga], c, n)) <= tol)
      accepted[ga] = {Cluster{members[ga], c}};
  }
  for (const auto& list : accepted)
    for (const auto& c : list)
      for (int i : c.members) roots[i] = c.centre;
}

}  // namespace

StellarRoots stellar_roots(const PureState& psi, SpinQuantum j) {
  const int n = j.two_j();
  if (psi.dim() != n + 1) throw ValidationError("state dimension does not match j");
  if (psi.amplitudes().norm() == 0.0) throw ValidationError("stellar roots of the zero vector");
  const Vector v = psi.amplitudes().normalized();

  Poly a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = std::sqrt(binomial(n, k)) * v(k);
  int low = 0, high = n;
  // Only exact zeros deflate: tiny coefficients are genuine for states near
  // a pole at large j, and their roots sit near the opposite pole anyway.
  while (low < n && a[low] == 0.0) ++low;
  while (high > low && a[high] == 0.0) --high;

  StellarRoots out;
  out.j = j;
  // Zero low-order coefficients: roots at w = 0 (north pole). Zero top
  // coefficients: roots at infinity (south pole).
  for (int k = 0; k < low; ++k) out.points.emplace_back(0.0, 0.0);
  for (int k = high; k < n; ++k) out.points.emplace_back(pi, 0.0);
  if (high > low) {
    const Poly p(a.begin() + low, a.begin() + high + 1);
    const Poly rev = reversed(p);
    std::vector<cplx> roots = companion_roots(p);
    aberth(p, rev, roots);
    // Validate merges against the full state: pole roots are exact.
    std::vector<cplx> all = roots;
    for (int k = 0; k < low; ++k) all.push_back(0.0);
    merge_multiple_roots(all, roots.size(), a, v, n);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const bool merged = all[i] != roots[i];
      roots[i] = merged ? all[i] : polish(p, rev, roots[i]);
    }
    for (cplx r : roots) out.points.push_back(point_of(r));
  }
  std::sort(out.points.begin(), out.points.end(), [](const SpherePoint& x, const SpherePoint& y) {
    return x.theta != y.theta ? x.theta < y.theta : x.phi < y.phi;
  });
  return out;
}

PureState state_from_roots(const StellarRoots& roots) {
  const int n = roots.j.two_j();
  if (static_cast<int>(roots.points.size()) != n)
    throw ValidationError("a spin-j state has exactly 2j stellar roots");
  std::vector<cplx> finite;
  for (const auto& p : roots.points) {
    if (p.theta >= pi) continue;
    finite.push_back(std::polar(std::tan(0.5 * p.theta), -p.phi));
  }
  return PureState(phase_fixed(amplitudes_from_roots(finite, n)));
}

double simplified_monge(const StellarRoots& a, const StellarRoots& b) {
  if (!(a.j == b.j)) throw ValidationError("root sets belong to different spins");
  const auto before = [](const StellarRoots& x, const StellarRoots& y) {
    return std::lexicographical_compare(
        x.points.begin(), x.points.end(), y.points.begin(), y.points.end(),
        [](const SpherePoint& p, const SpherePoint& q) {
          return p.theta != q.theta ? p.theta < q.theta : p.phi < q.phi;
        });
  };
  // Evaluate in a canonical order so d(a, b) and d(b, a) agree bit for bit.
  const StellarRoots& x = before(b, a) ? b : a;
  const StellarRoots& y = before(b, a) ? a : b;
  const int n = static_cast<int>(x.points.size());
  Eigen::MatrixXd c(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) c(r, s) = geodesic(x.points[r], y.points[s]);
  return solve_assignment(c).cost / n;
}

double simplified_monge(const PureState& a, const PureState& b, SpinQuantum j) {
  return simplified_monge(stellar_roots(a, j), stellar_roots(b, j));
}

namespace {

MeanEstimate summarize(const std::vector<double>& x) {
  MeanEstimate e;
  e.samples = x.size();
  if (x.empty()) return e;
  for (double v : x) e.mean += v;
  e.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  }
  return e;
}

}  // namespace

MeanEstimate random_state_distance_stats(SpinQuantum j, const PureState& reference,
                                         std::size_t samples, std::uint64_t seed,
                                         unsigned threads) {
  if (samples == 0) throw ValidationError("need at least one sample");
  const StellarRoots ref = stellar_roots(reference, j);
  std::vector<double> d(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    Rng rng = stream_rng(seed, i);
    d[i] = simplified_monge(stellar_roots(haar_pure_state(j.dim(), rng), j), ref);
  });
  return summarize(d);
}

double eigenstate_mean_prediction(SpinQuantum j, int two_m) {
  const double chi = std::asin(std::min(1.0, std::abs(two_m) / static_cast<double>(j.two_j())));
  return chi * std::sin(chi) + std::cos(chi);
}

ScalingTable random_pair_scaling(const std::vector<SpinQuantum>& js, std::size_t samples,
                                 std::uint64_t seed, unsigned threads) {
  if (js.size() < 2) throw ValidationError("scaling needs at least two spins");
  if (samples == 0) throw ValidationError("need at least one sample");
  ScalingTable t;
  for (SpinQuantum j : js) {
    std::vector<double> d(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
      Rng rng = stream_rng(seed, (static_cast<std::uint64_t>(j.two_j()) << 32) | i);
      const PureState a = haar_pure_state(j.dim(), rng);
      const PureState b = haar_pure_state(j.dim(), rng);
      d[i] = simplified_monge(a, b, j);
    });
    t.rows.push_back({j.dim(), summarize(d)});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(t.rows.size());
  for (const auto& r : t.rows) {
    const double x = std::log(r.dim), y = std::log(r.distance.mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  t.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return t;
}

BasisPair parse_basis_pair(const std::string& text) {
  if (text == "z-y") return BasisPair::z_y;
  if (text == "z-x") return BasisPair::z_x;
  throw ValidationError("axes must be z-y or z-x, got '" + text + "'");
}

PureState axis_eigenstate(SpinQuantum j, int two_m, Axis axis) {
  const PureState e = eigenstate(j, two_m);
  switch (axis) {
    case Axis::z:
      return e;
    case Axis::y:
      return evolve(rotation(j, Axis::x, -0.5 * pi), e);
    case Axis::x:
      return evolve(rotation(j, Axis::y, 0.5 * pi), e);
  }
  return e;
}

double cross_basis_distance(SpinQuantum j, int two_m, int two_m2, BasisPair axes) {
  const PureState a = eigenstate(j, two_m);
  const PureState b = axis_eigenstate(j, two_m2, axes == BasisPair::z_y ? Axis::y : Axis::x);
  return simplified_monge(a, b, j);
}

}  // namespace monge
