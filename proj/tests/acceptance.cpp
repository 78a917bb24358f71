// One PASS/FAIL line per acceptance criterion, with the measured numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "monge/analytic.hpp"
#include "monge/husimi.hpp"
#include "monge/random.hpp"
#include "monge/special.hpp"
#include "monge/states.hpp"
#include "monge/stellar.hpp"
#include "monge/topology.hpp"
#include "monge/transport.hpp"
#include "oracles.hpp"

using namespace monge;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks and the worst deviation of one criterion.
struct Report {
  int checks = 0;
  std::vector<std::string> failures;
  std::ostringstream info;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": got " << got << ", want " << want << ", |diff| " << std::abs(got - want);
    expect(std::abs(got - want) <= tol, os.str());
  }
};

int failed_criteria = 0;

void finish(int id, const std::string& title, Report& r, double elapsed, double budget = 0.0) {
  if (budget > 0.0) {
    std::ostringstream os;
    os << "runtime " << elapsed << " s exceeds " << budget << " s";
    r.expect(elapsed < budget, os.str());
  }
  const bool ok = r.failures.empty();
  if (!ok) ++failed_criteria;
  std::printf("criterion %d %s: %s (%d checks, %.1f s)\n", id, ok ? "PASS" : "FAIL", title.c_str(),
              r.checks, elapsed);
  const std::string info = r.info.str();
  if (!info.empty()) std::printf("%s", info.c_str());
  for (const auto& f : r.failures) std::printf("    failed: %s\n", f.c_str());
  std::fflush(stdout);
}

DensityMatrix eig(SpinQuantum j, int two_m) { return DensityMatrix::from_pure(eigenstate(j, two_m)); }

struct ExactCase {
  std::string name;
  SpinQuantum j;
  DensityMatrix a, b;
  double value;
};

std::vector<ExactCase> exact_cases() {
  const SpinQuantum h(1), one(2), th(3), two(4);
  return {
      {"j=1/2 (rho+,rho-)", h, rho_plus(h), rho_minus(h), pi / 4},
      {"j=1/2 (rho+,rho*)", h, rho_plus(h), rho_star(h), pi / 8},
      {"j=1/2 (rho-,rho*)", h, rho_minus(h), rho_star(h), pi / 8},
      {"j=1 (rho+,rho-)", one, rho_plus(one), rho_minus(one), 3 * pi / 8},
      {"j=1 (rho+,rho*)", one, rho_plus(one), rho_star(one), 3 * pi / 16},
      {"j=1 (rho-,rho*)", one, rho_minus(one), rho_star(one), 3 * pi / 16},
      {"j=1 (|0>,rho*)", one, eig(one, 0), rho_star(one), 1.0 / 6},
      {"j=3/2 (|3/2>,|1/2>)", th, eig(th, 3), eig(th, 1), 5 * pi / 32},
      {"j=3/2 (|-1/2>,|-3/2>)", th, eig(th, -1), eig(th, -3), 5 * pi / 32},
      {"j=3/2 (|1/2>,|-1/2>)", th, eig(th, 1), eig(th, -1), 9 * pi / 64},
      {"j=3/2 (rho+,rho*)", th, rho_plus(th), rho_star(th), 29 * pi / 128},
      {"j=3/2 (rho-,rho*)", th, rho_minus(th), rho_star(th), 29 * pi / 128},
      {"j=2 (|2>,|1>)", two, eig(two, 4), eig(two, 2), 35 * pi / 256},
      {"j=2 (|-1>,|-2>)", two, eig(two, -2), eig(two, -4), 35 * pi / 256},
      {"j=2 (|1>,|0>)", two, eig(two, 2), eig(two, 0), 15 * pi / 128},
      {"j=2 (|0>,|-1>)", two, eig(two, 0), eig(two, -2), 15 * pi / 128},
      {"j=2 (rho+,rho*)", two, rho_plus(two), rho_star(two), 65 * pi / 256},
      {"j=2 (rho-,rho*)", two, rho_minus(two), rho_star(two), 65 * pi / 256},
      {"j=2 (|0>,rho*)", two, eig(two, 0), rho_star(two), 29.0 / 120},
  };
}

void closed_forms() {
  const auto t0 = Clock::now();
  Report r;
  for (const auto& c : exact_cases()) {
    const MongeResult m = monge_exact(c.a, c.b, c.j);
    r.near(m.value, c.value, 1e-10, c.name);
    r.expect(m.path == "closed-form", c.name + " used path " + m.path);
  }
  const std::vector<std::pair<SpinQuantum, std::function<double(double)>>> ws{
      {SpinQuantum(1), [](double) { return 0.25; }},
      {SpinQuantum(2), [](double) { return 3.0 / 8; }},
      {SpinQuantum(3), [](double x) { return (57 + x) / 128; }},
      {SpinQuantum(4), [](double x) { return 5 * (25 + x) / 256; }},
  };
  for (const auto& [j, want] : ws) {
    const WPolynomial w(j);
    for (double x : {0.0, 0.25, 0.5, 0.9, 1.0})
      r.near(w(x), want(x), 1e-10, "W_" + std::to_string(j.two_j()) + "/2(" + std::to_string(x) + ")");
  }
  finish(1, "closed-form Monge distances and W polynomials", r, seconds_since(t0), 1.0);
}

void quadrature_paths() {
  const auto t0 = Clock::now();
  Report r;
  int meridian_covered = 0, total = 0;
  for (const auto& c : exact_cases()) {
    ++total;
    r.near(monge_symmetric(c.a, c.b, c.j), c.value, 1e-7, "axial " + c.name);
    try {
      const double v = monge_meridian(c.a, c.b, c.j);
      ++meridian_covered;
      r.near(v, c.value, 1e-7, "meridian " + c.name);
    } catch (const PathRefused&) {
    }
  }
  const SpinQuantum th(3), two(4);
  char buf[32];
  for (int two_m : {1, -1}) {
    const double v = monge_symmetric(eig(th, two_m), rho_star(th), th);
    std::snprintf(buf, sizeof buf, "%.4f", v);
    r.expect(std::string(buf) == "0.2737", "j=3/2 (|" + std::to_string(two_m) + "/2>,rho*) printed " + buf);
  }
  for (int two_m : {2, -2}) {
    const double v = monge_symmetric(eig(two, two_m), rho_star(two), two);
    std::snprintf(buf, sizeof buf, "%.4f", v);
    r.expect(std::string(buf) == "0.3909", "j=2 (|" + std::to_string(two_m / 2) + ">,rho*) printed " + buf);
  }
  r.info << "    axial route covers " << total << "/" << total << " pairs, meridian route covers "
         << meridian_covered << "/" << total << "\n";
  finish(2, "axial and meridian quadrature routes reproduce the closed forms", r, seconds_since(t0), 10.0);
}

void numeric_transport() {
  const auto t0 = Clock::now();
  Report r;
  const auto grid = std::make_shared<const SphereGrid>(gauss_product_grid(64, 128));
  struct Case {
    std::string name;
    SpinQuantum j;
    DensityMatrix a, b;
    double exact;
  };
  const SpinQuantum h(1), one(2), th(3);
  const std::vector<Case> cases{
      {"j=1/2 (rho+,rho-)", h, rho_plus(h), rho_minus(h), pi / 4},
      {"j=1 (rho+,rho*)", one, rho_plus(one), rho_star(one), 3 * pi / 16},
      {"j=3/2 coherent pair at pi/2", th, coherent_density(th, SpherePoint(pi / 4, 0.0)),
       coherent_density(th, SpherePoint(3 * pi / 4, 0.0)), coherent_pair_distance(th, pi / 2)},
  };
  // The duality gap is rounding-level and may be slightly negative.
  const double slack = 1e-12;
  for (const auto& c : cases) {
    const auto t1 = Clock::now();
    const MongeBracket b = monge_numeric(c.a, c.b, c.j, grid);
    const double rel = std::abs(b.estimate - c.exact) / c.exact;
    r.expect(rel <= 0.01, c.name + " relative error " + std::to_string(rel));
    r.expect(b.lower - b.discretization_radius <= c.exact && c.exact <= b.upper + b.discretization_radius,
             c.name + " exact value outside the bracket");
    r.expect(b.lower <= b.estimate + slack, c.name + " dual exceeds primal");
    r.expect(b.estimate <= b.l1_bound + slack, c.name + " primal exceeds the L1 bound");
    r.info.precision(10);
    r.info << "    " << c.name << ": estimate " << b.estimate << ", exact " << c.exact << ", rel "
           << rel << ", gap " << b.estimate - b.lower << ", radius " << b.discretization_radius << ", "
           << seconds_since(t1) << " s\n";
  }

  // Independent LP route on small instances: dense tableau simplex.
  Rng rng = stream_rng(2024, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int instances = 0;
  for (int m = 1; m <= 11; ++m)
    for (int n = 1; m + n <= 12; ++n)
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> a(m), b(n);
        std::vector<Eigen::Vector3d> pa(m), pb(n);
        double sa = 0.0, sb = 0.0;
        for (int i = 0; i < m; ++i) {
          sa += a[i] = 0.05 + u(rng);
          pa[i] = SpherePoint(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng)).unit();
        }
        for (int k = 0; k < n; ++k) {
          sb += b[k] = 0.05 + u(rng);
          pb[k] = SpherePoint(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng)).unit();
        }
        for (double& x : a) x /= sa;
        for (double& x : b) x /= sb;
        Eigen::MatrixXd c(m, n);
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < n; ++k) c(i, k) = arc_cost(pa[i], pb[k]);
        const double lp = oracle::transport_by_tableau(a, b, c);
        worst = std::max(worst, std::abs(solve_transportation(a, b, pa, pb).objective - lp));
        if (m * n <= 20) worst = std::max(worst, std::abs(oracle::transport_by_vertices(a, b, c) - lp));
        ++instances;
      }
  r.expect(worst <= 1e-10, "small-instance LP mismatch " + std::to_string(worst));
  r.info << "    " << instances << " LP instances with at most 12 nodes, worst mismatch " << worst << "\n";
  finish(3, "numeric transport at 64x128 brackets the exact distances", r, seconds_since(t0));
}

void standard_metrics() {
  const auto t0 = Clock::now();
  Report r;
  Rng rng = stream_rng(4, 0);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 20; ++t) {
      const PureState x = haar_pure_state(n, rng), y = haar_pure_state(n, rng);
      const double p = transition_probability(x, y);
      const auto dx = DensityMatrix::from_pure(x), dy = DensityMatrix::from_pure(y);
      r.near(trace_distance(dx, dy), 2 * std::sqrt(1 - p), 1e-10, "pure trace distance");
      r.near(hs_distance(dx, dy), std::sqrt(2 * (1 - p)), 1e-10, "pure HS distance");
      r.near(bures_distance(dx, dy), std::sqrt(2 * (1 - std::sqrt(p))), 1e-10, "pure Bures distance");
      r.near(fubini_study(x, y), 2 * std::acos(std::sqrt(p)), 1e-10, "Fubini-Study distance");

      const auto star = DensityMatrix::maximally_mixed(n);
      r.near(trace_distance(dx, star), 2 - 2.0 / n, 1e-10, "trace distance to rho*");
      r.near(hs_distance(dx, star), std::sqrt(1 - 1.0 / n), 1e-10, "HS distance to rho*");
      r.near(bures_distance(dx, star), std::sqrt(2 - 2 / std::sqrt(n)), 1e-10, "Bures distance to rho*");

      const auto a = random_density(n, rng), b = random_density(n, rng);
      const Matrix hmat = random_hermitian(n, rng);
      const auto a2 = kicked_step(a, hmat), b2 = kicked_step(b, hmat);
      r.near(trace_distance(a2, b2), trace_distance(a, b), 1e-10, "trace distance after a kick");
      r.near(hs_distance(a2, b2), hs_distance(a, b), 1e-10, "HS distance after a kick");
      r.near(bures_distance(a2, b2), bures_distance(a, b), 1e-10, "Bures distance after a kick");
    }
  }
  // A unitary that permutes |1> and |0> at j = 1 keeps every standard
  // distance but moves rho+ off the pole.
  const SpinQuantum one(2);
  Matrix swap = Matrix::Zero(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = 1.0;
  const auto p0 = rho_plus(one), m0 = rho_minus(one);
  const auto p1 = conjugate(p0, swap), m1 = conjugate(m0, swap);
  const double before = monge_exact(p0, m0, one).value, after = monge_exact(p1, m1, one).value;
  r.near(trace_distance(p1, m1), trace_distance(p0, m0), 1e-10, "trace distance under the swap");
  r.near(before, 3 * pi / 8, 1e-10, "Monge distance before the swap");
  r.near(after, 3 * pi / 16, 1e-10, "Monge distance after the swap");
  r.expect(std::abs(before - after) > 0.1, "Monge distance unchanged by the swap");
  r.info << "    j=1 swap of |1> and |0>: Monge " << before << " -> " << after << ", trace 2 -> 2\n";
  finish(4, "standard metrics, distances from rho* and unitary invariance", r, seconds_since(t0));
}

void simplified_monge_suite() {
  const auto t0 = Clock::now();
  Report r;
  Rng rng = stream_rng(5, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int two_j = 1; two_j <= 10; ++two_j) {
    const SpinQuantum j(two_j);
    for (int t = 0; t < 20; ++t) {
      const SpherePoint a(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng));
      const SpherePoint b(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng));
      worst = std::max(worst, std::abs(simplified_monge(coherent_amplitudes(j, a), coherent_amplitudes(j, b), j) -
                                       geodesic(a, b)));
    }
  }
  r.expect(worst <= 1e-9, "coherent pairs deviate from the geodesic by " + std::to_string(worst));
  double worst_eig = 0.0;
  for (int two_j = 1; two_j <= 8; ++two_j) {
    const SpinQuantum j(two_j);
    for (int m = -two_j; m <= two_j; m += 2)
      for (int mm = -two_j; mm <= two_j; mm += 2)
        worst_eig = std::max(worst_eig, std::abs(simplified_monge(eigenstate(j, m), eigenstate(j, mm), j) -
                                                 pi / (2.0 * j.j()) * std::abs(m - mm) / 2.0));
  }
  r.expect(worst_eig <= 1e-9, "eigenstate pairs deviate by " + std::to_string(worst_eig));
  double worst_cross = 0.0;
  const SpinQuantum one(2), th(3);
  for (int m = -2; m <= 2; m += 2)
    for (int mm = -2; mm <= 2; mm += 2)
      worst_cross = std::max(worst_cross, std::abs(cross_basis_distance(one, m, mm, BasisPair::z_y) - pi / 2));
  worst_cross = std::max(worst_cross, std::abs(cross_basis_distance(th, 3, 1, BasisPair::z_x) - pi / 2));
  r.expect(worst_cross <= 1e-6, "cross-basis pairs deviate from pi/2 by " + std::to_string(worst_cross));
  r.info << "    worst deviations: coherent " << worst << ", eigenstates " << worst_eig << ", cross basis "
         << worst_cross << "\n";

  const SpinQuantum j20(40);
  const std::size_t samples = 10000;
  struct Reference {
    std::string name;
    PureState state;
    double prediction;
  };
  const std::vector<Reference> refs{
      {"coherent", coherent_amplitudes(j20, SpherePoint(0.7, 1.1)), pi / 2},
      {"|20,0>", eigenstate(j20, 0), eigenstate_mean_prediction(j20, 0)},
      {"|20,10>", eigenstate(j20, 20), eigenstate_mean_prediction(j20, 20)},
  };
  std::uint64_t seed = 50;
  for (const auto& ref : refs) {
    const auto t1 = Clock::now();
    const MeanEstimate e = random_state_distance_stats(j20, ref.state, samples, seed++);
    const double z = (e.mean - ref.prediction) / e.std_error;
    r.expect(std::abs(z) <= 3.0, "j=20 " + ref.name + " mean " + std::to_string(e.mean) + " is " +
                                     std::to_string(z) + " standard errors from " +
                                     std::to_string(ref.prediction));
    r.expect(std::abs(e.mean - ref.prediction) <= 0.05 * ref.prediction,
             "j=20 " + ref.name + " mean off by more than 5%");
    r.info.precision(8);
    r.info << "    j=20 " << ref.name << ": mean " << e.mean << " +- " << e.std_error << ", prediction "
           << ref.prediction << ", z " << z << ", " << seconds_since(t1) << " s\n";
  }
  {
    const double chi = 10 * pi / 40;
    r.info << "    |20,10> with the linear angle m pi/2j instead: " << chi * std::sin(chi) + std::cos(chi)
           << "\n";
  }

  const auto t2 = Clock::now();
  std::vector<SpinQuantum> js;
  for (int two_j : {10, 20, 40, 80}) js.emplace_back(two_j);
  const ScalingTable table = random_pair_scaling(js, 300, 60);
  r.expect(table.slope >= -0.7 && table.slope <= -0.3, "scaling slope " + std::to_string(table.slope));
  r.info << "    random-pair means:";
  for (const auto& row : table.rows) r.info << " N=" << row.dim << ":" << row.distance.mean;
  r.info << ", log-log slope " << table.slope << ", " << seconds_since(t2) << " s\n";
  finish(5, "simplified Monge distance: closed forms and random-state statistics", r, seconds_since(t0));
}

void wehrl_suite() {
  const auto t0 = Clock::now();
  Report r;
  for (int n = 2; n <= 8; ++n) {
    const SpinQuantum j(n - 1);
    r.near(wehrl_entropy(coherent_density(j, SpherePoint(1.2, 0.4)), j), wehrl_minimum(n), 1e-8,
           "coherent entropy N=" + std::to_string(n));
  }
  const auto grid = gauss_product_grid(64, 128);
  for (int n = 2; n <= 6; ++n) {
    const MeanEstimate e = sampled_mean_wehrl(n, 4000, 70 + n, grid);
    const double z = (e.mean - mean_wehrl(n)) / e.std_error;
    r.expect(std::abs(z) <= 3.0, "N=" + std::to_string(n) + " mean entropy z = " + std::to_string(z));
    r.info << "    N=" << n << ": mean " << e.mean << " +- " << e.std_error << ", exact " << mean_wehrl(n)
           << ", z " << z << "\n";
  }
  for (int two_j = 1; two_j <= 6; ++two_j) {
    const SpinQuantum j(two_j);
    const double s = wehrl_entropy(rho_star(j), j);
    r.expect(s == 0.0, "entropy of rho* at 2j=" + std::to_string(two_j) + " is " + std::to_string(s));
  }
  finish(6, "Wehrl entropy", r, seconds_since(t0));
}

void topology_suite() {
  const auto t0 = Clock::now();
  Report r;
  struct Row {
    std::vector<int> k;
    int d, d1, d2;
  };
  const std::vector<Row> rows{
      {{1}, 0, 0, 0},          {{1, 1}, 3, 2, 1},       {{2}, 0, 0, 0},        {{1, 1, 1}, 8, 6, 2},
      {{1, 2}, 5, 4, 1},       {{2, 1}, 5, 4, 1},       {{3}, 0, 0, 0},        {{1, 1, 1, 1}, 15, 12, 3},
      {{1, 1, 2}, 12, 10, 2},  {{1, 2, 1}, 12, 10, 2},  {{2, 1, 1}, 12, 10, 2}, {{1, 3}, 7, 6, 1},
      {{3, 1}, 7, 6, 1},       {{2, 2}, 9, 8, 1},       {{4}, 0, 0, 0},
  };
  for (const auto& row : rows) {
    int n = 0;
    for (int x : row.k) n += x;
    const auto d = stratum_dimension(SpectrumType{n, row.k});
    r.expect(d.total == row.d && d.flag == row.d1 && d.simplex == row.d2,
             stratum_label(SpectrumType{n, row.k}) + " dimensions");
  }
  for (int n = 1; n <= 4; ++n)
    r.expect(all_strata(n).size() == (1u << (n - 1)), "stratum count for N=" + std::to_string(n));
  const std::vector<std::uint64_t> p{1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 1; n <= 10; ++n) r.expect(partition_count(n) == p[n - 1], "P(" + std::to_string(n) + ")");
  for (int n = 1; n <= 20; ++n) {
    const PartitionCensus c = partition_census(n);
    std::uint64_t sum = 0;
    for (int m = 1; m <= n; ++m) {
      const auto want = static_cast<std::uint64_t>(std::llround(binomial(n - 1, m - 1)));
      r.expect(c.parts_by_count[m - 1] == want, "parts with " + std::to_string(m) + " blocks at N=" + std::to_string(n));
      sum += c.parts_by_count[m - 1];
    }
    r.expect(sum == (std::uint64_t{1} << (n - 1)) && c.total_parts == sum, "part total at N=" + std::to_string(n));
  }
  finish(7, "stratum dimensions, partition counts and part census", r, seconds_since(t0));
}

void property_suite() {
  const auto t0 = Clock::now();
  Report r;
  // Coherent pairs: below the geodesic and increasing towards it with j.
  for (double xi : {0.3, 1.0, pi / 2, 2.5, pi}) {
    double prev = 0.0;
    for (int two_j = 1; two_j <= 40; ++two_j) {
      const double c = coherent_pair_distance(SpinQuantum(two_j), xi);
      r.expect(c <= xi + 1e-12, "C(xi,j) above xi");
      r.expect(c >= prev - 1e-12, "C(xi,j) not increasing in j");
      prev = c;
    }
    r.info << "    C(" << xi << ", 20) = " << prev << "\n";
  }
  // rho_a lies on the metric line between rho+ and rho-.
  for (int two_j = 1; two_j <= 6; ++two_j) {
    const SpinQuantum j(two_j);
    const double full = monge_exact(rho_plus(j), rho_minus(j), j).value;
    for (double a : {0.1, 0.35, 0.5, 0.8}) {
      const auto mix = rho_mix(j, a);
      const double sum = monge_exact(rho_plus(j), mix, j).value + monge_exact(mix, rho_minus(j), j).value;
      r.near(sum, full, 1e-10, "metric line at 2j=" + std::to_string(two_j));
    }
  }
  // Rotation invariance of the simplified distance.
  Rng rng = stream_rng(8, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_rot = 0.0;
  for (int two_j = 1; two_j <= 6; ++two_j) {
    const SpinQuantum j(two_j);
    for (int t = 0; t < 20; ++t) {
      const PureState a = haar_pure_state(j.dim(), rng), b = haar_pure_state(j.dim(), rng);
      const Matrix rot = rotation(j, Axis::y, 2 * pi * u(rng)) * rotation(j, Axis::z, 2 * pi * u(rng));
      worst_rot = std::max(worst_rot, std::abs(simplified_monge(a, b, j) -
                                               simplified_monge(evolve(rot, a), evolve(rot, b), j)));
    }
  }
  r.expect(worst_rot <= 1e-8, "simplified distance changes under rotation by " + std::to_string(worst_rot));
  // Rotation invariance of the transport distance: rotated eigenstate pairs
  // against their exact value.
  const auto grid = std::make_shared<const SphereGrid>(gauss_product_grid(32, 64));
  double worst_num = 0.0, radius = 0.0;
  for (int two_j : {1, 2, 3}) {
    const SpinQuantum j(two_j);
    const Matrix rot = rotation(j, Axis::y, 0.9) * rotation(j, Axis::z, 0.4);
    const auto a = conjugate(eig(j, two_j), rot), b = conjugate(eig(j, two_j - 2), rot);
    const MongeBracket br = monge_numeric(a, b, j, grid);
    radius = br.discretization_radius;
    worst_num = std::max(worst_num, std::abs(br.estimate - eigenstate_gap(j, two_j)));
  }
  r.expect(worst_num <= radius, "rotated transport distance off by " + std::to_string(worst_num));
  r.info << "    rotation: simplified " << worst_rot << ", transport " << worst_num << " (radius " << radius
         << ")\n";

  // Random pure states against rho*: between R2 and the coherent value.
  const auto coarse = std::make_shared<const SphereGrid>(gauss_product_grid(24, 48));
  for (int two_j = 1; two_j <= 4; ++two_j) {
    const SpinQuantum j(two_j);
    const int count = two_j == 2 ? 200 : 50;
    double lo = 1e9, hi = 0.0, rad = 0.0;
    for (int t = 0; t < count; ++t) {
      const auto psi = DensityMatrix::from_pure(haar_pure_state(j.dim(), rng));
      const MongeBracket br = monge_numeric(psi, rho_star(j), j, coarse);
      lo = std::min(lo, br.estimate);
      hi = std::max(hi, br.estimate);
      rad = br.discretization_radius;
    }
    r.expect(hi <= coherent_to_star(j) + rad, "a random state exceeds the coherent distance at 2j=" +
                                                 std::to_string(two_j));
    if (two_j == 2) r.expect(lo >= 1.0 / 6 - rad, "a random state falls below 1/6 at j=1");
    r.info << "    2j=" << two_j << ": " << count << " random states, distance to rho* in [" << lo << ", " << hi
           << "], coherent " << coherent_to_star(j) << (two_j == 2 ? ", R2 1/6" : "") << ", grid radius "
           << rad << "\n";
  }
  finish(8, "semiclassical limit, metric line, rotation invariance, radius evidence", r, seconds_since(t0));
}

}  // namespace

int main() {
  closed_forms();
  quadrature_paths();
  numeric_transport();
  standard_metrics();
  simplified_monge_suite();
  wehrl_suite();
  topology_suite();
  property_suite();
  std::printf("%d of 8 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
