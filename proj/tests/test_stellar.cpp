#include <cmath>
#include <numbers>

#include "doctest.h"
#include "monge/assignment.hpp"
#include "monge/random.hpp"
#include "monge/states.hpp"
#include "monge/stellar.hpp"
#include "oracles.hpp"

using namespace monge;
using std::numbers::pi;

namespace {

double phase_free_gap(const PureState& a, const PureState& b) {
  const cplx o = b.amplitudes().dot(a.amplitudes());
  return (a.amplitudes() - b.amplitudes() * (o / std::abs(o))).norm();
}

}  // namespace

TEST_CASE("assignment matches permutation brute force") {
  Rng rng = stream_rng(31, 0);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::MatrixXd c(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) c(i, k) = rep % 3 == 0 ? std::floor(3 * u(rng)) : u(rng);
      const auto a = solve_assignment(c);
      CHECK(a.cost == doctest::Approx(oracle::assignment_by_permutations(c)).epsilon(1e-13));
      std::vector<int> seen(n, 0);
      for (int k : a.column) ++seen[k];
      for (int s : seen) CHECK(s == 1);
    }
  }
  CHECK_THROWS_AS(solve_assignment(Eigen::MatrixXd::Zero(2, 3)), ValidationError);
}

TEST_CASE("stellar roots of eigenstates sit on the poles") {
  for (int two_j = 1; two_j <= 8; ++two_j) {
    const SpinQuantum j(two_j);
    for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
      const auto r = stellar_roots(eigenstate(j, two_m), j);
      REQUIRE(r.points.size() == static_cast<std::size_t>(two_j));
      int north = 0, south = 0;
      for (const auto& p : r.points) {
        if (p.theta == 0.0) ++north;
        if (p.theta == pi) ++south;
      }
      CHECK(south == (two_j + two_m) / 2);
      CHECK(north == (two_j - two_m) / 2);
    }
  }
}

TEST_CASE("stellar roots are zeros of the Husimi function") {
  Rng rng = stream_rng(32, 0);
  for (int two_j = 1; two_j <= 10; ++two_j) {
    const SpinQuantum j(two_j);
    const PureState psi = haar_pure_state(j.dim(), rng);
    for (const auto& p : stellar_roots(psi, j).points) {
      const cplx o = coherent_amplitudes(j, p).amplitudes().dot(psi.amplitudes());
      CHECK(std::abs(o) < 1e-9);
    }
  }
}

TEST_CASE("roots reconstruct the state") {
  Rng rng = stream_rng(33, 0);
  for (int dim = 2; dim <= 10; ++dim) {
    const SpinQuantum j(dim - 1);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const PureState psi = haar_pure_state(dim, rng);
      worst = std::max(worst, phase_free_gap(psi, state_from_roots(stellar_roots(psi, j))));
    }
    CHECK(worst < 1e-8);
  }
  // states with multiple roots off the poles
  for (int two_j = 2; two_j <= 10; ++two_j) {
    const SpinQuantum j(two_j);
    const PureState c = coherent_amplitudes(j, SpherePoint(1.1, 2.3));
    CHECK(phase_free_gap(c, state_from_roots(stellar_roots(c, j))) < 1e-8);
    const PureState y = axis_eigenstate(j, two_j - 2, Axis::y);
    CHECK(phase_free_gap(y, state_from_roots(stellar_roots(y, j))) < 1e-8);
  }
}

TEST_CASE("roots of random states reconstruct the state at large j") {
  Rng rng = stream_rng(34, 0);
  for (int two_j : {40, 80, 120}) {
    const SpinQuantum j(two_j);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const PureState psi = haar_pure_state(two_j + 1, rng);
      worst = std::max(worst, phase_free_gap(psi, state_from_roots(stellar_roots(psi, j))));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("coherent state roots collapse to the antipode") {
  for (int two_j = 1; two_j <= 10; ++two_j) {
    const SpinQuantum j(two_j);
    const SpherePoint p(0.8, 4.0);
    for (const auto& r : stellar_roots(coherent_amplitudes(j, p), j).points)
      CHECK(geodesic(r, p.antipode()) < 1e-9);
  }
}

TEST_CASE("high-multiplicity coherent roots merge at large j") {
  for (int two_j : {24, 40, 60, 80}) {
    const SpinQuantum j(two_j);
    for (const SpherePoint p : {SpherePoint(1.0, 0.5), SpherePoint(0.05, 2.0), SpherePoint(3.1, -1.0)}) {
      const auto roots = stellar_roots(coherent_amplitudes(j, p), j).points;
      REQUIRE(roots.size() == static_cast<std::size_t>(two_j));
      for (const auto& r : roots) CHECK(geodesic(r, p.antipode()) < 1e-9);
      const SpherePoint q(p.theta + (p.theta < 3.0 ? 0.05 : -0.05), p.phi);
      CHECK(simplified_monge(coherent_amplitudes(j, p), coherent_amplitudes(j, q), j) ==
            doctest::Approx(0.05).epsilon(1e-9));
    }
  }
}

TEST_CASE("simplified Monge distance closed forms") {
  SUBCASE("coherent pairs give the geodesic angle") {
    Rng rng = stream_rng(34, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int two_j = 1; two_j <= 10; ++two_j) {
      const SpinQuantum j(two_j);
      for (int rep = 0; rep < 5; ++rep) {
        const SpherePoint a(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng));
        const SpherePoint b(std::acos(1 - 2 * u(rng)), 2 * pi * u(rng));
        CHECK(std::abs(simplified_monge(coherent_amplitudes(j, a), coherent_amplitudes(j, b), j) -
                       geodesic(a, b)) < 1e-9);
      }
    }
  }
  SUBCASE("eigenstates") {
    for (int two_j = 1; two_j <= 8; ++two_j) {
      const SpinQuantum j(two_j);
      for (int m = -two_j; m <= two_j; m += 2)
        for (int m2 = -two_j; m2 <= two_j; m2 += 2)
          CHECK(std::abs(simplified_monge(eigenstate(j, m), eigenstate(j, m2), j) -
                         pi / two_j * std::abs(m - m2) / 2) < 1e-9);
    }
  }
  SUBCASE("cross basis") {
    for (int m = -2; m <= 2; m += 2)
      for (int m2 = -2; m2 <= 2; m2 += 2)
        CHECK(std::abs(cross_basis_distance(SpinQuantum(2), m, m2, BasisPair::z_y) - pi / 2) < 1e-6);
    CHECK(std::abs(cross_basis_distance(SpinQuantum(3), 3, 1, BasisPair::z_x) - pi / 2) < 1e-6);
    CHECK(simplified_monge(eigenstate(SpinQuantum(3), 1), eigenstate(SpinQuantum(3), 1), SpinQuantum(3)) == 0.0);
    CHECK_THROWS_AS(parse_basis_pair("x-y"), ValidationError);
  }
}

TEST_CASE("axis eigenstates have the right eigenvalue") {
  const SpinQuantum j(3);
  for (int two_m = -3; two_m <= 3; two_m += 2) {
    const Vector y = axis_eigenstate(j, two_m, Axis::y).amplitudes();
    const Vector x = axis_eigenstate(j, two_m, Axis::x).amplitudes();
    CHECK(((jy(j) * y) - 0.5 * two_m * y).norm() < 1e-12);
    CHECK(((jx(j) * x) - 0.5 * two_m * x).norm() < 1e-12);
  }
}

TEST_CASE("simplified Monge distance is a metric") {
  Rng rng = stream_rng(35, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const SpinQuantum j(1 + rep % 5);
    const auto a = stellar_roots(haar_pure_state(j.dim(), rng), j);
    const auto b = stellar_roots(haar_pure_state(j.dim(), rng), j);
    const auto c = stellar_roots(haar_pure_state(j.dim(), rng), j);
    const double ab = simplified_monge(a, b), bc = simplified_monge(b, c), ac = simplified_monge(a, c);
    CHECK(ab == simplified_monge(b, a));
    CHECK(ab + bc - ac >= -1e-10);
    CHECK(simplified_monge(a, a) == 0.0);
  }
}

TEST_CASE("simplified Monge distance is rotation invariant") {
  Rng rng = stream_rng(36, 0);
  for (int two_j = 1; two_j <= 6; ++two_j) {
    const SpinQuantum j(two_j);
    const PureState a = haar_pure_state(j.dim(), rng), b = haar_pure_state(j.dim(), rng);
    const Matrix r = rotation(j, Axis::y, 0.9) * rotation(j, Axis::z, 0.4);
    CHECK(std::abs(simplified_monge(a, b, j) - simplified_monge(evolve(r, a), evolve(r, b), j)) < 1e-9);
  }
}

TEST_CASE("two-level simplified Monge equals Fubini-Study") {
  Rng rng = stream_rng(37, 0);
  const SpinQuantum half(1);
  for (int rep = 0; rep < 50; ++rep) {
    const PureState a = haar_pure_state(2, rng), b = haar_pure_state(2, rng);
    CHECK(simplified_monge(a, b, half) == doctest::Approx(fubini_study(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("random-state statistics are deterministic and thread independent") {
  const SpinQuantum j(6);
  const PureState ref = eigenstate(j, 6);
  const auto one = random_state_distance_stats(j, ref, 200, 7, 1);
  const auto many = random_state_distance_stats(j, ref, 200, 7, 4);
  CHECK(one.mean == many.mean);
  CHECK(one.std_error == many.std_error);
  CHECK(one.mean > 0.0);
  CHECK(eigenstate_mean_prediction(j, 6) == doctest::Approx(pi / 2));
  CHECK(eigenstate_mean_prediction(SpinQuantum(4), 0) == doctest::Approx(1.0));
  const auto t = random_pair_scaling({SpinQuantum(1), SpinQuantum(3)}, 100, 3, 2);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].dim == 2);
  CHECK(t.rows[1].distance.mean > 0.0);
}
