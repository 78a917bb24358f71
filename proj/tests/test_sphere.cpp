#include <cmath>
#include <numbers>

#include "doctest.h"
#include "monge/random.hpp"
#include "monge/sphere.hpp"

using namespace monge;
using std::numbers::pi;

TEST_CASE("sphere point canonicalization") {
  const SpherePoint n(0.0, 1.3);
  CHECK(n.phi == 0.0);
  const SpherePoint w(1.0, -0.5);
  CHECK(w.phi == doctest::Approx(2 * pi - 0.5));
  CHECK(SpherePoint(1.0, 7.0).phi == doctest::Approx(7.0 - 2 * pi));
}

TEST_CASE("geodesic distance") {
  CHECK(geodesic(SpherePoint(0, 0), SpherePoint(pi, 0)) == doctest::Approx(pi));
  CHECK(geodesic(SpherePoint(0.3, 0.2), SpherePoint(0.3, 0.2)) == 0.0);
  CHECK(geodesic(SpherePoint(pi / 2, 0), SpherePoint(pi / 2, pi / 2)) == doctest::Approx(pi / 2));

  Rng rng = stream_rng(5, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] { return SpherePoint(std::acos(2 * u(rng) - 1), 2 * pi * u(rng)); };
  for (int i = 0; i < 10000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    CHECK(geodesic(a, c) <= geodesic(a, b) + geodesic(b, c) + 1e-12);
  }
}

TEST_CASE("gauss-legendre rule") {
  const auto gl = gauss_legendre(7);
  REQUIRE(gl.nodes.size() == 7);
  double s = 0.0;
  for (std::size_t i = 0; i < 7; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 12);
  CHECK(s == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
}

TEST_CASE("grid construction and exactness") {
  const auto g = build_grid(GridKind::gauss_product, 8);
  CHECK(g.size() == 128);
  double total = 0.0;
  for (double w : g.weights()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(g.integrate([](const SpherePoint& p) { return std::cos(p.theta); })) < 1e-12);

  // degree <= 2q-1 in cos(theta) times e^{ik phi}, |k| < phi_count/2
  const int q = 8;
  for (int deg = 0; deg <= 2 * q - 1; ++deg) {
    for (int k = 0; k < q; ++k) {
      const double re = g.integrate([&](const SpherePoint& p) {
        return std::pow(std::cos(p.theta), deg) * std::cos(k * p.phi);
      });
      const double exact = (k == 0 && deg % 2 == 0) ? 1.0 / (deg + 1) : 0.0;
      CHECK(std::abs(re - exact) < 1e-12);
    }
  }

  const auto f = build_grid(GridKind::fibonacci, 500);
  CHECK(f.size() == 500);
  CHECK(f.integrate([](const SpherePoint&) { return 1.0; }) == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_grid(GridKind::gauss_product, 1), ValidationError);
  CHECK_THROWS_AS(parse_grid_kind("healpix"), ValidationError);
}

TEST_CASE("duplicate nodes are rejected") {
  std::vector<SpherePoint> nodes{SpherePoint(0.5, 0.5), SpherePoint(0.5, 0.5 + 1e-12),
                                 SpherePoint(2.0, 1.0)};
  CHECK_THROWS_AS(SphereGrid(nodes, {0.3, 0.3, 0.4}), ValidationError);
  std::vector<SpherePoint> poles{SpherePoint(0, 0.1), SpherePoint(0, 2.0)};
  CHECK_THROWS_AS(SphereGrid(poles, {0.5, 0.5}), ValidationError);
}

TEST_CASE("meridian cdf") {
  auto one = [](const SpherePoint&) { return 1.0; };
  CHECK(meridian_cdf(one, 0.3, pi) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(meridian_cdf(one, 2.0, pi / 2) == doctest::Approx(0.5).epsilon(1e-13));
  double prev = 0.0;
  auto h = [](const SpherePoint& p) { return 1.0 + std::cos(p.theta); };
  for (double t = 0.1; t < pi; t += 0.1) {
    const double v = meridian_cdf(h, 0.0, t);
    CHECK(v >= prev);
    prev = v;
  }
}
