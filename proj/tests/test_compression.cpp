#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergo/compression.hpp"
#include "test_util.hpp"

using namespace ergo;
using namespace ergo::test;

namespace {

// Independent triangle area on raw coordinates, for the two-triangulation oracle.
double tri(const double a[3], const double b[3], const double c[3]) {
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

}  // namespace

TEST_CASE("quad_area: planar unit square") {
  const QuadArea q = quad_area({0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0});
  CHECK(q.area_m2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.planarity_gap_m2 < 1e-15);
}

TEST_CASE("quad_area: 0.985 per-side scaling gives ~3% area reduction") {
  const double s = 0.985;
  const QuadArea q = quad_area({0, 0, 0}, {s, 0, 0}, {s, s, 0}, {0, s, 0});
  CHECK(q.area_m2 == doctest::Approx(0.970225).epsilon(1e-12));
  CHECK(1.0 - q.area_m2 / 1.0 == doctest::Approx(0.029775).epsilon(1e-9));
}

TEST_CASE("quad_area: non-planar fold equals the mean of both triangulations") {
  const double p1[3] = {0, 0, 0}, p2[3] = {1, 0, 0}, p3[3] = {1, 1, 0.1},
               p4[3] = {0, 1, 0};
  const double diag13 = tri(p1, p2, p3) + tri(p1, p3, p4);
  const double diag24 = tri(p2, p3, p4) + tri(p2, p4, p1);
  const QuadArea q = quad_area({p1[0], p1[1], p1[2]}, {p2[0], p2[1], p2[2]},
                               {p3[0], p3[1], p3[2]}, {p4[0], p4[1], p4[2]});
  CHECK(q.area_m2 == doctest::Approx(0.5 * (diag13 + diag24)).epsilon(1e-14));
  CHECK(q.planarity_gap_m2 == doctest::Approx(std::abs(diag13 - diag24)).epsilon(1e-14));
  CHECK(q.planarity_gap_m2 > 1e-6);  // genuinely non-planar input
}

TEST_CASE("quad_area: degenerate quad rejected") {
  CHECK_THROWS_AS(quad_area({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}), Error);
  CHECK_THROWS_AS(quad_area({0, 0, 0}, {0, 0, 0}, {1, 1, 0}, {0, 1, 0}), Error);
}

TEST_CASE("quad_area: rigid invariance and quadratic scaling") {
  Rng rng(5);
  const Vec3 p1{0.1, 0.0, 0.2}, p2{0.4, 0.05, 0.18}, p3{0.45, 0.3, 0.25},
      p4{0.05, 0.28, 0.3};
  const QuadArea base = quad_area(p1, p2, p3, p4);
  for (int it = 0; it < 50; ++it) {
    const Vec3 axis = normalized(rng.point(-1, 1));
    const double ang = rng.uniform(0, 2 * M_PI);
    const Vec3 shift = rng.point(-2, 2);
    auto rt = [&](const Vec3& v) { return rotate(v, axis, ang) + shift; };
    const QuadArea q = quad_area(rt(p1), rt(p2), rt(p3), rt(p4));
    CHECK(std::abs(q.area_m2 - base.area_m2) <= 1e-12 * base.area_m2);
  }
  for (double s : {0.5, 2.0, 3.7}) {
    const QuadArea q = quad_area(s * p1, s * p2, s * p3, s * p4);
    CHECK(std::abs(q.area_m2 - s * s * base.area_m2) <= 1e-12 * s * s * base.area_m2);
  }
}

TEST_CASE("torso_ratio: identity, baseline mean, empty baseline") {
  const std::vector<double> constant(10, 0.08);
  const auto r = torso_ratio(constant, {0, 1, 2});
  for (double v : r) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<double> areas{0.04, 0.06, 0.0485};
  const auto r2 = torso_ratio(areas, {0, 1});  // baseline mean 0.05
  CHECK(r2[2] == doctest::Approx(0.97).epsilon(1e-12));

  CHECK_THROWS_AS(torso_ratio(areas, {}), Error);
}

TEST_CASE("solve_cuff_radius: closed cylinder and quarter-open analytic cases") {
  // l = 0, L = 2*pi: the full circle of radius 1
  CHECK(solve_cuff_radius(0.0, 2.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-15));
  // l = 2, L = pi: l/2R = 1 = sin(pi/2) at R = 1
  CHECK(solve_cuff_radius(2.0, M_PI) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solve_cuff_radius: forward-model round trip over 1000 samples") {
  Rng rng(31337);
  for (int it = 0; it < 1000; ++it) {
    const double radius = rng.uniform(0.02, 0.10);
    const double theta = rng.uniform(0.05, 1.4);
    const double l = 2.0 * radius * std::sin(theta);
    const double arc = radius * (2.0 * M_PI - 2.0 * theta);
    const double recovered = solve_cuff_radius(l, arc);
    CHECK(std::abs(recovered - radius) <= 1e-9 * radius);
    // the trivial root x = 0 would blow R up to infinity
    CHECK(recovered < 10.0 * arc);
  }
}

TEST_CASE("solve_cuff_radius: no root when the chord reaches the arc length") {
  CHECK_THROWS_AS(solve_cuff_radius(0.3, 0.3), Error);
  CHECK_THROWS_AS(solve_cuff_radius(0.4, 0.3), Error);
  CHECK_THROWS_AS(solve_cuff_radius(-0.1, 0.3), Error);
  CHECK_THROWS_AS(solve_cuff_radius(0.1, 0.0), Error);
}

TEST_CASE("solve_cuff_radius: continuity in the chord length") {
  for (double radius : {0.03, 0.05, 0.08}) {
    for (double theta : {0.2, 0.6, 1.1}) {
      const double l = 2.0 * radius * std::sin(theta);
      const double arc = radius * (2.0 * M_PI - 2.0 * theta);
      const double r1 = solve_cuff_radius(l, arc);
      const double r2 = solve_cuff_radius(l + 1e-10, arc);
      CHECK(std::abs(r1 - r2) < 1e-6);  // no branch jumping
    }
  }
}

TEST_CASE("cuff_dv: arithmetic cases and monotonicity") {
  CHECK(cuff_dv(0.05, 0.05) == 0.0);
  CHECK(cuff_dv(0.96 * 0.05, 0.05) == doctest::Approx(0.0784).epsilon(1e-12));
  CHECK(cuff_dv(0.99 * 0.05, 0.05) == doctest::Approx(0.0199).epsilon(1e-12));
  CHECK_THROWS_AS(cuff_dv(0.0, 0.05), Error);
  CHECK_THROWS_AS(cuff_dv(0.05, -1.0), Error);

  double last = 1.0;
  for (double r = 0.040; r <= 0.050; r += 0.001) {
    const double dv = cuff_dv(r, 0.05);
    CHECK(dv < last);  // strictly decreasing in the assisted radius
    last = dv;
  }
}
