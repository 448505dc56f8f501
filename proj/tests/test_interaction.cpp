#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ergo/interaction.hpp"
#include "test_util.hpp"

using namespace ergo;
using namespace ergo::test;

namespace {

std::array<Vec3, 6> straight_path() {
  return {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0},
          Vec3{3, 0, 0}, Vec3{4, 0, 0}, Vec3{5, 0, 0}};
}

// Single deflection of `wrap` radians at P2, everything else straight.
std::array<Vec3, 6> single_bend_path(double wrap) {
  std::array<Vec3, 6> pts;
  pts[0] = {0, 0, 0};
  pts[1] = {1, 0, 0};
  pts[2] = {2, 0, 0};
  const Vec3 dir{std::cos(wrap), std::sin(wrap), 0.0};
  for (int i = 3; i < 6; ++i) pts[i] = pts[i - 1] + dir;
  return pts;
}

}  // namespace

TEST_CASE("node_force: straight cable carries no net load") {
  const CablePath p = make_cable_path(straight_path());
  for (int node = 1; node <= 4; ++node) {
    const Vec3 f = node_force(p, 100.0, node);
    CHECK(norm(f) < 1e-12);
  }
}

TEST_CASE("node_force: right-angle bend at 100 N") {
  const CablePath p = make_cable_path({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{1, 1, 0},
                                       Vec3{1, 2, 0}, Vec3{1, 3, 0}, Vec3{1, 4, 0}});
  const Vec3 f = node_force(p, 100.0, 1);
  CHECK(norm(f) == doctest::Approx(100.0 * std::sqrt(2.0)).epsilon(1e-12));
  // bisector of the two outgoing directions (-x and +y)
  const Vec3 bisector = normalized(Vec3{-1, 1, 0});
  CHECK(norm(normalized(f) - bisector) < 1e-12);
}

TEST_CASE("node_force: scripted 150-degree wrap at 200 N") {
  const double wrap = 150.0 * M_PI / 180.0;
  const CablePath p = make_cable_path(single_bend_path(wrap));
  CHECK(p.wrap_rad[1] == doctest::Approx(wrap).epsilon(1e-12));
  const double expected = 2.0 * 200.0 * std::sin(wrap / 2.0);  // 386.3703305...
  CHECK(norm(node_force(p, 200.0, 2)) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(expected == doctest::Approx(386.3703305156273).epsilon(1e-12));
}

TEST_CASE("node_force: guards") {
  const CablePath p = make_cable_path(straight_path());
  CHECK_THROWS_AS(node_force(p, 10.0, 0), Error);  // endpoint
  CHECK_THROWS_AS(node_force(p, 10.0, 5), Error);  // endpoint
  CHECK_THROWS_AS(node_force(p, -1.0, 2), Error);  // negative tension
}

TEST_CASE("node_force: linear in tension") {
  const CablePath p = make_cable_path(single_bend_path(0.9));
  const Vec3 f1 = node_force(p, 123.456, 2);
  const Vec3 f2 = node_force(p, 2.0 * 123.456, 2);
  CHECK(f2.x == 2.0 * f1.x);  // power-of-two scale is exact in floating point
  CHECK(f2.y == 2.0 * f1.y);
  CHECK(f2.z == 2.0 * f1.z);
  const Vec3 f3 = node_force(p, 3.0 * 123.456, 2);
  CHECK(norm(f3 - 3.0 * f1) <= 1e-12 * norm(f3));
}

TEST_CASE("force identity: |F| = 2 T sin(wrap/2) over random paths") {
  Rng rng(2024);
  int tested = 0;
  while (tested < 1000) {
    std::array<Vec3, 6> pts;
    pts[0] = rng.point(-1, 1);
    bool ok = true;
    for (int i = 1; i < 6; ++i) {
      pts[i] = pts[i - 1] + rng.point(-0.5, 0.5);
      if (norm(pts[i] - pts[i - 1]) < 1e-3) ok = false;
    }
    if (!ok) continue;
    CablePath p;
    try {
      p = make_cable_path(pts);
    } catch (const Error&) {
      continue;
    }
    const double tension = rng.uniform(1.0, 250.0);
    const int node = 1 + static_cast<int>(rng.uniform(0.0, 3.999));
    // wrap recomputed here, independently of the path's stored angles
    const Vec3 incoming = pts[node] - pts[node - 1];
    const Vec3 outgoing = pts[node + 1] - pts[node];
    const double wrap = angle_between(incoming, outgoing);
    if (wrap < 1e-3) continue;  // near-straight: relative error is ill-posed

    const double magnitude = norm(node_force(p, tension, node));
    const double closed_form = 2.0 * tension * std::sin(wrap / 2.0);
    CHECK(std::abs(magnitude - closed_form) <= 1e-9 * closed_form);
    ++tested;
  }
}

TEST_CASE("node_pressure: exact quotients") {
  CHECK(node_pressure(0.0, 0.002) == 0.0);
  CHECK(node_pressure(100.0 * std::sqrt(2.0), 0.002) ==
        doctest::Approx(70710.678118654755).epsilon(1e-12));  // inside 69.0-85.1 kPa
  CHECK(node_pressure(170.2, 0.002) == doctest::Approx(85100.0).epsilon(1e-12));
  CHECK_THROWS_AS(node_pressure(1.0, 0.0), Error);
  CHECK_THROWS_AS(node_pressure(1.0, -0.5), Error);
}

TEST_CASE("pressure is nondecreasing in tension for a fixed path") {
  const CablePath p = make_cable_path(single_bend_path(0.7));
  double last = -1.0;
  for (double tension = 0.0; tension <= 200.0; tension += 12.5) {
    const double pressure = node_pressure(norm(node_force(p, tension, 2)), 0.002);
    CHECK(pressure >= last);
    last = pressure;
  }
}

TEST_CASE("transmission_ratio: paper operating point and guards") {
  SensorDataset s;
  s.time = {0.0, 0.01, 0.02, 0.03};
  s.proximal = {200.0, 50.0, 2.0, 100.0};
  s.distal = {120.0, 50.0, 2.0, 120.0};
  s.torque = {4.2, 1.0, 0.0, 2.0};
  const TransmissionRatio r = transmission_ratio(s, 5.0);
  CHECK(r.ratio[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.ratio[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isnan(r.ratio[2]));  // below the unpowered threshold
  CHECK(r.undefined_samples == 1);
  CHECK(r.ratio[3] == doctest::Approx(1.0 + kTransmissionEps));  // clipped
  CHECK(r.clipped_samples == 1);
}

TEST_CASE("used_tension: source switch") {
  SuitConfig cfg = default_config();
  CHECK(used_tension(cfg, 200.0, 120.0) == 200.0);
  cfg.tension_source = TensionSource::Distal;
  CHECK(used_tension(cfg, 200.0, 120.0) == 120.0);
  cfg.tension_source = TensionSource::Blend;
  cfg.tension_blend = 0.25;
  CHECK(used_tension(cfg, 200.0, 120.0) == doctest::Approx(180.0).epsilon(1e-12));
}
