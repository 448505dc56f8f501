#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergo/kinematics.hpp"
#include "test_util.hpp"

using namespace ergo;
using namespace ergo::test;

namespace {

Frame identity_frame() { return build_frame({0, 0, 0}, {1, 0, 0}, {0, 1, 0}); }

// Elbow placed at elevation e / plane p in the given frame, arm length r.
Vec3 place_elbow(const Vec3& shoulder, const Frame& f, double elev_deg, double plane_deg,
                 double r) {
  const double e = elev_deg * M_PI / 180.0;
  const double p = plane_deg * M_PI / 180.0;
  const Vec3 dir = std::sin(e) * std::cos(p) * f.axes[0] +
                   std::sin(e) * std::sin(p) * f.axes[1] - std::cos(e) * f.axes[2];
  return shoulder + r * dir;
}

}  // namespace

TEST_CASE("shoulder_pose: arm at side is zero elevation") {
  const Frame f = identity_frame();
  const ShoulderPose p = shoulder_pose({0, 0, 1}, {0, 0, 0.7}, f);
  CHECK(p.elevation_deg == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.plane_undefined);
  CHECK(p.plane_of_elevation_deg == 0.0);
}

TEST_CASE("shoulder_pose: horizontal arm along the frontal axis") {
  const Frame f = identity_frame();
  const ShoulderPose p = shoulder_pose({0, 0, 1}, {0.3, 0, 1}, f);
  CHECK(p.elevation_deg == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(p.plane_of_elevation_deg == doctest::Approx(0.0));
  CHECK_FALSE(p.plane_undefined);
}

TEST_CASE("shoulder_pose: scripted angles recovered over a grid") {
  const Frame f = build_frame({0.2, 0.1, 0.9}, {0.5, 0.2, 0.95}, {0.1, 0.6, 1.1});
  const Vec3 shoulder{0.25, 0.05, 1.1};
  for (double e : {5.0, 30.0, 70.0, 110.0}) {
    for (double pl : {-150.0, -45.0, 0.0, 25.0, 179.0}) {
      const Vec3 elbow = place_elbow(shoulder, f, e, pl, 0.3);
      const ShoulderPose p = shoulder_pose(shoulder, elbow, f);
      CHECK(p.elevation_deg == doctest::Approx(e).epsilon(1e-9));
      CHECK(p.plane_of_elevation_deg == doctest::Approx(pl).epsilon(1e-9));
    }
  }
}

TEST_CASE("shoulder_pose: invariant to humerus length") {
  const Frame f = identity_frame();
  const Vec3 shoulder{0, 0, 1};
  const Vec3 elbow = place_elbow(shoulder, f, 42.0, 33.0, 0.3);
  const ShoulderPose a = shoulder_pose(shoulder, elbow, f);
  const ShoulderPose b = shoulder_pose(shoulder, shoulder + 5.0 * (elbow - shoulder), f);
  CHECK(std::abs(a.elevation_deg - b.elevation_deg) < 1e-9);
  CHECK(std::abs(a.plane_of_elevation_deg - b.plane_of_elevation_deg) < 1e-9);
}

TEST_CASE("shoulder_pose: invariant under rigid rotation of the whole scene") {
  Rng rng(77);
  const Vec3 fo{0.2, 0.1, 0.9}, fa{0.5, 0.2, 0.95}, fb{0.1, 0.6, 1.1};
  const Vec3 shoulder{0.25, 0.05, 1.1};
  const Frame f = build_frame(fo, fa, fb);
  const Vec3 elbow = place_elbow(shoulder, f, 55.0, -60.0, 0.31);
  const ShoulderPose ref = shoulder_pose(shoulder, elbow, f);

  for (int it = 0; it < 50; ++it) {
    const Vec3 axis = normalized(rng.point(-1, 1));
    const double ang = rng.uniform(0, 2 * M_PI);
    const Vec3 shift = rng.point(-2, 2);
    auto rt = [&](const Vec3& v) { return rotate(v, axis, ang) + shift; };
    const Frame f2 = build_frame(rt(fo), rt(fa), rt(fb));
    const ShoulderPose p = shoulder_pose(rt(shoulder), rt(elbow), f2);
    CHECK(std::abs(p.elevation_deg - ref.elevation_deg) < 1e-6);
    CHECK(std::abs(p.plane_of_elevation_deg - ref.plane_of_elevation_deg) < 1e-6);
  }
}

TEST_CASE("shoulder_pose: plane undefined below one degree") {
  const Frame f = identity_frame();
  const Vec3 elbow = place_elbow({0, 0, 1}, f, 0.5, 120.0, 0.3);
  const ShoulderPose p = shoulder_pose({0, 0, 1}, elbow, f);
  CHECK(p.plane_undefined);
  CHECK(p.plane_of_elevation_deg == 0.0);
  CHECK(p.elevation_deg == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("shoulder_pose: coincident markers rejected") {
  const Frame f = identity_frame();
  CHECK_THROWS_AS(shoulder_pose({0, 0, 1}, {0, 0, 1.0005}, f), Error);
}
