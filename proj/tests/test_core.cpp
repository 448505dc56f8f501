#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ergo/core.hpp"
#include "test_util.hpp"

using namespace ergo;
using ergo::test::Rng;

TEST_CASE("resample: linear midpoint and endpoint passthrough") {
  TimeSeries<double> s{{0.0, 1.0}, {0.0, 10.0}};
  CHECK(resample(s, {0.5}).values[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(resample(s, {0.0}).values[0] == 0.0);   // exact passthrough
  CHECK(resample(s, {1.0}).values[0] == 10.0);  // exact passthrough
}

TEST_CASE("resample: hand-computed second-segment interpolation") {
  // v(t) = 10 + (t - 1) * (0 - 10) on [1, 2]; v(1.25) = 7.5
  TimeSeries<double> s{{0.0, 1.0, 2.0}, {0.0, 10.0, 0.0}};
  CHECK(resample(s, {1.25}).values[0] == doctest::Approx(7.5).epsilon(1e-15));
}

TEST_CASE("resample: errors") {
  TimeSeries<double> s{{0.0, 1.0}, {0.0, 10.0}};
  CHECK_THROWS_WITH_AS((void)resample(s, {1.5}), doctest::Contains("outside"), Error);
  CHECK_THROWS_AS((void)resample(s, {-0.1}), Error);
  TimeSeries<double> bad{{0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}};
  try {
    (void)resample(bad, {0.5});
    FAIL("expected NonMonotonic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotonic);
  }
}

TEST_CASE("resample: idempotent at source times") {
  Rng rng(11);
  TimeSeries<double> s;
  double t = 0.0;
  for (int i = 0; i < 50; ++i) {
    t += rng.uniform(0.001, 0.1);
    s.t.push_back(t);
    s.values.push_back(rng.uniform(-10.0, 10.0));
  }
  const auto out = resample(s, s.t);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(out.values[i] == s.values[i]);
}

TEST_CASE("resample: Vec3 values") {
  TimeSeries<Vec3> s{{0.0, 1.0}, {Vec3{0, 0, 0}, Vec3{0, 0, 2}}};
  const Vec3 mid = resample(s, {0.5}).values[0];
  CHECK(mid.z == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("build_frame: canonical basis and scale invariance") {
  for (double scale : {1.0, 2.0, 3.0}) {
    const Frame f = build_frame({0, 0, 0}, {scale, 0, 0}, {0, 1.5 * scale, 0});
    CHECK(norm(f.axes[0] - Vec3{1, 0, 0}) < 1e-15);
    CHECK(norm(f.axes[1] - Vec3{0, 1, 0}) < 1e-15);
    CHECK(norm(f.axes[2] - Vec3{0, 0, 1}) < 1e-15);
  }
}

TEST_CASE("build_frame: hand Gram-Schmidt case") {
  // origin (1,1,1), a (1,1,2), b (1,2,1): axes (0,0,1), (0,1,0), (-1,0,0)
  const Frame f = build_frame({1, 1, 1}, {1, 1, 2}, {1, 2, 1});
  CHECK(norm(f.axes[0] - Vec3{0, 0, 1}) < 1e-15);
  CHECK(norm(f.axes[1] - Vec3{0, 1, 0}) < 1e-15);
  CHECK(norm(f.axes[2] - Vec3{-1, 0, 0}) < 1e-15);
  // right-handed: e0 x e1 = e2
  CHECK(norm(cross(f.axes[0], f.axes[1]) - f.axes[2]) < 1e-15);
}

TEST_CASE("build_frame: degenerate markers") {
  CHECK_THROWS_AS((void)build_frame({0, 0, 0}, {1, 0, 0}, {2, 0, 0}), Error);  // collinear
  CHECK_THROWS_AS((void)build_frame({0, 0, 0}, {0, 0, 0}, {0, 1, 0}), Error);  // coincident
}

TEST_CASE("build_frame: orthonormal right-handed for random markers") {
  Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    const Vec3 o = rng.point(-1, 1);
    const Vec3 a = o + rng.point(-1, 1);
    const Vec3 b = o + rng.point(-1, 1);
    if (0.5 * norm(cross(a - o, b - o)) < 1e-6) continue;
    const Frame f = build_frame(o, a, b);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double want = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(dot(f.axes[i], f.axes[j]) - want) < 1e-9);
      }
    CHECK(norm(cross(f.axes[0], f.axes[1]) - f.axes[2]) < 1e-9);  // det = +1
  }
}

TEST_CASE("build_frame: invariant to adding first-axis components to b") {
  const Vec3 o{0.2, -0.1, 0.4}, a{1.0, 0.3, 0.2}, b{0.1, 0.9, -0.3};
  const Frame f1 = build_frame(o, a, b);
  const Frame f2 = build_frame(o, a, b + 0.7 * f1.axes[0]);
  for (int i = 0; i < 3; ++i) CHECK(norm(f1.axes[i] - f2.axes[i]) < 1e-12);
}

TEST_CASE("frame: world -> local -> world round trip") {
  Rng rng(13);
  const Frame f = build_frame({0.3, 0.1, 1.2}, {0.9, 0.4, 1.0}, {0.2, 0.8, 1.5});
  for (int it = 0; it < 100; ++it) {
    const Vec3 p = rng.point(-2, 2);
    CHECK(norm(f.to_world(f.to_local(p)) - p) < 1e-12);
  }
}

TEST_CASE("angle_between: stable at the poles") {
  CHECK(angle_between({1, 0, 0}, {1, 0, 0}) == 0.0);
  CHECK(angle_between({1, 0, 0}, {-1, 0, 0}) == doctest::Approx(M_PI));
  CHECK(angle_between({1, 0, 0}, {0, 1, 0}) == doctest::Approx(M_PI / 2));
}
