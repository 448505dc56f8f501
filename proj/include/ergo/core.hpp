#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ergo/errors.hpp"

namespace ergo {

// Position/direction in meters. Marker files carry millimeters; the mm->m
// conversion happens once, at ingest.
struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
};

[[nodiscard]] constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
[[nodiscard]] constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
[[nodiscard]] constexpr Vec3 operator*(double s, const Vec3& v) {
  return {s * v.x, s * v.y, s * v.z};
}
[[nodiscard]] constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }
[[nodiscard]] constexpr Vec3 operator/(const Vec3& v, double s) {
  return {v.x / s, v.y / s, v.z / s};
}
[[nodiscard]] constexpr Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

[[nodiscard]] constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
[[nodiscard]] constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
[[nodiscard]] inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

[[nodiscard]] inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (n <= 0.0) fail(ErrorCode::DegenerateSegment, "cannot normalize zero vector");
  return v / n;
}

[[nodiscard]] inline bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Angle between two vectors in [0, pi], robust near 0 and pi.
[[nodiscard]] inline double angle_between(const Vec3& a, const Vec3& b) {
  // atan2(|a x b|, a.b) avoids the acos precision cliff near the poles.
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

inline double lerp(double a, double b, double u) { return a + u * (b - a); }
inline Vec3 lerp(const Vec3& a, const Vec3& b, double u) {
  return {lerp(a.x, b.x, u), lerp(a.y, b.y, u), lerp(a.z, b.z, u)};
}

// Sampled signal on a strictly increasing time base (seconds).
template <class V>
struct TimeSeries {
  std::vector<double> t;
  std::vector<V> values;

  [[nodiscard]] std::size_t size() const { return t.size(); }
  [[nodiscard]] bool empty() const { return t.empty(); }
};

template <class V>
void check_monotonic(const TimeSeries<V>& s) {
  for (std::size_t i = 1; i < s.t.size(); ++i) {
    if (!(s.t[i] > s.t[i - 1]))
      fail(ErrorCode::NonMonotonic,
           "time not strictly increasing at sample " + std::to_string(i));
  }
}

// Linear interpolation of `series` at each target time. Exact passthrough when a
// target coincides with a source sample. Targets must lie inside the source span.
template <class V>
[[nodiscard]] TimeSeries<V> resample(const TimeSeries<V>& series,
                                     const std::vector<double>& target_times) {
  if (series.size() < 2)
    fail(ErrorCode::FormatError, "resample needs at least 2 source samples");
  if (series.t.size() != series.values.size())
    fail(ErrorCode::FormatError, "time/value length mismatch");
  check_monotonic(series);

  TimeSeries<V> out;
  out.t = target_times;
  out.values.reserve(target_times.size());

  std::size_t hint = 0;  // targets are usually increasing; resume the scan
  const double t_first = series.t.front();
  const double t_last = series.t.back();
  for (double tt : target_times) {
    if (tt < t_first || tt > t_last)
      fail(ErrorCode::OutOfRange, "target time " + std::to_string(tt) +
                                      " outside source span [" + std::to_string(t_first) +
                                      ", " + std::to_string(t_last) + "]");
    if (hint > 0 && series.t[hint] > tt) hint = 0;
    while (hint + 2 < series.t.size() && series.t[hint + 1] <= tt) ++hint;
    const double t0 = series.t[hint];
    const double t1 = series.t[hint + 1];
    if (tt == t0) {
      out.values.push_back(series.values[hint]);
    } else if (tt == t1) {
      out.values.push_back(series.values[hint + 1]);
    } else {
      const double u = (tt - t0) / (t1 - t0);
      out.values.push_back(lerp(series.values[hint], series.values[hint + 1], u));
    }
  }
  return out;
}

// Right-handed orthonormal triad anchored at a marker.
struct Frame {
  Vec3 origin;
  Vec3 axes[3];  // axes[0] x axes[1] = axes[2]

  [[nodiscard]] Vec3 to_local(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {dot(d, axes[0]), dot(d, axes[1]), dot(d, axes[2])};
  }
  [[nodiscard]] Vec3 to_world(const Vec3& local) const {
    return origin + local.x * axes[0] + local.y * axes[1] + local.z * axes[2];
  }
  // Rotate a direction into local coordinates (no translation).
  [[nodiscard]] Vec3 dir_to_local(const Vec3& d) const {
    return {dot(d, axes[0]), dot(d, axes[1]), dot(d, axes[2])};
  }
};

// Gram-Schmidt triad: first axis along (a - origin), third along the normal of the
// marker triangle, second completing the right-handed set.
[[nodiscard]] Frame build_frame(const Vec3& origin_marker, const Vec3& axis_marker_a,
                                const Vec3& axis_marker_b);

}  // namespace ergo
