#include "ergo/core.hpp"

namespace ergo {

Frame build_frame(const Vec3& origin_marker, const Vec3& axis_marker_a,
                  const Vec3& axis_marker_b) {
  const Vec3 va = axis_marker_a - origin_marker;
  const Vec3 vb = axis_marker_b - origin_marker;
  const double tri_area = 0.5 * norm(cross(va, vb));
  if (!(tri_area > 1e-9))
    fail(ErrorCode::DegenerateFrame,
         "frame markers collinear or coincident (triangle area " +
             std::to_string(tri_area) + " m^2)");

  Frame f;
  f.origin = origin_marker;
  f.axes[0] = normalized(va);
  f.axes[2] = normalized(cross(f.axes[0], vb));
  f.axes[1] = cross(f.axes[2], f.axes[0]);
  return f;
}

}  // namespace ergo
