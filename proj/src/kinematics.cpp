#include "ergo/kinematics.hpp"

#include <cmath>

#include "ergo/errors.hpp"

namespace ergo {

namespace {
constexpr double kRadToDeg = 180.0 / M_PI;
constexpr double kPlaneUndefinedBelowDeg = 1.0;
}  // namespace

ShoulderPose shoulder_pose(const Vec3& shoulder, const Vec3& elbow, const Frame& frame) {
  const Vec3 humerus = elbow - shoulder;
  if (!(norm(humerus) > 1e-3))
    fail(ErrorCode::DegenerateSegment, "shoulder and elbow markers coincide");

  const Vec3 h = frame.dir_to_local(humerus);

  ShoulderPose pose;
  // Angle between the humerus and the downward vertical (0,0,-1).
  pose.elevation_deg = angle_between(h, Vec3{0.0, 0.0, -1.0}) * kRadToDeg;

  if (pose.elevation_deg < kPlaneUndefinedBelowDeg) {
    pose.plane_undefined = true;
    pose.plane_of_elevation_deg = 0.0;
  } else {
    double plane = std::atan2(h.y, h.x) * kRadToDeg;
    if (plane <= -180.0) plane += 360.0;
    pose.plane_of_elevation_deg = plane;
  }
  return pose;
}

}  // namespace ergo
