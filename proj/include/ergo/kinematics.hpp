#pragma once

#include "ergo/core.hpp"

namespace ergo {

// Shoulder elevation measured from the downward vertical (arm at side = 0),
// plane of elevation as the azimuth of the humerus in the transverse plane.
// Convention: frame axis 0 is the frontal direction (plane angle 0), axis 2 is
// the local vertical (up). Both angles in degrees.
struct ShoulderPose {
  double elevation_deg = 0.0;          // [0, 180]
  double plane_of_elevation_deg = 0.0; // (-180, 180], 0 when undefined
  bool plane_undefined = false;        // elevation < 1 deg: azimuth is noise
};

ShoulderPose shoulder_pose(const Vec3& shoulder, const Vec3& elbow, const Frame& frame);

}  // namespace ergo
