#include "ergo/cable.hpp"

#include <cmath>
#include <string>

#include "ergo/errors.hpp"

namespace ergo {

namespace {
constexpr double kMinSegmentM = 1e-4;
constexpr int kRefineMaxIterations = 20;
constexpr double kRefineTolM = 1e-9;
}  // namespace

CablePath make_cable_path(const std::array<Vec3, 6>& contact_points) {
  CablePath path;
  path.contact_points = contact_points;
  for (int i = 0; i < 5; ++i) {
    const Vec3 seg = contact_points[i + 1] - contact_points[i];
    if (!(norm(seg) > kMinSegmentM))
      fail(ErrorCode::DegenerateSegment,
           std::string("cable points ") + kCableNodeNames[i] + " and " +
               kCableNodeNames[i + 1] + " are closer than 1e-4 m");
    path.segment_unit[i] = normalized(seg);
  }
  for (int n = CablePath::kFirstInterior; n <= CablePath::kLastInterior; ++n) {
    // Deflection between the incoming and outgoing directions; 0 means straight.
    path.wrap_rad[n - 1] = angle_between(path.segment_unit[n - 1], path.segment_unit[n]);
  }
  return path;
}

CablePath build_path(const MarkerDataset& markers, const SuitConfig& cfg,
                     std::size_t frame_index) {
  std::array<Vec3, 6> pts;
  for (std::size_t i = 0; i < kCableRoles.size(); ++i)
    pts[i] = markers.at(kCableRoles[i], cfg, frame_index);
  return make_cable_path(pts);
}

Vec3 refine_node_contact(const Vec3& prev, const Vec3& center, const Vec3& next,
                         double pulley_radius) {
  const Vec3& a = prev;
  const Vec3& c = center;
  const Vec3& b = next;
  const double r = pulley_radius;
  const Vec3 to_a = a - c;
  const Vec3 to_b = b - c;
  const double da = norm(to_a);
  const double db = norm(to_b);
  if (!(da > r) || !(db > r))
    fail(ErrorCode::DegenerateSegment,
         "pulley radius exceeds distance to a neighboring contact point");

  const Vec3 na = to_a / da;
  const Vec3 nb = to_b / db;

  // Bend side: opposite the net pull direction. Straight-through nodes have no
  // defined side and stay put.
  const Vec3 pull = na + nb;
  const double pull_norm = norm(pull);
  if (pull_norm < 1e-12) return c;
  const Vec3 bend = -1.0 * (pull / pull_norm);

  auto tangent_point = [&](const Vec3& nd, double d) {
    const double cos_g = r / d;
    const double sin_g = std::sqrt(std::max(0.0, 1.0 - cos_g * cos_g));
    // In-plane perpendicular to nd, oriented toward the bend side.
    Vec3 perp = bend - dot(bend, nd) * nd;
    const double pn = norm(perp);
    if (pn < 1e-12) return c + r * nd;  // wrap ~ pi; caller guards this
    perp = perp / pn;
    return c + r * (cos_g * nd + sin_g * perp);
  };

  const Vec3 ta = tangent_point(na, da);
  const Vec3 tb = tangent_point(nb, db);
  return 0.5 * (ta + tb);
}

CablePath refine_contact_points(const CablePath& path, double pulley_radius) {
  if (!(pulley_radius > 0.0))
    fail(ErrorCode::ValueOutOfRange, "pulley_radius must be > 0");
  for (int n = CablePath::kFirstInterior; n <= CablePath::kLastInterior; ++n) {
    if (!(path.wrap_rad[n - 1] < M_PI - 1e-3))
      fail(ErrorCode::DegenerateSegment,
           std::string("wrap angle at ") + kCableNodeNames[n] +
               " too close to pi for tangent refinement");
  }

  std::array<Vec3, 6> centers = path.contact_points;  // pulley centers stay at markers
  std::array<Vec3, 6> pts = path.contact_points;

  for (int iter = 0; iter < kRefineMaxIterations; ++iter) {
    double max_move = 0.0;
    for (int n = CablePath::kFirstInterior; n <= CablePath::kLastInterior; ++n) {
      const Vec3 updated =
          refine_node_contact(pts[n - 1], centers[n], pts[n + 1], pulley_radius);
      max_move = std::max(max_move, norm(updated - pts[n]));
      pts[n] = updated;
    }
    if (max_move < kRefineTolM) return make_cable_path(pts);
  }
  fail(ErrorCode::NoConvergence, "contact-point refinement did not converge in " +
                                     std::to_string(kRefineMaxIterations) + " iterations");
}

}  // namespace ergo
