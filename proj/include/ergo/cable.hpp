#pragma once

#include <array>

#include "ergo/config.hpp"
#include "ergo/core.hpp"
#include "ergo/ingest.hpp"

namespace ergo {

// Exposed cable polyline B -> P1 -> P2 -> P3 -> F -> FSC for one frame.
// Interior nodes (indices 1..4) are the three pulleys and the funnel.
struct CablePath {
  std::array<Vec3, 6> contact_points{};
  std::array<Vec3, 5> segment_unit{};  // segment_unit[i]: point i toward point i+1
  std::array<double, 4> wrap_rad{};    // deflection at P1, P2, P3, F

  static constexpr int kPoints = 6;
  static constexpr int kFirstInterior = 1;
  static constexpr int kLastInterior = 4;
};

inline constexpr const char* kCableNodeNames[6] = {"B", "P1", "P2", "P3", "F", "FSC"};

// Recompute unit vectors and wrap angles from the contact points.
CablePath make_cable_path(const std::array<Vec3, 6>& contact_points);

CablePath build_path(const MarkerDataset& markers, const SuitConfig& cfg,
                     std::size_t frame_index);

// Single-node tangent construction: for a pulley of radius r centered at
// `center`, with the adjacent contact points at `prev` and `next`, returns the
// midpoint of the chord between the two tangent points on the bend side,
// computed in the plane of the three points. An exactly straight node has no
// bend side and stays at `center`.
Vec3 refine_node_contact(const Vec3& prev, const Vec3& center, const Vec3& next,
                         double pulley_radius);

// Replace each interior contact point (marker = pulley center) by the midpoint of
// the tangent-arc chord for a pulley of the given radius, iterated to a fixed
// point across the nodes. The default point-contact path is the
// pulley_radius -> 0 limit.
CablePath refine_contact_points(const CablePath& path, double pulley_radius);

}  // namespace ergo
