#pragma once

#include <array>
#include <optional>
#include <string>

namespace ergo {

// Marker roles the analysis needs. Cable path roles come first, in path order.
enum class Role {
  B, P1, P2, P3, F, FSC,            // exposed cable path, proximal to distal
  TU1, TU2, TU3, TU4,               // torso quadrilateral, perimeter order
  C1, C2,                           // cuff chord endpoints
  FrameOrigin, FrameA, FrameB,      // clavicle-anchored local frame
  Shoulder, Elbow,                  // humerus segment
};

inline constexpr int kRoleCount = 17;
inline constexpr std::array<Role, 6> kCableRoles = {Role::B,  Role::P1, Role::P2,
                                                    Role::P3, Role::F,  Role::FSC};

const char* role_key(Role r);  // JSON key, e.g. "frame_origin"

enum class TensionSource { Proximal, Distal, Blend };

// Analysis configuration (JSON document, SI units, unknown keys rejected).
struct SuitConfig {
  std::array<std::string, kRoleCount> labels{};  // marker label per role

  double pulley_base_area_m2 = 0.0;                       // shared A_base
  std::optional<std::array<double, 3>> per_pulley_area_m2;  // optional override
  double cuff_arc_length_m = 0.0;
  double unpowered_tension_threshold_n = 5.0;
  int max_gap_fill_frames = 10;
  double torque_step_nm = 0.3;
  double torque_max_nm = 4.2;
  std::optional<double> pulley_radius_m;  // enables contact-point refinement

  TensionSource tension_source = TensionSource::Proximal;
  double tension_blend = 0.5;  // blend weight on distal when tension_source == Blend

  const std::string& label(Role r) const {
    return labels[static_cast<int>(r)];
  }
  // Base area under pulley p (0..2).
  double pulley_area(int p) const {
    return per_pulley_area_m2 ? (*per_pulley_area_m2)[static_cast<std::size_t>(p)]
                              : pulley_base_area_m2;
  }
};

SuitConfig load_suit_config(const std::string& path);
SuitConfig parse_suit_config(const std::string& json_text);
std::string suit_config_to_json(const SuitConfig& cfg);

}  // namespace ergo
