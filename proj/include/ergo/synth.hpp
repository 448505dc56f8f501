#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergo/config.hpp"
#include "ergo/core.hpp"

namespace ergo {

// Scripted scene with analytically known geometry, tension, and body response.
// Everything the analyzer estimates is also computed here in closed form, so a
// generated dataset doubles as a ground-truth oracle for the whole pipeline.
struct ScenarioSpec {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double sample_rate_hz = 100.0;

  // Trapezoidal torque protocol: per trial, three repetitions of
  // rest -> stepped ascent over ramp_s -> peak hold -> stepped descent.
  std::vector<double> ramp_durations_s;  // one entry per trial; may be empty
  double torque_step_nm = 0.3;
  double torque_max_nm = 4.2;
  double rest_s = 1.0;
  double peak_hold_s = 1.0;

  double tension_per_torque = 200.0 / 4.2;  // N per Nm at the proximal sensor
  double distal_ratio = 0.6;                // transmission to the cuff
  double pretension_n = 0.0;                // constant offset switched on at...
  double pretension_start_s = 0.0;

  double noise_marker_mm = 0.0;  // Gaussian std per axis
  double noise_sensor_n = 0.0;   // Gaussian std per tension sample

  std::array<Vec3, 6> cable{};  // B, P1, P2, P3, F, FSC base positions (m)
  struct Sway {                 // optional sinusoidal motion of one cable node
    int node = 0;
    Vec3 axis{0, 0, 1};
    double amplitude_m = 0.0;
    double period_s = 1.0;
  };
  std::vector<Sway> sways;

  Vec3 frame_origin, frame_a, frame_b;
  Vec3 shoulder;
  double arm_length_m = 0.3;

  Vec3 torso_center;
  double torso_half_width_m = 0.17;
  double torso_half_height_m = 0.12;

  Vec3 cuff_center;
  Vec3 cuff_chord_axis{0, 1, 0};
  double cuff_radius0_m = 0.045;
  double cuff_theta0_rad = 0.6;

  // Body response, driven by the proximal-tension fraction f in [0, 1].
  double elevation_max_deg = 70.0;
  double plane_start_deg = 0.0;
  double plane_end_deg = 0.0;
  double torso_reduction_at_peak = 0.03;  // 1 - area ratio at f = 1
  double cuff_dv_at_peak = 0.08;          // dV at f = 1

  int extra_markers = 0;  // static decoy markers, not referenced by any role

  SuitConfig analysis;  // emitted alongside the dataset as config.json
};

ScenarioSpec load_scenario(const std::string& path);
ScenarioSpec parse_scenario(const std::string& json_text);

// Writes markers.csv, sensors.csv, config.json, ground_truth.json, scenario.json
// into out_dir (created if needed). Deterministic for a fixed spec and seed.
void generate(const ScenarioSpec& spec, const std::string& out_dir);

inline constexpr const char* kMarkersFile = "markers.csv";
inline constexpr const char* kSensorsFile = "sensors.csv";
inline constexpr const char* kConfigFile = "config.json";
inline constexpr const char* kGroundTruthFile = "ground_truth.json";
inline constexpr const char* kScenarioFile = "scenario.json";

}  // namespace ergo
