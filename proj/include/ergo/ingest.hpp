#pragma once

#include <string>
#include <vector>

#include "ergo/config.hpp"
#include "ergo/core.hpp"

namespace ergo {

// Labeled marker trajectories on one uniform time base, meters.
struct MarkerDataset {
  std::vector<double> time;                  // seconds
  std::vector<std::string> labels;           // column order of the source file
  std::vector<std::vector<Vec3>> trajectories;  // [label][frame]
  double nominal_rate_hz = 0.0;
  int filled_gaps = 0;  // samples reconstructed by interpolation

  [[nodiscard]] std::size_t frames() const { return time.size(); }
  [[nodiscard]] int label_index(const std::string& label) const;  // -1 if absent
  [[nodiscard]] const std::vector<Vec3>& trajectory(const std::string& label) const;
  [[nodiscard]] Vec3 at(Role role, const SuitConfig& cfg, std::size_t frame) const;
};

// Cable tensions and motor torque command on a shared clock.
struct SensorDataset {
  std::vector<double> time;      // seconds
  std::vector<double> proximal;  // newtons
  std::vector<double> distal;    // newtons
  std::vector<double> torque;    // newton-meters (command)
  int clamped_samples = 0;       // negative readings clamped to zero

  [[nodiscard]] std::size_t frames() const { return time.size(); }
};

inline constexpr double kTensionNoiseFloorN = 0.5;

MarkerDataset parse_markers(const std::string& path, const SuitConfig& cfg);
SensorDataset parse_sensors(const std::string& path, const SuitConfig& cfg);

// Resample all sensor channels onto the marker time base.
SensorDataset synchronize(const MarkerDataset& markers, const SensorDataset& sensors);

std::string markers_to_csv(const MarkerDataset& ds);
std::string sensors_to_csv(const SensorDataset& ds);

}  // namespace ergo
