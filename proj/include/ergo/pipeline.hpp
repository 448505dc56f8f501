#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ergo/cable.hpp"
#include "ergo/config.hpp"
#include "ergo/ingest.hpp"
#include "ergo/interaction.hpp"
#include "ergo/kinematics.hpp"
#include "ergo/trials.hpp"

namespace ergo {

// Everything the estimators produce for one recording, on the mocap time base.
// Interior-node arrays are ordered P1, P2, P3, F.
struct AnalysisResult {
  SensorDataset sensors;  // synchronized to the mocap timeline

  std::array<std::vector<double>, 4> wrap_rad;
  std::array<std::vector<double>, 4> force_n;      // |net force| per node
  std::array<std::vector<double>, 3> pressure_pa;  // pulleys only
  std::vector<Vec3> funnel_force_n;                // force vector at F
  std::vector<double> tension_used_n;
  TransmissionRatio transmission;

  std::vector<double> torso_area_m2;
  std::vector<double> torso_ratio;
  std::vector<double> torso_planarity_m2;
  std::vector<double> cuff_l_m;
  std::vector<double> cuff_r_m;
  std::vector<double> cuff_dv;

  std::vector<double> elevation_deg;
  std::vector<double> plane_deg;
  std::vector<std::uint8_t> plane_undefined;

  std::vector<std::size_t> baseline_frames;  // unpowered frames used to normalize

  TrialSegmentation segmentation;
  struct HysteresisEntry {
    int trial = 0;
    int repetition = 0;
    std::string pair;
    HysteresisMetrics metrics;
  };
  std::vector<HysteresisEntry> hysteresis;

  int filled_gaps = 0;
  int clamped_samples = 0;

  [[nodiscard]] std::size_t frames() const { return sensors.frames(); }
};

// Full estimation pass: synchronize, per-frame geometry/force/compression/pose,
// protocol segmentation, per-repetition hysteresis loops.
AnalysisResult run_analysis(const SuitConfig& cfg, const MarkerDataset& markers,
                            const SensorDataset& raw_sensors);

}  // namespace ergo
