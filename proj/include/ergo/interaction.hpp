#pragma once

#include <cmath>
#include <vector>

#include "ergo/cable.hpp"
#include "ergo/core.hpp"
#include "ergo/ingest.hpp"

namespace ergo {

// Net force the cable applies at an interior path node, assuming frictionless
// redirection (equal tension in both adjacent segments):
//   F = T * n_hat(node -> next) + T * n_hat(node -> prev)
Vec3 node_force(const CablePath& path, double tension_n, int node_index);

double node_pressure(double force_magnitude_n, double base_area_m2);

// Tension applied to the exposed cable path for body-load estimation. Proximal
// is the frictionless-assumption default; distal or a blend quantify how much
// the proximal choice overestimates.
inline double used_tension(const SuitConfig& cfg, double proximal_n, double distal_n) {
  switch (cfg.tension_source) {
    case TensionSource::Proximal: return proximal_n;
    case TensionSource::Distal: return distal_n;
    case TensionSource::Blend:
      return (1.0 - cfg.tension_blend) * proximal_n + cfg.tension_blend * distal_n;
  }
  return proximal_n;
}

// Per-frame distal/proximal tension ratio. Samples with proximal tension at or
// below the unpowered threshold are undefined (NaN). Values are clipped to
// [0, 1 + eps] with eps = 0.05 for sensor noise; clips are counted.
struct TransmissionRatio {
  std::vector<double> ratio;  // NaN where undefined
  int undefined_samples = 0;
  int clipped_samples = 0;
};

TransmissionRatio transmission_ratio(const SensorDataset& sensors,
                                     double unpowered_threshold_n);

inline constexpr double kTransmissionEps = 0.05;

}  // namespace ergo
