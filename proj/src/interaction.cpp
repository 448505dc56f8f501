#include "ergo/interaction.hpp"

#include <limits>
#include <string>

#include "ergo/errors.hpp"

namespace ergo {

Vec3 node_force(const CablePath& path, double tension_n, int node_index) {
  if (node_index < CablePath::kFirstInterior || node_index > CablePath::kLastInterior)
    fail(ErrorCode::NotInteriorNode,
         "node " + std::to_string(node_index) + " has no two neighbors");
  if (tension_n < 0.0)
    fail(ErrorCode::ValueOutOfRange, "tension must be >= 0");
  // n_hat(i -> i+1) = segment_unit[i]; n_hat(i -> i-1) = -segment_unit[i-1]
  const Vec3 n_next = path.segment_unit[node_index];
  const Vec3 n_prev = -path.segment_unit[node_index - 1];
  return tension_n * n_next + tension_n * n_prev;
}

double node_pressure(double force_magnitude_n, double base_area_m2) {
  if (!(base_area_m2 > 0.0))
    fail(ErrorCode::NonPositiveArea, "pulley base area must be > 0");
  return force_magnitude_n / base_area_m2;
}

TransmissionRatio transmission_ratio(const SensorDataset& sensors,
                                     double unpowered_threshold_n) {
  TransmissionRatio out;
  out.ratio.resize(sensors.frames(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < sensors.frames(); ++k) {
    const double p = sensors.proximal[k];
    if (!(p > unpowered_threshold_n)) {
      ++out.undefined_samples;
      continue;
    }
    double r = sensors.distal[k] / p;
    if (r < 0.0) {
      r = 0.0;
      ++out.clipped_samples;
    } else if (r > 1.0 + kTransmissionEps) {
      r = 1.0 + kTransmissionEps;
      ++out.clipped_samples;
    }
    out.ratio[k] = r;
  }
  return out;
}

}  // namespace ergo
