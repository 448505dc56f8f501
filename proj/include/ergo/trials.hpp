#pragma once

#include <cstddef>
#include <vector>

#include "ergo/core.hpp"

namespace ergo {

// One trapezoidal torque excursion: leave zero, dwell at the peak plateau,
// return to zero. Frames are indices into the synchronized time base; the
// window [start_frame, end_frame] covers the samples above the zero level.
struct Repetition {
  std::size_t start_frame = 0;
  std::size_t peak_frame = 0;      // first frame of the peak plateau
  std::size_t peak_end_frame = 0;  // last frame of the peak plateau
  std::size_t end_frame = 0;
  double ramp_duration_s = 0.0;    // ascent: start_frame -> peak_frame
};

struct Trial {
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  double ramp_duration_s = 0.0;  // mean over the trial's repetitions
  std::vector<Repetition> repetitions;
};

struct TrialSegmentation {
  std::vector<Trial> trials;
  int median_trial_index = -1;  // by ramp duration, lower median for even counts
};

// Segment a protocol recording from the motor torque command. A repetition is
// zero plateau -> peak plateau (at torque_max, +/- half a step) -> zero plateau;
// three consecutive repetitions with matching ramp rate (+/-10%) form a trial.
TrialSegmentation segment(const std::vector<double>& time,
                          const std::vector<double>& torque_cmd, double torque_step_nm,
                          double torque_max_nm);

// Loading/unloading loop metrics for y against x over one repetition window.
struct HysteresisMetrics {
  double area_abs = 0.0;   // |shoelace area| of the closed loop, x-unit * y-unit
  int orientation = 0;     // sign of the signed area; 0 for a retraced curve
  std::vector<double> x_grid;           // 100 evenly spaced points over the x-range
  std::vector<double> ascending_mean;   // NaN where the branch does not reach
  std::vector<double> descending_mean;
};

inline constexpr std::size_t kHysteresisGridPoints = 100;

// Window is [begin, end) into x/y; branches split at the max-x sample.
HysteresisMetrics hysteresis(const std::vector<double>& x, const std::vector<double>& y,
                             std::size_t begin, std::size_t end);

}  // namespace ergo
