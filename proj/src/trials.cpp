#include "ergo/trials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

TrialSegmentation segment(const std::vector<double>& time,
                          const std::vector<double>& torque_cmd, double torque_step_nm,
                          double torque_max_nm) {
  if (time.size() != torque_cmd.size())
    fail(ErrorCode::FormatError, "torque series length mismatch");
  if (!(torque_step_nm > 0.0) || !(torque_max_nm > 0.0))
    fail(ErrorCode::ProtocolMismatch, "torque_step and torque_max must be > 0");

  const std::size_t n = time.size();
  const double zero_level = 0.5 * torque_step_nm;   // below: at rest
  const double peak_band = 0.5 * torque_step_nm;    // peak plateau tolerance

  // Excursions: maximal runs above the zero level, bracketed by rest samples.
  std::vector<Repetition> reps;
  std::size_t i = 0;
  while (i < n) {
    if (torque_cmd[i] < zero_level) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < n && torque_cmd[i] >= zero_level) ++i;
    const std::size_t end = i - 1;  // inclusive
    if (start == 0 || i == n)
      fail(ErrorCode::ProtocolMismatch,
           "torque excursion at frames [" + std::to_string(start) + ", " +
               std::to_string(end) + "] is not bracketed by zero plateaus");

    double peak = 0.0;
    for (std::size_t k = start; k <= end; ++k) peak = std::max(peak, torque_cmd[k]);
    if (std::abs(peak - torque_max_nm) > peak_band)
      fail(ErrorCode::ProtocolMismatch,
           "excursion peak " + format_double(peak) + " Nm deviates from torque_max " +
               format_double(torque_max_nm) + " Nm by more than half a step");

    // The peak plateau must be one contiguous run (trapezoid, not multi-modal).
    std::size_t peak_first = n, peak_last = 0;
    bool in_run = false, seen_run = false;
    for (std::size_t k = start; k <= end; ++k) {
      const bool at_peak = std::abs(torque_cmd[k] - torque_max_nm) <= peak_band;
      if (at_peak) {
        if (!in_run) {
          if (seen_run)
            fail(ErrorCode::ProtocolMismatch,
                 "excursion has more than one peak plateau (frame " + std::to_string(k) +
                     ")");
          peak_first = k;
          in_run = seen_run = true;
        }
        peak_last = k;
      } else {
        in_run = false;
      }
    }

    Repetition rep;
    rep.start_frame = start;
    rep.end_frame = end;
    rep.peak_frame = peak_first;
    rep.peak_end_frame = peak_last;
    rep.ramp_duration_s = time[peak_first] - time[start];
    reps.push_back(rep);
  }

  TrialSegmentation seg;
  if (reps.empty()) return seg;

  if (reps.size() % 3 != 0)
    fail(ErrorCode::ProtocolMismatch, std::to_string(reps.size()) +
                                          " repetitions found; protocol trials hold "
                                          "exactly 3");

  for (std::size_t t = 0; t < reps.size() / 3; ++t) {
    Trial trial;
    trial.repetitions = {reps[t * 3], reps[t * 3 + 1], reps[t * 3 + 2]};
    trial.start_frame = trial.repetitions.front().start_frame;
    trial.end_frame = trial.repetitions.back().end_frame;
    double sum = 0.0;
    for (const auto& r : trial.repetitions) sum += r.ramp_duration_s;
    trial.ramp_duration_s = sum / 3.0;
    for (const auto& r : trial.repetitions) {
      if (std::abs(r.ramp_duration_s - trial.ramp_duration_s) >
          0.10 * trial.ramp_duration_s)
        fail(ErrorCode::ProtocolMismatch,
             "repetition ramp durations within trial " + std::to_string(t) +
                 " differ by more than 10%");
    }
    seg.trials.push_back(std::move(trial));
  }

  // Median trial by ramp duration; lower median for even counts.
  std::vector<std::size_t> order(seg.trials.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return seg.trials[a].ramp_duration_s < seg.trials[b].ramp_duration_s;
  });
  seg.median_trial_index = static_cast<int>(order[(order.size() - 1) / 2]);
  return seg;
}

HysteresisMetrics hysteresis(const std::vector<double>& x, const std::vector<double>& y,
                             std::size_t begin, std::size_t end) {
  if (x.size() != y.size()) fail(ErrorCode::FormatError, "x/y length mismatch");
  if (end > x.size() || begin >= end)
    fail(ErrorCode::OutOfRange, "hysteresis window out of range");
  const std::size_t n = end - begin;
  if (n < 10)
    fail(ErrorCode::WindowTooShort,
         "hysteresis window has " + std::to_string(n) + " samples, need >= 10");

  HysteresisMetrics m;

  // Shoelace area of the loop closed from the last sample back to the first.
  double twice_area = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = begin + k;
    const std::size_t b = begin + (k + 1) % n;
    twice_area += x[a] * y[b] - x[b] * y[a];
  }
  const double signed_area = 0.5 * twice_area;
  m.area_abs = std::abs(signed_area);

  double x_lo = x[begin], x_hi = x[begin];
  double y_lo = y[begin], y_hi = y[begin];
  std::size_t split = begin;  // sample of maximum x
  for (std::size_t k = begin; k < end; ++k) {
    if (x[k] > x[split]) split = k;
    x_lo = std::min(x_lo, x[k]);
    x_hi = std::max(x_hi, x[k]);
    y_lo = std::min(y_lo, y[k]);
    y_hi = std::max(y_hi, y[k]);
  }
  const double scale = std::max((x_hi - x_lo) * (y_hi - y_lo),
                                std::numeric_limits<double>::min());
  m.orientation = (m.area_abs <= 1e-12 * scale) ? 0 : (signed_area > 0.0 ? 1 : -1);

  // Branch mean curves: mean y over all crossings of each grid x by the branch
  // polyline. NaN where a branch never reaches that x.
  m.x_grid.resize(kHysteresisGridPoints);
  for (std::size_t g = 0; g < kHysteresisGridPoints; ++g)
    m.x_grid[g] = x_lo + (x_hi - x_lo) * static_cast<double>(g) /
                             static_cast<double>(kHysteresisGridPoints - 1);

  auto branch_mean = [&](std::size_t from, std::size_t to) {  // inclusive sample range
    std::vector<double> out(kHysteresisGridPoints,
                            std::numeric_limits<double>::quiet_NaN());
    for (std::size_t g = 0; g < kHysteresisGridPoints; ++g) {
      const double gx = m.x_grid[g];
      double sum = 0.0;
      int hits = 0;
      for (std::size_t k = from; k < to; ++k) {
        const double x0 = x[k], x1 = x[k + 1];
        if ((gx < std::min(x0, x1)) || (gx > std::max(x0, x1))) continue;
        if (x0 == x1) continue;  // vertical in x: no unique crossing
        const double u = (gx - x0) / (x1 - x0);
        sum += lerp(y[k], y[k + 1], u);
        ++hits;
      }
      if (from == to && x[from] == gx) {  // single-sample branch
        sum += y[from];
        ++hits;
      }
      if (hits > 0) out[g] = sum / hits;
    }
    return out;
  };

  m.ascending_mean = branch_mean(begin, split);
  m.descending_mean = branch_mean(split, end - 1);
  return m;
}

}  // namespace ergo
