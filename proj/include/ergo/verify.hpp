#pragma once

#include <map>
#include <string>
#include <vector>

namespace ergo {

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
};

// Noiseless datasets are checked per frame at the defaults. Noisy datasets are
// checked on per-repetition peak-plateau medians against frozen regression
// bounds: per-frame agreement is not a meaningful contract once Gaussian marker
// noise enters the geometry.
struct Tolerances {
  enum class Mode { PerFrame, PeakMedian };
  Mode mode = Mode::PerFrame;
  Tolerance fallback;
  std::map<std::string, Tolerance> per_quantity;

  Tolerance get(const std::string& quantity) const {
    auto it = per_quantity.find(quantity);
    return it == per_quantity.end() ? fallback : it->second;
  }
};

Tolerances noiseless_tolerances();
Tolerances noisy_tolerances();  // frozen after the initial Monte-Carlo run
Tolerances load_tolerances(const std::string& path);

struct CheckRow {
  std::string quantity;
  double worst_abs_err = 0.0;
  double allowed_at_worst = 0.0;
  bool pass = true;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckRow> rows;
  bool pass = true;
  std::size_t frames = 0;
};

// Re-runs the analysis on a generated dataset directory and compares every
// recovered series (wrap angles, node forces, pressures, torso ratio, cuff R
// and dV, elevation) plus the trial segmentation against ground_truth.json.
// tolerances_path may be empty: defaults are chosen from the dataset's declared
// noise amplitudes.
VerifyReport verify_dataset(const std::string& dataset_dir,
                            const std::string& tolerances_path);

}  // namespace ergo
