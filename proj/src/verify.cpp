#include "ergo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"
#include "ergo/pipeline.hpp"
#include "ergo/synth.hpp"

namespace ergo {

using json = nlohmann::ordered_json;

Tolerances noiseless_tolerances() {
  Tolerances t;
  t.mode = Tolerances::Mode::PerFrame;
  t.fallback = {1e-9, 1e-12};
  return t;
}

Tolerances noisy_tolerances() {
  Tolerances t;
  t.mode = Tolerances::Mode::PeakMedian;
  t.fallback = {0.02, 1e-6};
  t.per_quantity = {
      {"wrap_p1", {0.02, 2e-3}},    {"wrap_p2", {0.02, 2e-3}},
      {"wrap_p3", {0.02, 2e-3}},    {"wrap_f", {0.02, 2e-3}},
      {"force_p1", {0.02, 2.0}},    {"force_p2", {0.02, 2.0}},
      {"force_p3", {0.02, 2.0}},    {"force_f", {0.02, 2.0}},
      {"pressure_p1", {0.02, 500.0}}, {"pressure_p2", {0.02, 500.0}},
      {"pressure_p3", {0.02, 500.0}},
      {"torso_ratio", {0.0, 0.003}},
      {"cuff_r_m", {0.01, 1e-4}},
      {"cuff_dv", {0.0, 0.003}},
      {"elevation_deg", {0.0, 0.5}},
  };
  return t;
}

Tolerances load_tolerances(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::FormatError, std::string("tolerances file is not valid JSON: ") + e.what());
  }
  Tolerances t;
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "per_frame")
      t.mode = Tolerances::Mode::PerFrame;
    else if (m == "peak_median")
      t.mode = Tolerances::Mode::PeakMedian;
    else
      fail(ErrorCode::FormatError, "tolerances mode must be per_frame|peak_median");
  }
  auto read_tol = [](const json& e) {
    Tolerance tol;
    if (e.contains("rel")) tol.rel = e["rel"].get<double>();
    if (e.contains("abs")) tol.abs = e["abs"].get<double>();
    return tol;
  };
  if (j.contains("default")) t.fallback = read_tol(j["default"]);
  if (j.contains("quantities"))
    for (auto it = j["quantities"].begin(); it != j["quantities"].end(); ++it)
      t.per_quantity[it.key()] = read_tol(it.value());
  return t;
}

namespace {

std::vector<double> gt_series(const json& gt, const std::string& group,
                              const std::string& key) {
  const json* node = &gt;
  if (!group.empty()) {
    if (!gt.contains(group))
      fail(ErrorCode::FormatError, "ground truth missing " + group);
    node = &gt[group];
  }
  if (!node->contains(key))
    fail(ErrorCode::FormatError, "ground truth missing " + group + "." + key);
  return (*node)[key].get<std::vector<double>>();
}

double median_of(const std::vector<double>& series, std::size_t lo, std::size_t hi) {
  std::vector<double> window(series.begin() + static_cast<std::ptrdiff_t>(lo),
                             series.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  std::sort(window.begin(), window.end());
  const std::size_t n = window.size();
  return (n % 2 == 1) ? window[n / 2] : 0.5 * (window[n / 2 - 1] + window[n / 2]);
}

struct PeakWindow {
  std::size_t peak_first;
  std::size_t peak_last;
};

}  // namespace

VerifyReport verify_dataset(const std::string& dataset_dir,
                            const std::string& tolerances_path) {
  namespace fs = std::filesystem;
  const fs::path dir(dataset_dir);
  if (!fs::exists(dir / kGroundTruthFile))
    fail(ErrorCode::IoError,
         "dataset has no ground truth: " + (dir / kGroundTruthFile).string());

  const SuitConfig cfg = load_suit_config((dir / kConfigFile).string());
  const MarkerDataset markers = parse_markers((dir / kMarkersFile).string(), cfg);
  const SensorDataset sensors = parse_sensors((dir / kSensorsFile).string(), cfg);

  json gt;
  try {
    gt = json::parse(read_text_file((dir / kGroundTruthFile).string()));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::FormatError, std::string("ground truth is not valid JSON: ") + e.what());
  }

  Tolerances tol;
  if (!tolerances_path.empty()) {
    tol = load_tolerances(tolerances_path);
  } else {
    const double noise_m = gt.value("noise_marker_mm", 0.0);
    const double noise_s = gt.value("noise_sensor_n", 0.0);
    tol = (noise_m > 0.0 || noise_s > 0.0) ? noisy_tolerances() : noiseless_tolerances();
  }

  const AnalysisResult res = run_analysis(cfg, markers, sensors);

  VerifyReport report;
  report.frames = res.frames();

  struct Quantity {
    std::string name;
    const std::vector<double>* recovered;
    std::vector<double> truth;
  };
  std::vector<Quantity> quantities;
  static const char* kNodeKeys[4] = {"p1", "p2", "p3", "f"};
  for (int n = 0; n < 4; ++n) {
    quantities.push_back({std::string("wrap_") + kNodeKeys[n],
                          &res.wrap_rad[static_cast<std::size_t>(n)],
                          gt_series(gt, "wrap_rad", kNodeKeys[n])});
    quantities.push_back({std::string("force_") + kNodeKeys[n],
                          &res.force_n[static_cast<std::size_t>(n)],
                          gt_series(gt, "force_n", kNodeKeys[n])});
  }
  for (int n = 0; n < 3; ++n)
    quantities.push_back({std::string("pressure_") + kNodeKeys[n],
                          &res.pressure_pa[static_cast<std::size_t>(n)],
                          gt_series(gt, "pressure_pa", kNodeKeys[n])});
  quantities.push_back({"torso_ratio", &res.torso_ratio, gt_series(gt, "", "torso_ratio")});
  quantities.push_back({"cuff_r_m", &res.cuff_r_m, gt_series(gt, "", "cuff_r_m")});
  quantities.push_back({"cuff_dv", &res.cuff_dv, gt_series(gt, "", "cuff_dv")});
  quantities.push_back(
      {"elevation_deg", &res.elevation_deg, gt_series(gt, "", "elevation_deg")});

  // Segmentation must reproduce the scripted protocol exactly (the torque
  // command carries no noise); series checks below reuse its peak windows.
  std::vector<PeakWindow> peaks;
  {
    CheckRow row;
    row.quantity = "trial_segmentation";
    const json& trials = gt.at("trials");
    bool ok = trials.size() == res.segmentation.trials.size();
    if (!ok) row.note = "trial count mismatch";
    for (std::size_t t = 0; ok && t < trials.size(); ++t) {
      const json& jt = trials[t];
      const Trial& rt = res.segmentation.trials[t];
      ok = jt["start_frame"].get<std::size_t>() == rt.start_frame &&
           jt["end_frame"].get<std::size_t>() == rt.end_frame &&
           jt["repetitions"].size() == rt.repetitions.size();
      for (std::size_t r = 0; ok && r < rt.repetitions.size(); ++r) {
        const json& jr = jt["repetitions"][r];
        const Repetition& rr = rt.repetitions[r];
        ok = jr["start"].get<std::size_t>() == rr.start_frame &&
             jr["peak"].get<std::size_t>() == rr.peak_frame &&
             jr["end"].get<std::size_t>() == rr.end_frame;
        if (ok) peaks.push_back({rr.peak_frame, rr.peak_end_frame});
      }
      if (!ok) row.note = "boundary mismatch in trial " + std::to_string(t);
    }
    if (ok && gt.at("median_trial_index").get<int>() != res.segmentation.median_trial_index) {
      ok = false;
      row.note = "median trial index mismatch";
    }
    row.pass = ok;
    report.rows.push_back(row);
  }

  for (const auto& q : quantities) {
    CheckRow row;
    row.quantity = q.name;
    const Tolerance t = tol.get(q.name);
    if (q.truth.size() != q.recovered->size()) {
      row.pass = false;
      row.note = "length mismatch";
      report.rows.push_back(row);
      continue;
    }
    if (tol.mode == Tolerances::Mode::PerFrame) {
      for (std::size_t k = 0; k < q.truth.size(); ++k) {
        const double err = std::abs((*q.recovered)[k] - q.truth[k]);
        const double allowed = std::max(t.abs, t.rel * std::abs(q.truth[k]));
        if (err > row.worst_abs_err) {
          row.worst_abs_err = err;
          row.allowed_at_worst = allowed;
        }
        if (err > allowed) {
          row.pass = false;
          if (row.note.empty()) row.note = "frame " + std::to_string(k);
        }
      }
    } else {
      if (peaks.empty()) {
        row.pass = false;
        row.note = "no peak plateaus to compare";
      }
      for (const auto& w : peaks) {
        const double rec = median_of(*q.recovered, w.peak_first, w.peak_last);
        const double tru = median_of(q.truth, w.peak_first, w.peak_last);
        const double err = std::abs(rec - tru);
        const double allowed = std::max(t.abs, t.rel * std::abs(tru));
        if (err > row.worst_abs_err) {
          row.worst_abs_err = err;
          row.allowed_at_worst = allowed;
        }
        if (err > allowed) row.pass = false;
      }
    }
    report.rows.push_back(row);
  }

  for (const auto& row : report.rows) report.pass = report.pass && row.pass;
  return report;
}

}  // namespace ergo
