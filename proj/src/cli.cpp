#include "ergo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"
#include "ergo/pipeline.hpp"
#include "ergo/report.hpp"
#include "ergo/synth.hpp"
#include "ergo/verify.hpp"

namespace ergo {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

void print_error_line(const std::string& code, const std::string& message) {
  json e;
  e["error"] = code;
  e["message"] = message;
  std::fprintf(stderr, "%s\n", e.dump().c_str());
}

json file_entry(const std::string& path) {
  json e;
  e["path"] = path;
  e["fnv1a64"] = fnv1a64_hex(read_text_file(path));
  return e;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& inputs, const json& warnings) {
  json m;
  m["tool"] = "ergo";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["created_utc"] = utc_timestamp_now();
  m["inputs"] = inputs;
  m["warnings"] = warnings;
  write_text_file((out_dir / "manifest.json").string(), m.dump(2) + "\n");
}

std::string csv_cell(double v) {
  return std::isnan(v) ? std::string() : format_double(v);
}

void write_analyze_outputs(const fs::path& out, const MarkerDataset& markers,
                           const AnalysisResult& res) {
  const std::size_t n = res.frames();

  std::string ia =
      "time_s,proximal_n,distal_n,torque_nm,tension_used_n,transmission_ratio,"
      "wrap_p1_rad,wrap_p2_rad,wrap_p3_rad,wrap_f_rad,"
      "force_p1_n,force_p2_n,force_p3_n,force_f_n,"
      "pressure_p1_pa,pressure_p2_pa,pressure_p3_pa,"
      "funnel_fx_n,funnel_fy_n,funnel_fz_n\n";
  for (std::size_t k = 0; k < n; ++k) {
    ia += format_double(res.sensors.time[k]) + "," + format_double(res.sensors.proximal[k]) +
          "," + format_double(res.sensors.distal[k]) + "," +
          format_double(res.sensors.torque[k]) + "," + format_double(res.tension_used_n[k]) +
          "," + csv_cell(res.transmission.ratio[k]);
    for (int i = 0; i < 4; ++i) ia += "," + format_double(res.wrap_rad[i][k]);
    for (int i = 0; i < 4; ++i) ia += "," + format_double(res.force_n[i][k]);
    for (int i = 0; i < 3; ++i) ia += "," + format_double(res.pressure_pa[i][k]);
    const Vec3& ff = res.funnel_force_n[k];
    ia += "," + format_double(ff.x) + "," + format_double(ff.y) + "," +
          format_double(ff.z) + "\n";
  }
  write_text_file((out / "interaction.csv").string(), ia);

  std::string co =
      "time_s,torso_area_m2,torso_ratio,torso_planarity_m2,cuff_l_m,cuff_r_m,cuff_dv\n";
  for (std::size_t k = 0; k < n; ++k) {
    co += format_double(res.sensors.time[k]) + "," + format_double(res.torso_area_m2[k]) +
          "," + format_double(res.torso_ratio[k]) + "," +
          format_double(res.torso_planarity_m2[k]) + "," + format_double(res.cuff_l_m[k]) +
          "," + format_double(res.cuff_r_m[k]) + "," + format_double(res.cuff_dv[k]) + "\n";
  }
  write_text_file((out / "compression.csv").string(), co);

  std::string ki = "time_s,elevation_deg,plane_deg,plane_undefined\n";
  for (std::size_t k = 0; k < n; ++k) {
    ki += format_double(res.sensors.time[k]) + "," + format_double(res.elevation_deg[k]) +
          "," + format_double(res.plane_deg[k]) + "," +
          std::to_string(static_cast<int>(res.plane_undefined[k])) + "\n";
  }
  write_text_file((out / "kinematics.csv").string(), ki);

  json jt;
  json trials = json::array();
  for (std::size_t t = 0; t < res.segmentation.trials.size(); ++t) {
    const Trial& trial = res.segmentation.trials[t];
    json e;
    e["index"] = t;
    e["start_frame"] = trial.start_frame;
    e["end_frame"] = trial.end_frame;
    e["ramp_duration_s"] = trial.ramp_duration_s;
    json reps = json::array();
    for (const Repetition& r : trial.repetitions) {
      json jr;
      jr["start"] = r.start_frame;
      jr["peak"] = r.peak_frame;
      jr["peak_end"] = r.peak_end_frame;
      jr["end"] = r.end_frame;
      jr["ramp_duration_s"] = r.ramp_duration_s;
      reps.push_back(jr);
    }
    e["repetitions"] = reps;
    trials.push_back(e);
  }
  jt["trials"] = trials;
  jt["median_trial_index"] = res.segmentation.median_trial_index;
  json hyst = json::array();
  for (const auto& h : res.hysteresis) {
    json e;
    e["trial"] = h.trial;
    e["repetition"] = h.repetition;
    e["pair"] = h.pair;
    e["area_abs"] = h.metrics.area_abs;
    e["orientation"] = h.metrics.orientation;
    e["x_grid"] = h.metrics.x_grid;
    e["ascending_mean"] = h.metrics.ascending_mean;    // NaN -> null
    e["descending_mean"] = h.metrics.descending_mean;  // NaN -> null
    hyst.push_back(e);
  }
  jt["hysteresis"] = hyst;
  write_text_file((out / "trials.json").string(), jt.dump(2) + "\n");

  // Per-trial maxima plus overall peaks.
  static const char* kP[3] = {"p1", "p2", "p3"};
  json summary;
  summary["median_trial_index"] = res.segmentation.median_trial_index;
  json per_trial = json::array();
  for (std::size_t t = 0; t < res.segmentation.trials.size(); ++t) {
    const Trial& trial = res.segmentation.trials[t];
    json e;
    e["trial"] = t;
    e["ramp_duration_s"] = trial.ramp_duration_s;
    json mp;
    for (int i = 0; i < 3; ++i) {
      double mx = 0.0;
      for (std::size_t k = trial.start_frame; k <= trial.end_frame; ++k)
        mx = std::max(mx, res.pressure_pa[i][k]);
      mp[kP[i]] = mx;
    }
    e["max_pressure_pa"] = mp;
    double mf = 0.0, mdv = 0.0, mel = 0.0, mtr = 0.0;
    for (std::size_t k = trial.start_frame; k <= trial.end_frame; ++k) {
      mf = std::max(mf, norm(res.funnel_force_n[k]));
      mdv = std::max(mdv, res.cuff_dv[k]);
      mel = std::max(mel, res.elevation_deg[k]);
      mtr = std::max(mtr, 1.0 - res.torso_ratio[k]);
    }
    e["max_funnel_force_n"] = mf;
    e["max_torso_reduction"] = mtr;
    e["max_cuff_dv"] = mdv;
    e["max_elevation_deg"] = mel;
    double ratio_sum = 0.0;
    int ratio_count = 0;
    for (const Repetition& r : trial.repetitions)
      for (std::size_t k = r.peak_frame; k <= r.peak_end_frame; ++k)
        if (!std::isnan(res.transmission.ratio[k])) {
          ratio_sum += res.transmission.ratio[k];
          ++ratio_count;
        }
    if (ratio_count > 0)
      e["transmission_ratio_at_peak"] = ratio_sum / ratio_count;
    else
      e["transmission_ratio_at_peak"] = nullptr;
    per_trial.push_back(e);
  }
  summary["per_trial"] = per_trial;
  json overall;
  json omp;
  double best = -1.0;
  std::string best_node;
  for (int i = 0; i < 3; ++i) {
    double mx = 0.0;
    for (std::size_t k = 0; k < n; ++k) mx = std::max(mx, res.pressure_pa[i][k]);
    omp[kP[i]] = mx;
    if (mx > best) {
      best = mx;
      best_node = kP[i];
    }
  }
  overall["max_pressure_pa"] = omp;
  overall["max_pressure_node"] = best_node;
  double mf = 0.0, mdv = 0.0, mel = 0.0, mtr = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mf = std::max(mf, norm(res.funnel_force_n[k]));
    mdv = std::max(mdv, res.cuff_dv[k]);
    mel = std::max(mel, res.elevation_deg[k]);
    mtr = std::max(mtr, 1.0 - res.torso_ratio[k]);
  }
  overall["max_funnel_force_n"] = mf;
  overall["max_torso_reduction"] = mtr;
  overall["max_cuff_dv"] = mdv;
  overall["max_elevation_deg"] = mel;
  overall["frames"] = n;
  overall["baseline_frames"] = res.baseline_frames.size();
  summary["overall"] = overall;
  write_text_file((out / "summary.json").string(), summary.dump(2) + "\n");

  (void)markers;
}

int guarded(const std::string& command, int (*body)(void*), void* ctx) {
  try {
    return body(ctx);
  } catch (const Error& e) {
    print_error_line(to_string(e.code()), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_line("InternalError", std::string(command) + ": " + e.what());
    return 2;
  }
}

}  // namespace

int cmd_analyze(const std::string& config_path, const std::string& markers_path,
                const std::string& sensors_path, const std::string& out_dir) {
  struct Ctx {
    const std::string *config, *markers, *sensors, *out;
  } ctx{&config_path, &markers_path, &sensors_path, &out_dir};
  return guarded("analyze", [](void* p) {
    auto& c = *static_cast<Ctx*>(p);
    const SuitConfig cfg = load_suit_config(*c.config);
    const MarkerDataset markers = parse_markers(*c.markers, cfg);
    const SensorDataset sensors = parse_sensors(*c.sensors, cfg);
    const AnalysisResult res = run_analysis(cfg, markers, sensors);

    const fs::path out(*c.out);
    fs::create_directories(out);
    write_analyze_outputs(out, markers, res);

    json inputs;
    inputs["config"] = file_entry(*c.config);
    inputs["markers"] = file_entry(*c.markers);
    inputs["sensors"] = file_entry(*c.sensors);
    json warnings;
    warnings["filled_gaps"] = res.filled_gaps;
    warnings["clamped_tension_samples"] = res.clamped_samples;
    warnings["transmission_clipped"] = res.transmission.clipped_samples;
    warnings["transmission_undefined"] = res.transmission.undefined_samples;
    write_manifest(out, "analyze", inputs, warnings);
    return 0;
  }, &ctx);
}

int cmd_synth(const std::string& scenario_path, const std::string& out_dir) {
  struct Ctx {
    const std::string *scenario, *out;
  } ctx{&scenario_path, &out_dir};
  return guarded("synth", [](void* p) {
    auto& c = *static_cast<Ctx*>(p);
    const std::string scenario_text = read_text_file(*c.scenario);
    const ScenarioSpec spec = parse_scenario(scenario_text);
    generate(spec, *c.out);
    write_text_file((fs::path(*c.out) / kScenarioFile).string(), scenario_text);

    json inputs;
    inputs["scenario"] = file_entry(*c.scenario);
    json warnings = json::object();
    write_manifest(fs::path(*c.out), "synth", inputs, warnings);
    return 0;
  }, &ctx);
}

int cmd_verify(const std::string& dataset_dir, const std::string& tolerances_path) {
  try {
    const VerifyReport report = verify_dataset(dataset_dir, tolerances_path);
    std::printf("%-22s %13s %13s  %s\n", "quantity", "worst_err", "allowed", "status");
    for (const auto& row : report.rows) {
      std::printf("%-22s %13.6g %13.6g  %s%s%s\n", row.quantity.c_str(),
                  row.worst_abs_err, row.allowed_at_worst,
                  row.pass ? "PASS" : "FAIL", row.note.empty() ? "" : "  ",
                  row.note.c_str());
    }
    std::printf("RESULT: %s (%zu checks, %zu frames)\n", report.pass ? "PASS" : "FAIL",
                report.rows.size(), report.frames);
    return report.pass ? 0 : 1;
  } catch (const Error& e) {
    print_error_line(to_string(e.code()), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_line("InternalError", e.what());
    return 2;
  }
}

int cmd_report(const std::string& results_dir, const std::string& out_dir) {
  struct Ctx {
    const std::string *results, *out;
  } ctx{&results_dir, &out_dir};
  return guarded("report", [](void* p) {
    auto& c = *static_cast<Ctx*>(p);
    write_report(*c.results, *c.out);
    json inputs;
    for (const char* f : {"interaction.csv", "compression.csv", "kinematics.csv",
                          "trials.json"})
      inputs[f] = file_entry((fs::path(*c.results) / f).string());
    write_manifest(fs::path(*c.out), "report", inputs, json::object());
    return 0;
  }, &ctx);
}

}  // namespace ergo
