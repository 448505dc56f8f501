#include "ergo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "ergo/cable.hpp"
#include "ergo/errors.hpp"
#include "ergo/ingest.hpp"
#include "ergo/interaction.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDegToRad = M_PI / 180.0;

// Deterministic Gaussian stream: mt19937_64 is fully specified by the standard
// and Box-Muller keeps the draws platform-independent, so a fixed seed yields
// byte-identical datasets everywhere.
class GaussianRng {
public:
  explicit GaussianRng(std::uint64_t seed) : state_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(state_() >> 11) * 0x1.0p-53;
  }

  double normal(double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2) * sigma;
  }

private:
  std::mt19937_64 state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Vec3 get_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    fail(ErrorCode::InvalidSpec, where + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      fail(ErrorCode::InvalidSpec, "unknown key " + where + "." + it.key());
}

struct Segment {
  double t0, t1, level;
};

// Stepped trapezoid schedule: rest, ascent in torque_step increments over
// ramp_s, hold at torque_max, mirrored descent; three repetitions per trial,
// one trailing rest after the last.
std::vector<Segment> build_schedule(const ScenarioSpec& spec, int* steps_out) {
  const double step = spec.torque_step_nm;
  const double max = spec.torque_max_nm;
  const long long steps = std::llround(max / step);
  if (steps < 2 || std::abs(static_cast<double>(steps) * step - max) > 1e-9)
    fail(ErrorCode::InvalidSpec, "torque_max_nm must be an integer multiple of torque_step_nm");
  *steps_out = static_cast<int>(steps);

  std::vector<Segment> segs;
  double t = 0.0;
  for (double ramp : spec.ramp_durations_s) {
    if (!(ramp > 0.0)) fail(ErrorCode::InvalidSpec, "ramp durations must be > 0");
    const double dwell = ramp / static_cast<double>(steps);
    for (int rep = 0; rep < 3; ++rep) {
      segs.push_back({t, t + spec.rest_s, 0.0});
      t += spec.rest_s;
      for (long long k = 1; k <= steps; ++k) {
        segs.push_back({t, t + dwell, static_cast<double>(k) * step});
        t += dwell;
      }
      segs.push_back({t, t + spec.peak_hold_s, max});
      t += spec.peak_hold_s;
      for (long long k = steps - 1; k >= 0; --k) {
        segs.push_back({t, t + dwell, static_cast<double>(k) * step});
        t += dwell;
      }
    }
  }
  segs.push_back({t, t + spec.rest_s, 0.0});
  return segs;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidSpec, std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::InvalidSpec, "scenario root must be an object");
  reject_unknown(j,
                 {"name", "seed", "sample_rate_hz", "protocol", "tension", "noise",
                  "geometry", "profiles", "extra_markers", "analysis"},
                 "scenario");

  ScenarioSpec s;
  if (j.contains("name")) s.name = j["name"].get<std::string>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("sample_rate_hz")) s.sample_rate_hz = j["sample_rate_hz"].get<double>();
  if (!(s.sample_rate_hz > 0.0)) fail(ErrorCode::InvalidSpec, "sample_rate_hz must be > 0");

  if (j.contains("protocol")) {
    const json& p = j["protocol"];
    reject_unknown(p, {"ramp_durations_s", "torque_step_nm", "torque_max_nm", "rest_s",
                       "peak_hold_s"},
                   "protocol");
    if (p.contains("ramp_durations_s"))
      s.ramp_durations_s = p["ramp_durations_s"].get<std::vector<double>>();
    if (p.contains("torque_step_nm")) s.torque_step_nm = p["torque_step_nm"].get<double>();
    if (p.contains("torque_max_nm")) s.torque_max_nm = p["torque_max_nm"].get<double>();
    if (p.contains("rest_s")) s.rest_s = p["rest_s"].get<double>();
    if (p.contains("peak_hold_s")) s.peak_hold_s = p["peak_hold_s"].get<double>();
    if (!(s.rest_s > 0.0) || !(s.peak_hold_s > 0.0))
      fail(ErrorCode::InvalidSpec, "rest_s and peak_hold_s must be > 0");
  }

  if (j.contains("tension")) {
    const json& t = j["tension"];
    reject_unknown(t, {"per_torque_n_per_nm", "distal_ratio", "pretension_n",
                       "pretension_start_s"},
                   "tension");
    if (t.contains("per_torque_n_per_nm"))
      s.tension_per_torque = t["per_torque_n_per_nm"].get<double>();
    if (t.contains("distal_ratio")) s.distal_ratio = t["distal_ratio"].get<double>();
    if (t.contains("pretension_n")) s.pretension_n = t["pretension_n"].get<double>();
    if (t.contains("pretension_start_s"))
      s.pretension_start_s = t["pretension_start_s"].get<double>();
    if (s.tension_per_torque < 0.0 || s.distal_ratio < 0.0 || s.pretension_n < 0.0)
      fail(ErrorCode::InvalidSpec, "tension parameters must be >= 0");
  }

  if (j.contains("noise")) {
    const json& nz = j["noise"];
    reject_unknown(nz, {"marker_mm", "sensor_n"}, "noise");
    if (nz.contains("marker_mm")) s.noise_marker_mm = nz["marker_mm"].get<double>();
    if (nz.contains("sensor_n")) s.noise_sensor_n = nz["sensor_n"].get<double>();
    if (s.noise_marker_mm < 0.0 || s.noise_sensor_n < 0.0)
      fail(ErrorCode::InvalidSpec, "noise amplitudes must be >= 0");
  }

  if (!j.contains("geometry")) fail(ErrorCode::InvalidSpec, "scenario needs geometry");
  {
    const json& g = j["geometry"];
    reject_unknown(g, {"cable", "sway", "frame", "shoulder", "arm_length_m", "torso",
                       "cuff"},
                   "geometry");
    if (!g.contains("cable")) fail(ErrorCode::InvalidSpec, "geometry needs cable points");
    const json& c = g["cable"];
    reject_unknown(c, {"B", "P1", "P2", "P3", "F", "FSC"}, "geometry.cable");
    for (int i = 0; i < 6; ++i) {
      const char* nm = kCableNodeNames[i];
      if (!c.contains(nm)) fail(ErrorCode::InvalidSpec, std::string("cable missing ") + nm);
      s.cable[static_cast<std::size_t>(i)] = get_vec3(c[nm], std::string("cable.") + nm);
    }
    if (g.contains("sway")) {
      const json& sw = g["sway"];
      for (auto it = sw.begin(); it != sw.end(); ++it) {
        int node = -1;
        for (int i = 0; i < 6; ++i)
          if (it.key() == kCableNodeNames[i]) node = i;
        if (node < 0) fail(ErrorCode::InvalidSpec, "sway key must be a cable node name");
        const json& e = it.value();
        reject_unknown(e, {"axis", "amplitude_m", "period_s"}, "sway." + it.key());
        ScenarioSpec::Sway sway;
        sway.node = node;
        sway.axis = get_vec3(e.at("axis"), "sway.axis");
        sway.amplitude_m = e.at("amplitude_m").get<double>();
        sway.period_s = e.at("period_s").get<double>();
        if (!(sway.period_s > 0.0)) fail(ErrorCode::InvalidSpec, "sway period must be > 0");
        s.sways.push_back(sway);
      }
    }
    if (!g.contains("frame")) fail(ErrorCode::InvalidSpec, "geometry needs frame markers");
    const json& f = g["frame"];
    reject_unknown(f, {"origin", "a", "b"}, "geometry.frame");
    s.frame_origin = get_vec3(f.at("origin"), "frame.origin");
    s.frame_a = get_vec3(f.at("a"), "frame.a");
    s.frame_b = get_vec3(f.at("b"), "frame.b");
    s.shoulder = get_vec3(g.at("shoulder"), "geometry.shoulder");
    if (g.contains("arm_length_m")) s.arm_length_m = g["arm_length_m"].get<double>();
    if (!(s.arm_length_m > 0.01))
      fail(ErrorCode::InvalidSpec, "arm_length_m must exceed 0.01");

    if (!g.contains("torso")) fail(ErrorCode::InvalidSpec, "geometry needs torso");
    const json& to = g["torso"];
    reject_unknown(to, {"center", "half_width_m", "half_height_m"}, "geometry.torso");
    s.torso_center = get_vec3(to.at("center"), "torso.center");
    if (to.contains("half_width_m")) s.torso_half_width_m = to["half_width_m"].get<double>();
    if (to.contains("half_height_m"))
      s.torso_half_height_m = to["half_height_m"].get<double>();
    if (!(s.torso_half_width_m > 0.0) || !(s.torso_half_height_m > 0.0))
      fail(ErrorCode::InvalidSpec, "torso half sizes must be > 0");

    if (!g.contains("cuff")) fail(ErrorCode::InvalidSpec, "geometry needs cuff");
    const json& cu = g["cuff"];
    reject_unknown(cu, {"center", "chord_axis", "radius0_m", "theta0_rad"},
                   "geometry.cuff");
    s.cuff_center = get_vec3(cu.at("center"), "cuff.center");
    if (cu.contains("chord_axis"))
      s.cuff_chord_axis = get_vec3(cu["chord_axis"], "cuff.chord_axis");
    if (cu.contains("radius0_m")) s.cuff_radius0_m = cu["radius0_m"].get<double>();
    if (cu.contains("theta0_rad")) s.cuff_theta0_rad = cu["theta0_rad"].get<double>();
    if (!(s.cuff_radius0_m > 0.0))
      fail(ErrorCode::InvalidSpec, "cuff radius0_m must be > 0");
    if (!(s.cuff_theta0_rad > 0.01) || !(s.cuff_theta0_rad < M_PI - 0.01))
      fail(ErrorCode::InvalidSpec, "cuff theta0_rad must be inside (0.01, pi-0.01)");
  }

  if (j.contains("profiles")) {
    const json& p = j["profiles"];
    reject_unknown(p,
                   {"elevation_max_deg", "plane_start_deg", "plane_end_deg",
                    "torso_reduction_at_peak", "cuff_dv_at_peak"},
                   "profiles");
    if (p.contains("elevation_max_deg"))
      s.elevation_max_deg = p["elevation_max_deg"].get<double>();
    if (p.contains("plane_start_deg")) s.plane_start_deg = p["plane_start_deg"].get<double>();
    if (p.contains("plane_end_deg")) s.plane_end_deg = p["plane_end_deg"].get<double>();
    if (p.contains("torso_reduction_at_peak"))
      s.torso_reduction_at_peak = p["torso_reduction_at_peak"].get<double>();
    if (p.contains("cuff_dv_at_peak")) s.cuff_dv_at_peak = p["cuff_dv_at_peak"].get<double>();
    if (s.elevation_max_deg < 0.0 || s.elevation_max_deg > 179.0)
      fail(ErrorCode::InvalidSpec, "elevation_max_deg must be in [0, 179]");
    if (s.torso_reduction_at_peak < 0.0 || s.torso_reduction_at_peak >= 1.0 ||
        s.cuff_dv_at_peak < 0.0 || s.cuff_dv_at_peak >= 1.0)
      fail(ErrorCode::InvalidSpec, "peak reductions must be in [0, 1)");
  }

  if (j.contains("extra_markers")) {
    s.extra_markers = j["extra_markers"].get<int>();
    if (s.extra_markers < 0 || s.extra_markers > 99)
      fail(ErrorCode::InvalidSpec, "extra_markers must be in [0, 99]");
  }

  // Analysis config emitted next to the dataset. Labels are the canonical role
  // names; physical constants follow from the scripted geometry.
  static const char* kLabels[kRoleCount] = {"B",   "P1",  "P2",  "P3", "F",  "FSC",
                                            "TU1", "TU2", "TU3", "TU4", "C1", "C2",
                                            "FRO", "FRA", "FRB", "SH",  "EL"};
  for (int i = 0; i < kRoleCount; ++i) s.analysis.labels[static_cast<std::size_t>(i)] = kLabels[i];
  s.analysis.torque_step_nm = s.torque_step_nm;
  s.analysis.torque_max_nm = s.torque_max_nm;
  s.analysis.cuff_arc_length_m =
      s.cuff_radius0_m * (2.0 * M_PI - 2.0 * s.cuff_theta0_rad);
  s.analysis.pulley_base_area_m2 = 0.002;

  if (j.contains("analysis")) {
    const json& a = j["analysis"];
    reject_unknown(a,
                   {"unpowered_threshold_n", "max_gap_fill_frames", "tension_source",
                    "tension_blend", "pulley_base_area_m2",
                    "pulley_base_area_m2_per_pulley", "pulley_radius_m"},
                   "analysis");
    if (a.contains("unpowered_threshold_n"))
      s.analysis.unpowered_tension_threshold_n = a["unpowered_threshold_n"].get<double>();
    if (a.contains("max_gap_fill_frames"))
      s.analysis.max_gap_fill_frames = a["max_gap_fill_frames"].get<int>();
    if (a.contains("tension_source")) {
      const std::string src = a["tension_source"].get<std::string>();
      if (src == "proximal")
        s.analysis.tension_source = TensionSource::Proximal;
      else if (src == "distal")
        s.analysis.tension_source = TensionSource::Distal;
      else if (src == "blend")
        s.analysis.tension_source = TensionSource::Blend;
      else
        fail(ErrorCode::InvalidSpec, "analysis.tension_source must be proximal|distal|blend");
    }
    if (a.contains("tension_blend"))
      s.analysis.tension_blend = a["tension_blend"].get<double>();
    if (a.contains("pulley_base_area_m2"))
      s.analysis.pulley_base_area_m2 = a["pulley_base_area_m2"].get<double>();
    if (a.contains("pulley_base_area_m2_per_pulley")) {
      const json& arr = a["pulley_base_area_m2_per_pulley"];
      if (!arr.is_array() || arr.size() != 3)
        fail(ErrorCode::InvalidSpec, "per-pulley areas must be an array of 3");
      std::array<double, 3> areas{};
      for (int i = 0; i < 3; ++i) areas[static_cast<std::size_t>(i)] = arr[i].get<double>();
      s.analysis.per_pulley_area_m2 = areas;
    }
    if (a.contains("pulley_radius_m"))
      s.analysis.pulley_radius_m = a["pulley_radius_m"].get<double>();
  }
  if (!(s.analysis.pulley_base_area_m2 > 0.0))
    fail(ErrorCode::InvalidSpec, "pulley_base_area_m2 must be > 0");

  return s;
}

ScenarioSpec load_scenario(const std::string& path) {
  return parse_scenario(read_text_file(path));
}

void generate(const ScenarioSpec& spec, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  int steps = 0;
  const std::vector<Segment> schedule = build_schedule(spec, &steps);
  const double total_s = schedule.back().t1;
  const double rate = spec.sample_rate_hz;
  const std::size_t frames = static_cast<std::size_t>(std::llround(total_s * rate)) + 1;

  // Torque command per frame from the schedule.
  std::vector<double> time(frames), torque(frames);
  std::size_t si = 0;
  for (std::size_t k = 0; k < frames; ++k) {
    const double t = static_cast<double>(k) / rate;
    while (si + 1 < schedule.size() && t >= schedule[si].t1) ++si;
    time[k] = t;
    torque[k] = schedule[si].level;
  }

  // Exact tensions and the response driver f = proximal / peak proximal.
  std::vector<double> prox(frames), dist(frames), f(frames);
  double prox_peak = 0.0;
  for (std::size_t k = 0; k < frames; ++k) {
    const double pre = (time[k] >= spec.pretension_start_s) ? spec.pretension_n : 0.0;
    prox[k] = pre + spec.tension_per_torque * torque[k];
    dist[k] = spec.distal_ratio * prox[k];
    prox_peak = std::max(prox_peak, prox[k]);
  }
  for (std::size_t k = 0; k < frames; ++k)
    f[k] = (prox_peak > 0.0) ? prox[k] / prox_peak : 0.0;

  // Baseline (unpowered) frames, same rule the analyzer applies: proximal below
  // the threshold, before the first torque step.
  const double zero_level = 0.5 * spec.torque_step_nm;
  std::size_t first_step = frames;
  for (std::size_t k = 0; k < frames; ++k)
    if (torque[k] >= zero_level) {
      first_step = k;
      break;
    }
  std::vector<std::size_t> baseline;
  for (std::size_t k = 0; k < std::min(first_step, frames); ++k)
    if (prox[k] < spec.analysis.unpowered_tension_threshold_n) baseline.push_back(k);
  if (baseline.empty())
    fail(ErrorCode::InvalidSpec, "scenario leaves no unpowered baseline frames");

  const Frame body_frame = build_frame(spec.frame_origin, spec.frame_a, spec.frame_b);
  const Vec3 chord_axis = normalized(spec.cuff_chord_axis);
  const double arc_L = spec.analysis.cuff_arc_length_m;
  const Vec3 torso_u{0.0, 1.0, 0.0};
  const Vec3 torso_v{0.0, 0.0, 1.0};

  // Marker layout: cable path, torso, cuff, frame, arm, then decoys.
  MarkerDataset markers;
  markers.time = time;
  markers.nominal_rate_hz = rate;
  for (int i = 0; i < kRoleCount; ++i)
    markers.labels.push_back(spec.analysis.labels[static_cast<std::size_t>(i)]);
  GaussianRng extra_rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<Vec3> extras;
  for (int e = 0; e < spec.extra_markers; ++e) {
    char name[16];
    std::snprintf(name, sizeof(name), "X%02d", e + 1);
    markers.labels.emplace_back(name);
    extras.push_back(spec.torso_center + Vec3{extra_rng.uniform() - 0.5,
                                              extra_rng.uniform() - 0.5,
                                              extra_rng.uniform() - 0.5});
  }
  markers.trajectories.assign(markers.labels.size(), std::vector<Vec3>(frames));

  // Ground truth series.
  json gt;
  std::array<std::vector<double>, 4> gt_wrap, gt_force;
  std::array<std::vector<double>, 3> gt_pressure;
  std::vector<double> gt_torso_ratio(frames), gt_cuff_r(frames), gt_cuff_dv(frames),
      gt_elev(frames), torso_area(frames), cuff_r(frames);
  for (auto& v : gt_wrap) v.resize(frames);
  for (auto& v : gt_force) v.resize(frames);
  for (auto& v : gt_pressure) v.resize(frames);

  const double elev_max_rad = spec.elevation_max_deg * kDegToRad;

  for (std::size_t k = 0; k < frames; ++k) {
    // Cable nodes, with optional scripted sway.
    std::array<Vec3, 6> cable = spec.cable;
    for (const auto& sw : spec.sways) {
      const Vec3 ax = normalized(sw.axis);
      cable[static_cast<std::size_t>(sw.node)] =
          cable[static_cast<std::size_t>(sw.node)] +
          (sw.amplitude_m * std::sin(2.0 * M_PI * time[k] / sw.period_s)) * ax;
    }
    const CablePath path = make_cable_path(cable);
    const double tension = used_tension(spec.analysis, prox[k], dist[k]);
    for (int n = 0; n < 4; ++n) {
      const double wrap = path.wrap_rad[static_cast<std::size_t>(n)];
      const double force = 2.0 * tension * std::sin(0.5 * wrap);
      // Self-consistency: the closed form must agree with the unit-vector sum.
      const Vec3 fv = tension * path.segment_unit[static_cast<std::size_t>(n) + 1] -
                      tension * path.segment_unit[static_cast<std::size_t>(n)];
      if (std::abs(norm(fv) - force) > 1e-12 * std::max(1.0, force))
        fail(ErrorCode::NumericalFailure, "ground-truth force identity violated");
      gt_wrap[static_cast<std::size_t>(n)][k] = wrap;
      gt_force[static_cast<std::size_t>(n)][k] = force;
      if (n < 3)
        gt_pressure[static_cast<std::size_t>(n)][k] =
            force / spec.analysis.pulley_area(n);
    }
    for (int i = 0; i < 6; ++i)
      markers.trajectories[static_cast<std::size_t>(i)][k] =
          cable[static_cast<std::size_t>(i)];

    // Torso rectangle scaled about its center.
    const double scale = std::sqrt(1.0 - f[k] * spec.torso_reduction_at_peak);
    const double w = spec.torso_half_width_m, h = spec.torso_half_height_m;
    const Vec3 tu[4] = {
        spec.torso_center + scale * (w * torso_u + h * torso_v),
        spec.torso_center + scale * (-1.0 * w * torso_u + h * torso_v),
        spec.torso_center + scale * (-1.0 * w * torso_u - h * torso_v),
        spec.torso_center + scale * (w * torso_u - h * torso_v),
    };
    for (int i = 0; i < 4; ++i)
      markers.trajectories[static_cast<std::size_t>(6 + i)][k] = tu[i];
    torso_area[k] = 4.0 * w * h * scale * scale;

    // Cuff chord from the scripted radius at constant arc length.
    const double R = spec.cuff_radius0_m * std::sqrt(1.0 - f[k] * spec.cuff_dv_at_peak);
    const double theta = M_PI - arc_L / (2.0 * R);
    if (!(theta > 1e-3) || !(theta < M_PI - 1e-3))
      fail(ErrorCode::InvalidSpec, "cuff profile leaves the open-cylinder regime");
    const double chord = 2.0 * R * std::sin(theta);
    markers.trajectories[10][k] = spec.cuff_center + (0.5 * chord) * chord_axis;
    markers.trajectories[11][k] = spec.cuff_center - (0.5 * chord) * chord_axis;
    cuff_r[k] = R;

    // Frame and arm.
    markers.trajectories[12][k] = spec.frame_origin;
    markers.trajectories[13][k] = spec.frame_a;
    markers.trajectories[14][k] = spec.frame_b;
    markers.trajectories[15][k] = spec.shoulder;
    const double elev = f[k] * elev_max_rad;
    const double plane =
        (spec.plane_start_deg + f[k] * (spec.plane_end_deg - spec.plane_start_deg)) *
        kDegToRad;
    const Vec3 dir = std::sin(elev) * std::cos(plane) * body_frame.axes[0] +
                     std::sin(elev) * std::sin(plane) * body_frame.axes[1] -
                     std::cos(elev) * body_frame.axes[2];
    markers.trajectories[16][k] = spec.shoulder + spec.arm_length_m * dir;
    gt_elev[k] = elev / kDegToRad;

    for (std::size_t e = 0; e < extras.size(); ++e)
      markers.trajectories[17 + e][k] = extras[e];
  }

  // Normalize torso and cuff against the unpowered baseline, the same statistic
  // the analyzer computes.
  double area_base = 0.0, r_base = 0.0;
  for (std::size_t k : baseline) {
    area_base += torso_area[k];
    r_base += cuff_r[k];
  }
  area_base /= static_cast<double>(baseline.size());
  r_base /= static_cast<double>(baseline.size());
  for (std::size_t k = 0; k < frames; ++k) {
    gt_torso_ratio[k] = torso_area[k] / area_base;
    gt_cuff_r[k] = cuff_r[k];
    const double q = cuff_r[k] / r_base;
    gt_cuff_dv[k] = 1.0 - q * q;
  }

  // Repetition/trial boundaries from the noiseless torque command.
  json gt_trials = json::array();
  {
    std::vector<std::array<std::size_t, 4>> reps;  // start, peak, peak_end, end
    std::size_t k = 0;
    while (k < frames) {
      if (torque[k] < zero_level) {
        ++k;
        continue;
      }
      const std::size_t start = k;
      while (k < frames && torque[k] >= zero_level) ++k;
      const std::size_t end = k - 1;
      std::size_t peak_first = 0, peak_last = 0;
      bool found = false;
      for (std::size_t q = start; q <= end; ++q) {
        if (std::abs(torque[q] - spec.torque_max_nm) <= zero_level) {
          if (!found) peak_first = q;
          peak_last = q;
          found = true;
        }
      }
      reps.push_back({start, peak_first, peak_last, end});
    }
    std::vector<double> trial_ramps;
    for (std::size_t t = 0; t * 3 + 2 < reps.size(); ++t) {
      json trial;
      trial["start_frame"] = reps[t * 3][0];
      trial["end_frame"] = reps[t * 3 + 2][3];
      double ramp_sum = 0.0;
      json jreps = json::array();
      for (int r = 0; r < 3; ++r) {
        const auto& rep = reps[t * 3 + static_cast<std::size_t>(r)];
        json jr;
        jr["start"] = rep[0];
        jr["peak"] = rep[1];
        jr["peak_end"] = rep[2];
        jr["end"] = rep[3];
        ramp_sum += time[rep[1]] - time[rep[0]];
        jreps.push_back(jr);
      }
      trial["ramp_duration_s"] = ramp_sum / 3.0;
      trial["repetitions"] = jreps;
      trial_ramps.push_back(ramp_sum / 3.0);
      gt_trials.push_back(trial);
    }
    int median_index = -1;
    if (!trial_ramps.empty()) {
      std::vector<std::size_t> order(trial_ramps.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return trial_ramps[a] < trial_ramps[b];
      });
      median_index = static_cast<int>(order[(order.size() - 1) / 2]);
    }
    gt["trials"] = gt_trials;
    gt["median_trial_index"] = median_index;
  }

  // Measurement noise is applied after ground truth is frozen.
  SensorDataset sensors;
  sensors.time = time;
  sensors.proximal = prox;
  sensors.distal = dist;
  sensors.torque = torque;
  if (spec.noise_marker_mm > 0.0 || spec.noise_sensor_n > 0.0) {
    GaussianRng rng(spec.seed);
    const double sigma_m = spec.noise_marker_mm / 1000.0;
    if (sigma_m > 0.0) {
      for (std::size_t k = 0; k < frames; ++k)
        for (auto& traj : markers.trajectories) {
          traj[k].x += rng.normal(sigma_m);
          traj[k].y += rng.normal(sigma_m);
          traj[k].z += rng.normal(sigma_m);
        }
    }
    if (spec.noise_sensor_n > 0.0) {
      for (std::size_t k = 0; k < frames; ++k) {
        sensors.proximal[k] =
            std::max(0.0, sensors.proximal[k] + rng.normal(spec.noise_sensor_n));
        sensors.distal[k] =
            std::max(0.0, sensors.distal[k] + rng.normal(spec.noise_sensor_n));
      }
    }
  }

  gt["scenario"] = spec.name;
  gt["seed"] = spec.seed;
  gt["rate_hz"] = rate;
  gt["frames"] = frames;
  gt["noise_marker_mm"] = spec.noise_marker_mm;
  gt["noise_sensor_n"] = spec.noise_sensor_n;
  static const char* kNodeKeys[4] = {"p1", "p2", "p3", "f"};
  json jwrap, jforce, jpress;
  for (int n = 0; n < 4; ++n) {
    jwrap[kNodeKeys[n]] = gt_wrap[static_cast<std::size_t>(n)];
    jforce[kNodeKeys[n]] = gt_force[static_cast<std::size_t>(n)];
    if (n < 3) jpress[kNodeKeys[n]] = gt_pressure[static_cast<std::size_t>(n)];
  }
  gt["wrap_rad"] = jwrap;
  gt["force_n"] = jforce;
  gt["pressure_pa"] = jpress;
  gt["torso_ratio"] = gt_torso_ratio;
  gt["cuff_r_m"] = gt_cuff_r;
  gt["cuff_dv"] = gt_cuff_dv;
  gt["elevation_deg"] = gt_elev;

  const fs::path dir(out_dir);
  write_text_file((dir / kMarkersFile).string(), markers_to_csv(markers));
  write_text_file((dir / kSensorsFile).string(), sensors_to_csv(sensors));
  write_text_file((dir / kConfigFile).string(), suit_config_to_json(spec.analysis));
  write_text_file((dir / kGroundTruthFile).string(), gt.dump() + "\n");
}

}  // namespace ergo
