#include "ergo/config.hpp"

#include <set>

#include <json.hpp>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

using json = nlohmann::ordered_json;

const char* role_key(Role r) {
  switch (r) {
    case Role::B: return "B";
    case Role::P1: return "P1";
    case Role::P2: return "P2";
    case Role::P3: return "P3";
    case Role::F: return "F";
    case Role::FSC: return "FSC";
    case Role::TU1: return "TU1";
    case Role::TU2: return "TU2";
    case Role::TU3: return "TU3";
    case Role::TU4: return "TU4";
    case Role::C1: return "C1";
    case Role::C2: return "C2";
    case Role::FrameOrigin: return "frame_origin";
    case Role::FrameA: return "frame_a";
    case Role::FrameB: return "frame_b";
    case Role::Shoulder: return "shoulder";
    case Role::Elbow: return "elbow";
  }
  return "?";
}

namespace {

double require_positive(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::ConfigError, std::string("missing key ") + key);
  if (!j[key].is_number()) fail(ErrorCode::ConfigError, std::string(key) + " must be a number");
  const double v = j[key].get<double>();
  if (!(v > 0.0)) fail(ErrorCode::ConfigError, std::string(key) + " must be > 0");
  return v;
}

}  // namespace

SuitConfig parse_suit_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::ConfigError, "config root must be a JSON object");

  static const std::set<std::string> known = {
      "markers",
      "pulley_base_area_m2",
      "pulley_base_area_m2_per_pulley",
      "cuff_arc_length_m",
      "unpowered_tension_threshold_n",
      "max_gap_fill_frames",
      "torque_step_nm",
      "torque_max_nm",
      "pulley_radius_m",
      "tension_source",
      "tension_blend",
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      fail(ErrorCode::ConfigError, "unknown config key: " + it.key());
  }

  SuitConfig cfg;

  if (!j.contains("markers") || !j["markers"].is_object())
    fail(ErrorCode::ConfigError, "missing \"markers\" role map");
  const json& m = j["markers"];
  std::set<std::string> seen_labels;
  std::set<std::string> known_roles;
  for (int i = 0; i < kRoleCount; ++i) {
    const Role r = static_cast<Role>(i);
    const char* key = role_key(r);
    known_roles.insert(key);
    if (!m.contains(key))
      fail(ErrorCode::ConfigError, std::string("markers map missing role ") + key);
    if (!m[key].is_string())
      fail(ErrorCode::ConfigError, std::string("marker role ") + key + " must be a string label");
    cfg.labels[i] = m[key].get<std::string>();
    if (cfg.labels[i].empty())
      fail(ErrorCode::ConfigError, std::string("marker role ") + key + " has empty label");
    if (!seen_labels.insert(cfg.labels[i]).second)
      fail(ErrorCode::ConfigError, "marker label used for two roles: " + cfg.labels[i]);
  }
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (!known_roles.count(it.key()))
      fail(ErrorCode::ConfigError, "unknown marker role: " + it.key());
  }

  cfg.pulley_base_area_m2 = require_positive(j, "pulley_base_area_m2");
  cfg.cuff_arc_length_m = require_positive(j, "cuff_arc_length_m");

  if (j.contains("pulley_base_area_m2_per_pulley")) {
    const json& a = j["pulley_base_area_m2_per_pulley"];
    if (!a.is_array() || a.size() != 3)
      fail(ErrorCode::ConfigError, "pulley_base_area_m2_per_pulley must be an array of 3 areas");
    std::array<double, 3> areas{};
    for (int i = 0; i < 3; ++i) {
      areas[i] = a[i].get<double>();
      if (!(areas[i] > 0.0))
        fail(ErrorCode::ConfigError, "per-pulley base area must be > 0");
    }
    cfg.per_pulley_area_m2 = areas;
  }

  if (j.contains("unpowered_tension_threshold_n"))
    cfg.unpowered_tension_threshold_n = j["unpowered_tension_threshold_n"].get<double>();
  if (!(cfg.unpowered_tension_threshold_n > 0.0))
    fail(ErrorCode::ConfigError, "unpowered_tension_threshold_n must be > 0");

  if (j.contains("max_gap_fill_frames")) {
    if (!j["max_gap_fill_frames"].is_number_integer())
      fail(ErrorCode::ConfigError, "max_gap_fill_frames must be an integer");
    cfg.max_gap_fill_frames = j["max_gap_fill_frames"].get<int>();
    if (cfg.max_gap_fill_frames < 0)
      fail(ErrorCode::ConfigError, "max_gap_fill_frames must be >= 0");
  }

  if (j.contains("torque_step_nm")) cfg.torque_step_nm = j["torque_step_nm"].get<double>();
  if (!(cfg.torque_step_nm > 0.0)) fail(ErrorCode::ConfigError, "torque_step_nm must be > 0");
  if (j.contains("torque_max_nm")) cfg.torque_max_nm = j["torque_max_nm"].get<double>();
  if (!(cfg.torque_max_nm > 0.0)) fail(ErrorCode::ConfigError, "torque_max_nm must be > 0");

  if (j.contains("pulley_radius_m")) {
    const double r = j["pulley_radius_m"].get<double>();
    if (!(r > 0.0)) fail(ErrorCode::ConfigError, "pulley_radius_m must be > 0");
    cfg.pulley_radius_m = r;
  }

  if (j.contains("tension_source")) {
    const std::string s = j["tension_source"].get<std::string>();
    if (s == "proximal")
      cfg.tension_source = TensionSource::Proximal;
    else if (s == "distal")
      cfg.tension_source = TensionSource::Distal;
    else if (s == "blend")
      cfg.tension_source = TensionSource::Blend;
    else
      fail(ErrorCode::ConfigError, "tension_source must be proximal|distal|blend");
  }
  if (j.contains("tension_blend")) {
    cfg.tension_blend = j["tension_blend"].get<double>();
    if (cfg.tension_blend < 0.0 || cfg.tension_blend > 1.0)
      fail(ErrorCode::ConfigError, "tension_blend must be in [0, 1]");
  }

  return cfg;
}

SuitConfig load_suit_config(const std::string& path) {
  return parse_suit_config(read_text_file(path));
}

std::string suit_config_to_json(const SuitConfig& cfg) {
  json j;
  json m;
  for (int i = 0; i < kRoleCount; ++i)
    m[role_key(static_cast<Role>(i))] = cfg.labels[i];
  j["markers"] = m;
  j["pulley_base_area_m2"] = cfg.pulley_base_area_m2;
  if (cfg.per_pulley_area_m2)
    j["pulley_base_area_m2_per_pulley"] = *cfg.per_pulley_area_m2;
  j["cuff_arc_length_m"] = cfg.cuff_arc_length_m;
  j["unpowered_tension_threshold_n"] = cfg.unpowered_tension_threshold_n;
  j["max_gap_fill_frames"] = cfg.max_gap_fill_frames;
  j["torque_step_nm"] = cfg.torque_step_nm;
  j["torque_max_nm"] = cfg.torque_max_nm;
  if (cfg.pulley_radius_m) j["pulley_radius_m"] = *cfg.pulley_radius_m;
  switch (cfg.tension_source) {
    case TensionSource::Proximal: j["tension_source"] = "proximal"; break;
    case TensionSource::Distal: j["tension_source"] = "distal"; break;
    case TensionSource::Blend: j["tension_source"] = "blend"; break;
  }
  if (cfg.tension_source == TensionSource::Blend) j["tension_blend"] = cfg.tension_blend;
  return j.dump(2) + "\n";
}

}  // namespace ergo
