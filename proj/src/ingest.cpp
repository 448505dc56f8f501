#include "ergo/ingest.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

namespace {

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

// Iterate lines without copying; tolerate trailing newline and CR-LF input is
// rejected (formats are specified LF, '.' decimal).
struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line_no = 0;

  bool next(std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    ++line_no;
    return true;
  }
};

double parse_time_field(std::string_view f, int line_no) {
  auto v = parse_double(f);
  if (!v || !std::isfinite(*v))
    fail(ErrorCode::FormatError,
         "bad time value '" + std::string(f) + "' at line " + std::to_string(line_no));
  return *v;
}

void check_time_step(std::vector<double>& time, int line_no) {
  if (time.size() >= 2 && !(time.back() > time[time.size() - 2]))
    fail(ErrorCode::NonMonotonic,
         "timestamps not strictly increasing at line " + std::to_string(line_no));
}

// Fill NaN runs in a single coordinate channel by linear interpolation between the
// bracketing valid samples. Runs longer than max_fill, or touching either end of
// the recording, are fatal.
int fill_gaps(std::vector<double>& v, const std::vector<double>& t, int max_fill,
              const std::string& label) {
  int filled = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    if (!std::isnan(v[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < v.size() && std::isnan(v[j])) ++j;
    const std::size_t run = j - i;
    if (i == 0 || j == v.size())
      fail(ErrorCode::GapTooLong, "marker " + label + " has a gap touching the recording " +
                                      (i == 0 ? "start" : "end") +
                                      "; cannot interpolate");
    if (run > static_cast<std::size_t>(max_fill))
      fail(ErrorCode::GapTooLong, "marker " + label + " gap of " + std::to_string(run) +
                                      " frames exceeds max_gap_fill_frames=" +
                                      std::to_string(max_fill));
    const double t0 = t[i - 1], t1 = t[j];
    const double v0 = v[i - 1], v1 = v[j];
    for (std::size_t k = i; k < j; ++k) {
      const double u = (t[k] - t0) / (t1 - t0);
      v[k] = lerp(v0, v1, u);
    }
    filled += static_cast<int>(run);
    i = j;
  }
  return filled;
}

}  // namespace

int MarkerDataset::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

const std::vector<Vec3>& MarkerDataset::trajectory(const std::string& label) const {
  const int idx = label_index(label);
  if (idx < 0) fail(ErrorCode::MissingLabel, "no trajectory for label " + label);
  return trajectories[static_cast<std::size_t>(idx)];
}

Vec3 MarkerDataset::at(Role role, const SuitConfig& cfg, std::size_t frame) const {
  return trajectory(cfg.label(role))[frame];
}

MarkerDataset parse_markers(const std::string& path, const SuitConfig& cfg) {
  const std::string text = read_text_file(path);
  LineReader lines{text};

  std::string_view header;
  if (!lines.next(header) || header.empty())
    fail(ErrorCode::FormatError, "marker file is empty: " + path);

  const auto cols = split_csv(header);
  if (cols.empty() || cols[0] != "time_s")
    fail(ErrorCode::FormatError, "marker header must start with time_s");
  if ((cols.size() - 1) % 3 != 0)
    fail(ErrorCode::FormatError, "marker header needs 3 columns (_x_mm,_y_mm,_z_mm) per label");

  MarkerDataset ds;
  const std::size_t n_labels = (cols.size() - 1) / 3;
  static const char* suffix[3] = {"_x_mm", "_y_mm", "_z_mm"};
  for (std::size_t li = 0; li < n_labels; ++li) {
    std::string label;
    for (int a = 0; a < 3; ++a) {
      const std::string_view col = cols[1 + li * 3 + static_cast<std::size_t>(a)];
      const std::string_view want(suffix[a]);
      if (col.size() <= want.size() || col.substr(col.size() - want.size()) != want)
        fail(ErrorCode::FormatError,
             "marker column '" + std::string(col) + "' must end in " + std::string(want));
      const std::string base(col.substr(0, col.size() - want.size()));
      if (a == 0)
        label = base;
      else if (base != label)
        fail(ErrorCode::FormatError, "marker columns for label '" + label +
                                         "' are not grouped x,y,z (found '" +
                                         std::string(col) + "')");
    }
    ds.labels.push_back(label);
  }

  // Per-coordinate channels; gaps kept as NaN until the fill pass.
  std::vector<std::vector<double>> chan(n_labels * 3);

  std::string_view line;
  while (lines.next(line)) {
    if (line.empty() && lines.pos >= text.size()) break;  // trailing newline
    const auto fields = split_csv(line);
    if (fields.size() != cols.size())
      fail(ErrorCode::FormatError, "row arity " + std::to_string(fields.size()) +
                                       " != header arity " + std::to_string(cols.size()) +
                                       " at line " + std::to_string(lines.line_no));
    ds.time.push_back(parse_time_field(fields[0], lines.line_no));
    check_time_step(ds.time, lines.line_no);
    for (std::size_t c = 0; c < n_labels * 3; ++c) {
      const std::string_view f = fields[c + 1];
      if (f.empty()) {
        chan[c].push_back(kGap);
        continue;
      }
      const auto v = parse_double(f);
      if (!v || !std::isfinite(*v))
        fail(ErrorCode::FormatError, "bad marker value '" + std::string(f) + "' at line " +
                                         std::to_string(lines.line_no));
      chan[c].push_back(*v);
    }
  }
  if (ds.time.size() < 2)
    fail(ErrorCode::FormatError, "marker file needs at least 2 frames");

  for (int i = 0; i < kRoleCount; ++i) {
    const std::string& want = cfg.label(static_cast<Role>(i));
    if (ds.label_index(want) < 0)
      fail(ErrorCode::MissingLabel, "config role " + std::string(role_key(static_cast<Role>(i))) +
                                        " maps to label '" + want +
                                        "' which is not in the marker file");
  }

  // A frame is a gap for a marker when any of its three cells is empty.
  for (std::size_t li = 0; li < n_labels; ++li) {
    for (std::size_t k = 0; k < ds.time.size(); ++k) {
      const bool gap = std::isnan(chan[li * 3][k]) || std::isnan(chan[li * 3 + 1][k]) ||
                       std::isnan(chan[li * 3 + 2][k]);
      if (gap)
        chan[li * 3][k] = chan[li * 3 + 1][k] = chan[li * 3 + 2][k] = kGap;
    }
    for (int a = 0; a < 3; ++a)
      ds.filled_gaps += fill_gaps(chan[li * 3 + static_cast<std::size_t>(a)], ds.time,
                                  cfg.max_gap_fill_frames, ds.labels[li]);
  }
  ds.filled_gaps /= 3;  // counted per coordinate, report per marker sample

  ds.trajectories.resize(n_labels);
  for (std::size_t li = 0; li < n_labels; ++li) {
    auto& traj = ds.trajectories[li];
    traj.resize(ds.time.size());
    for (std::size_t k = 0; k < ds.time.size(); ++k) {
      // mm -> m, the single unit conversion boundary.
      traj[k] = Vec3{chan[li * 3][k] / 1000.0, chan[li * 3 + 1][k] / 1000.0,
                     chan[li * 3 + 2][k] / 1000.0};
    }
  }

  const double span = ds.time.back() - ds.time.front();
  ds.nominal_rate_hz = static_cast<double>(ds.time.size() - 1) / span;
  return ds;
}

SensorDataset parse_sensors(const std::string& path, const SuitConfig& cfg) {
  const std::string text = read_text_file(path);
  LineReader lines{text};

  std::string_view header;
  if (!lines.next(header) || header.empty())
    fail(ErrorCode::FormatError, "sensor file is empty: " + path);
  if (header != "time_s,proximal_n,distal_n,torque_nm")
    fail(ErrorCode::FormatError,
         "sensor header must be time_s,proximal_n,distal_n,torque_nm");

  SensorDataset ds;
  const double torque_hi = cfg.torque_max_nm + 0.5 * cfg.torque_step_nm;

  std::string_view line;
  while (lines.next(line)) {
    if (line.empty() && lines.pos >= text.size()) break;
    const auto fields = split_csv(line);
    if (fields.size() != 4)
      fail(ErrorCode::FormatError,
           "sensor row needs 4 fields at line " + std::to_string(lines.line_no));
    ds.time.push_back(parse_time_field(fields[0], lines.line_no));
    check_time_step(ds.time, lines.line_no);

    double vals[3];
    for (int c = 0; c < 3; ++c) {
      const auto v = parse_double(fields[c + 1]);
      if (!v || !std::isfinite(*v))
        fail(ErrorCode::FormatError, "bad sensor value '" + std::string(fields[c + 1]) +
                                         "' at line " + std::to_string(lines.line_no));
      vals[c] = *v;
    }
    for (int c = 0; c < 2; ++c) {
      if (vals[c] < -kTensionNoiseFloorN)
        fail(ErrorCode::ValueOutOfRange,
             "tension " + format_double(vals[c]) + " N below the -" +
                 format_double(kTensionNoiseFloorN) + " N noise floor at line " +
                 std::to_string(lines.line_no));
      if (vals[c] < 0.0) {
        vals[c] = 0.0;
        ++ds.clamped_samples;
      }
    }
    if (vals[2] < -1e-9 || vals[2] > torque_hi)
      fail(ErrorCode::ValueOutOfRange,
           "torque command " + format_double(vals[2]) + " Nm outside [0, " +
               format_double(torque_hi) + "] at line " + std::to_string(lines.line_no));
    ds.proximal.push_back(vals[0]);
    ds.distal.push_back(vals[1]);
    ds.torque.push_back(vals[2]);
  }
  if (ds.time.size() < 2)
    fail(ErrorCode::FormatError, "sensor file needs at least 2 samples");
  return ds;
}

SensorDataset synchronize(const MarkerDataset& markers, const SensorDataset& sensors) {
  if (markers.time.empty()) fail(ErrorCode::FormatError, "no marker frames");
  if (markers.time.front() < sensors.time.front() ||
      markers.time.back() > sensors.time.back())
    fail(ErrorCode::OutOfRange,
         "mocap span [" + format_double(markers.time.front()) + ", " +
             format_double(markers.time.back()) + "] s exceeds sensor span [" +
             format_double(sensors.time.front()) + ", " +
             format_double(sensors.time.back()) + "] s");

  SensorDataset out;
  out.time = markers.time;
  out.clamped_samples = sensors.clamped_samples;
  TimeSeries<double> s{sensors.time, {}};
  s.values = sensors.proximal;
  out.proximal = resample(s, markers.time).values;
  s.values = sensors.distal;
  out.distal = resample(s, markers.time).values;
  s.values = sensors.torque;
  out.torque = resample(s, markers.time).values;
  return out;
}

std::string markers_to_csv(const MarkerDataset& ds) {
  std::string out = "time_s";
  for (const auto& label : ds.labels)
    out += "," + label + "_x_mm," + label + "_y_mm," + label + "_z_mm";
  out += "\n";
  for (std::size_t k = 0; k < ds.time.size(); ++k) {
    out += format_double(ds.time[k]);
    for (std::size_t li = 0; li < ds.labels.size(); ++li) {
      const Vec3& p = ds.trajectories[li][k];
      out += "," + format_double(p.x * 1000.0) + "," + format_double(p.y * 1000.0) + "," +
             format_double(p.z * 1000.0);
    }
    out += "\n";
  }
  return out;
}

std::string sensors_to_csv(const SensorDataset& ds) {
  std::string out = "time_s,proximal_n,distal_n,torque_nm\n";
  for (std::size_t k = 0; k < ds.time.size(); ++k) {
    out += format_double(ds.time[k]) + "," + format_double(ds.proximal[k]) + "," +
           format_double(ds.distal[k]) + "," + format_double(ds.torque[k]) + "\n";
  }
  return out;
}

}  // namespace ergo
