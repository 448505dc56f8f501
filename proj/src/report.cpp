#include "ergo/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

#include <json.hpp>

#include "ergo/errors.hpp"
#include "ergo/io_util.hpp"

namespace ergo {

using json = nlohmann::ordered_json;

namespace {

struct RepWindow {
  int trial;
  int rep;
  bool highlight;
  std::size_t start, end;  // inclusive
};

struct Series {
  std::string name;
  std::vector<double> x, y;
  bool highlight;
};

// Minimal static plot: framed axes, tick labels, one polyline per series.
// Highlighted series (the median trial) are drawn solid, the rest faded.
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
  const double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  const auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - y_lo) / (y_hi - y_lo) * (H - T - B); };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b"};
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(W) +
         "\" height=\"" + format_double(H) + "\" viewBox=\"0 0 " + format_double(W) +
         " " + format_double(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_double(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
  svg += "<rect x=\"" + format_double(L) + "\" y=\"" + format_double(T) + "\" width=\"" +
         format_double(W - L - R) + "\" height=\"" + format_double(H - T - B) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
    svg += "<text x=\"" + format_double(px(fx)) + "\" y=\"" + format_double(H - B + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(std::round(fx * 1000.0) / 1000.0) + "</text>\n";
    svg += "<text x=\"" + format_double(L - 8) + "\" y=\"" + format_double(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(std::round(fy * 1000.0) / 1000.0) + "</text>\n";
  }
  svg += "<text x=\"" + format_double(W / 2) + "\" y=\"" + format_double(H - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + format_double(H / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + format_double(H / 2) + ")\">" + y_label +
         "</text>\n";

  int color_idx = 0;
  for (const auto& s : series) {
    const char* color = kPalette[color_idx++ % 6];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += format_double(px(s.x[i])) + "," + format_double(py(s.y[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" +
           (s.highlight ? "2" : "1") + "\" opacity=\"" + (s.highlight ? "1.0" : "0.25") +
           "\" points=\"" + pts + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

void write_report(const std::string& results_dir, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path in(results_dir);
  for (const char* f : {"interaction.csv", "compression.csv", "kinematics.csv",
                        "trials.json"})
    if (!fs::exists(in / f))
      fail(ErrorCode::IoError, "missing analyze output " + (in / f).string());
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  const CsvTable interaction = read_csv_table((in / "interaction.csv").string());
  const CsvTable compression = read_csv_table((in / "compression.csv").string());
  const CsvTable kinematics = read_csv_table((in / "kinematics.csv").string());

  json trials;
  try {
    trials = json::parse(read_text_file((in / "trials.json").string()));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::FormatError, std::string("trials.json invalid: ") + e.what());
  }

  const int median = trials.value("median_trial_index", -1);
  std::vector<RepWindow> windows;
  for (const auto& jt : trials.at("trials")) {
    const int t = jt.at("index").get<int>();
    int r = 0;
    for (const auto& jr : jt.at("repetitions")) {
      windows.push_back({t, r++, t == median, jr.at("start").get<std::size_t>(),
                         jr.at("end").get<std::size_t>()});
    }
  }

  const auto& prox = interaction.col("proximal_n");
  const auto& dist = interaction.col("distal_n");
  const auto& elev = kinematics.col("elevation_deg");
  const auto& torso = compression.col("torso_ratio");
  const auto& dv = compression.col("cuff_dv");

  static const char* kPanelASeries[4] = {"pressure_p1_pa", "pressure_p2_pa",
                                         "pressure_p3_pa", "force_f_n"};

  // Long-format panels, one row per frame in a repetition window.
  std::string a = "trial,repetition,highlight,frame,series,proximal_n,value\n";
  std::string b =
      "trial,repetition,highlight,frame,elevation_deg,proximal_n,torso_reduction_pct\n";
  std::string c =
      "trial,repetition,highlight,frame,distal_n,proximal_n,cuff_reduction_pct\n";
  for (const auto& w : windows) {
    const std::string prefix0 = std::to_string(w.trial) + "," + std::to_string(w.rep) +
                                "," + (w.highlight ? "true" : "false") + ",";
    for (std::size_t k = w.start; k <= w.end; ++k) {
      const std::string fk = std::to_string(k) + ",";
      for (const char* series : kPanelASeries)
        a += prefix0 + fk + series + "," + format_double(prox[k]) + "," +
             format_double(interaction.col(series)[k]) + "\n";
      b += prefix0 + fk + format_double(elev[k]) + "," + format_double(prox[k]) + "," +
           format_double((1.0 - torso[k]) * 100.0) + "\n";
      c += prefix0 + fk + format_double(dist[k]) + "," + format_double(prox[k]) + "," +
           format_double(dv[k] * 100.0) + "\n";
    }
  }
  write_text_file((out / "panel_pressure.csv").string(), a);
  write_text_file((out / "panel_torso.csv").string(), b);
  write_text_file((out / "panel_cuff.csv").string(), c);

  // SVGs: one polyline per trial and series, median trial emphasized.
  auto per_trial = [&](const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& name) {
    std::vector<Series> out_series;
    int last_trial = -1;
    for (const auto& w : windows) {
      if (w.trial != last_trial) {
        out_series.push_back({name + " trial " + std::to_string(w.trial), {}, {},
                              w.highlight});
        last_trial = w.trial;
      }
      for (std::size_t k = w.start; k <= w.end; ++k) {
        out_series.back().x.push_back(xs[k]);
        out_series.back().y.push_back(ys[k]);
      }
    }
    return out_series;
  };

  std::vector<Series> sa;
  for (const char* series : {"pressure_p1_pa", "pressure_p2_pa", "pressure_p3_pa"}) {
    auto s = per_trial(prox, interaction.col(series), series);
    sa.insert(sa.end(), s.begin(), s.end());
  }
  write_text_file((out / "panel_pressure.svg").string(),
                  render_svg("Pulley pressure vs proximal tension", "proximal tension [N]",
                             "pressure [Pa]", sa));

  std::vector<double> torso_pct(torso.size()), dv_pct(dv.size());
  for (std::size_t k = 0; k < torso.size(); ++k) torso_pct[k] = (1.0 - torso[k]) * 100.0;
  for (std::size_t k = 0; k < dv.size(); ++k) dv_pct[k] = dv[k] * 100.0;
  write_text_file((out / "panel_torso.svg").string(),
                  render_svg("Torso area reduction vs proximal tension",
                             "proximal tension [N]", "reduction [%]",
                             per_trial(prox, torso_pct, "torso")));
  write_text_file((out / "panel_cuff.svg").string(),
                  render_svg("Cuff constriction vs distal tension", "distal tension [N]",
                             "volume loss [%]", per_trial(dist, dv_pct, "cuff")));
}

}  // namespace ergo
