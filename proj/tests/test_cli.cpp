#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "ergo/cli.hpp"
#include "ergo/io_util.hpp"
#include "ergo/synth.hpp"
#include "test_util.hpp"

using namespace ergo;
using namespace ergo::test;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

const std::string kScenarioDir = std::string(ERGO_DATA_DIR) + "/scenarios/";

struct Workspace {
  TempDir tmp;
  std::string dataset, out;

  explicit Workspace(const std::string& tag, const std::string& scenario,
                     const std::vector<double>& ramps = {2.0})
      : tmp("cli_" + tag) {
    ScenarioSpec spec = load_scenario(kScenarioDir + scenario + ".json");
    if (!ramps.empty()) spec.ramp_durations_s = ramps;
    spec.extra_markers = 0;
    dataset = (tmp.dir() / "dataset").string();
    out = (tmp.dir() / "out").string();
    generate(spec, dataset);
    // a scenario copy is part of the dataset convention
    write_text_file((fs::path(dataset) / kScenarioFile).string(), "{}");
  }

  std::string ds(const char* f) const { return (fs::path(dataset) / f).string(); }
};

json manifest_without_timestamp(const std::string& path) {
  json m = json::parse(read_text_file(path));
  m.erase("created_utc");
  return m;
}

// Panel CSVs mix numeric and string cells (series names, true/false flags).
struct PanelRows {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    REQUIRE(false);
    return 0;
  }
};

PanelRows read_panel(const std::string& path) {
  PanelRows p;
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    for (auto f : split_csv(line)) fields.emplace_back(f);
    if (first) {
      p.header = fields;
      first = false;
    } else {
      p.rows.push_back(fields);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("analyze: outputs, manifest, determinism") {
  Workspace ws("analyze", "paper-demo");
  const int rc = cmd_analyze(ws.ds(kConfigFile), ws.ds(kMarkersFile), ws.ds(kSensorsFile),
                             ws.out);
  REQUIRE(rc == 0);
  for (const char* f : {"interaction.csv", "compression.csv", "kinematics.csv",
                        "trials.json", "summary.json", "manifest.json"})
    CHECK(fs::exists(fs::path(ws.out) / f));

  // second run into a fresh directory: identical bytes except the timestamp
  const std::string out2 = (ws.tmp.dir() / "out2").string();
  REQUIRE(cmd_analyze(ws.ds(kConfigFile), ws.ds(kMarkersFile), ws.ds(kSensorsFile),
                      out2) == 0);
  for (const char* f : {"interaction.csv", "compression.csv", "kinematics.csv",
                        "trials.json", "summary.json"})
    CHECK(read_text_file((fs::path(ws.out) / f).string()) ==
          read_text_file((fs::path(out2) / f).string()));
  CHECK(manifest_without_timestamp((fs::path(ws.out) / "manifest.json").string()) ==
        manifest_without_timestamp((fs::path(out2) / "manifest.json").string()));

  const json summary = json::parse(read_text_file((fs::path(ws.out) / "summary.json").string()));
  CHECK(summary["overall"]["max_pressure_node"] == "p2");
  CHECK(summary["per_trial"].size() == 1);
  const double ratio = summary["per_trial"][0]["transmission_ratio_at_peak"].get<double>();
  CHECK(ratio == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("analyze: contract errors exit 2") {
  Workspace ws("analyze_err", "paper-demo");
  TempDir bad("cli_badfile");
  write_text_file(bad.path("empty.csv"), "");
  CHECK(cmd_analyze(ws.ds(kConfigFile), bad.path("empty.csv"), ws.ds(kSensorsFile),
                    (bad.dir() / "out").string()) == 2);
  CHECK(cmd_analyze(bad.path("missing.json"), ws.ds(kMarkersFile), ws.ds(kSensorsFile),
                    (bad.dir() / "out").string()) == 2);
}

TEST_CASE("synth + verify: exit codes") {
  TempDir tmp("cli_synth");
  const std::string dataset = (tmp.dir() / "ds").string();
  REQUIRE(cmd_synth((kScenarioDir + "constant-tension.json"), dataset) == 0);
  CHECK(fs::exists(fs::path(dataset) / kScenarioFile));
  CHECK(fs::exists(fs::path(dataset) / "manifest.json"));
  CHECK(cmd_verify(dataset, "") == 0);

  SUBCASE("corrupted ground truth exits 1") {
    json gt = json::parse(read_text_file((fs::path(dataset) / kGroundTruthFile).string()));
    auto dv = gt["cuff_dv"].get<std::vector<double>>();
    dv.back() += 0.5;
    gt["cuff_dv"] = dv;
    write_text_file((fs::path(dataset) / kGroundTruthFile).string(), gt.dump());
    CHECK(cmd_verify(dataset, "") == 1);
  }
  SUBCASE("missing ground truth exits 2") {
    fs::remove(fs::path(dataset) / kGroundTruthFile);
    CHECK(cmd_verify(dataset, "") == 2);
  }
  SUBCASE("bad scenario exits 2") {
    write_text_file(tmp.path("bad.json"), "{\"nope\": 1}");
    CHECK(cmd_synth(tmp.path("bad.json"), (tmp.dir() / "ds2").string()) == 2);
  }
}

TEST_CASE("synth: fixed seed twice produces identical dataset bytes") {
  TempDir tmp("cli_synth_det");
  const std::string a = (tmp.dir() / "a").string(), b = (tmp.dir() / "b").string();
  REQUIRE(cmd_synth(kScenarioDir + "constant-tension.json", a) == 0);
  REQUIRE(cmd_synth(kScenarioDir + "constant-tension.json", b) == 0);
  for (const char* f : {kMarkersFile, kSensorsFile, kConfigFile, kGroundTruthFile,
                        kScenarioFile})
    CHECK(read_text_file((fs::path(a) / f).string()) ==
          read_text_file((fs::path(b) / f).string()));
  CHECK(manifest_without_timestamp((fs::path(a) / "manifest.json").string()) ==
        manifest_without_timestamp((fs::path(b) / "manifest.json").string()));
}

TEST_CASE("report: panels, highlight flag, join oracle") {
  Workspace ws("report", "paper-demo", {2.0, 4.0});
  REQUIRE(cmd_analyze(ws.ds(kConfigFile), ws.ds(kMarkersFile), ws.ds(kSensorsFile),
                      ws.out) == 0);
  const std::string rep = (ws.tmp.dir() / "report").string();
  REQUIRE(cmd_report(ws.out, rep) == 0);
  for (const char* f : {"panel_pressure.csv", "panel_torso.csv", "panel_cuff.csv",
                        "panel_pressure.svg", "panel_torso.svg", "panel_cuff.svg",
                        "manifest.json"})
    CHECK(fs::exists(fs::path(rep) / f));

  const json trials = json::parse(read_text_file((fs::path(ws.out) / "trials.json").string()));
  const int median = trials["median_trial_index"].get<int>();
  CHECK(median == 0);  // lower median of {2.0, 4.0} is the first trial

  const PanelRows cuff_panel = read_panel((fs::path(rep) / "panel_cuff.csv").string());
  const CsvTable interaction = read_csv_table((fs::path(ws.out) / "interaction.csv").string());
  const CsvTable compression = read_csv_table((fs::path(ws.out) / "compression.csv").string());

  const std::size_t c_trial = cuff_panel.col("trial");
  const std::size_t c_highlight = cuff_panel.col("highlight");
  const std::size_t c_frame = cuff_panel.col("frame");
  const std::size_t c_distal = cuff_panel.col("distal_n");
  const std::size_t c_pct = cuff_panel.col("cuff_reduction_pct");
  const auto& distal = interaction.col("distal_n");
  const auto& dv = compression.col("cuff_dv");
  REQUIRE(!cuff_panel.rows.empty());
  for (const auto& row : cuff_panel.rows) {
    const auto k = static_cast<std::size_t>(std::stoul(row[c_frame]));
    // row-for-row join with the analyze outputs
    CHECK(*parse_double(row[c_distal]) == distal[k]);
    CHECK(*parse_double(row[c_pct]) == doctest::Approx(dv[k] * 100.0).epsilon(1e-12));
    const bool is_median = std::stoi(row[c_trial]) == median;
    CHECK(row[c_highlight] == (is_median ? "true" : "false"));
  }

  SUBCASE("missing inputs exit 2") {
    CHECK(cmd_report((ws.tmp.dir() / "nowhere").string(), rep) == 2);
  }
}

TEST_CASE("report: single trial is its own median") {
  Workspace ws("report_single", "paper-demo", {3.0});
  REQUIRE(cmd_analyze(ws.ds(kConfigFile), ws.ds(kMarkersFile), ws.ds(kSensorsFile),
                      ws.out) == 0);
  const json trials = json::parse(read_text_file((fs::path(ws.out) / "trials.json").string()));
  CHECK(trials["median_trial_index"].get<int>() == 0);
  const std::string rep = (ws.tmp.dir() / "report").string();
  REQUIRE(cmd_report(ws.out, rep) == 0);
  const PanelRows panel = read_panel((fs::path(rep) / "panel_torso.csv").string());
  const std::size_t c_highlight = panel.col("highlight");
  REQUIRE(!panel.rows.empty());
  for (const auto& row : panel.rows) CHECK(row[c_highlight] == "true");
}
