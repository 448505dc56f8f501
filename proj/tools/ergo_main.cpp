#include <string>

#include <CLI11.hpp>

#include "ergo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Suit-body interaction analysis for cable-driven shoulder-assist suits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ergo::kToolVersion));

  std::string config_path, markers_path, sensors_path, out_dir;
  std::string scenario_path, dataset_dir, tolerances_path, results_dir;

  auto* analyze = app.add_subcommand(
      "analyze", "Run the estimation pipeline on a marker/sensor recording");
  analyze->add_option("--config", config_path, "Suit configuration JSON")->required();
  analyze->add_option("--markers", markers_path, "Marker trajectory CSV")->required();
  analyze->add_option("--sensors", sensors_path, "Tension/torque CSV")->required();
  analyze->add_option("--out", out_dir, "Output directory")->required();

  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic dataset with ground truth from a scenario");
  synth->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  synth->add_option("--out", out_dir, "Output dataset directory")->required();

  auto* verify = app.add_subcommand(
      "verify", "Check recovered series against a dataset's ground truth");
  verify->add_option("dataset_dir", dataset_dir, "Generated dataset directory")
      ->required();
  verify->add_option("--tolerances", tolerances_path, "Tolerance overrides JSON");

  auto* report = app.add_subcommand(
      "report", "Emit plot-ready panel CSVs and SVGs from analyze outputs");
  report->add_option("results_dir", results_dir, "analyze output directory")->required();
  report->add_option("--out", out_dir, "Report output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed())
    return ergo::cmd_analyze(config_path, markers_path, sensors_path, out_dir);
  if (synth->parsed()) return ergo::cmd_synth(scenario_path, out_dir);
  if (verify->parsed()) return ergo::cmd_verify(dataset_dir, tolerances_path);
  if (report->parsed()) return ergo::cmd_report(results_dir, out_dir);
  return 2;
}
