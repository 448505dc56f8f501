#pragma once

#include <string>

namespace ergo {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 verification failure, 2 input/contract error.
// Contract errors print one machine-readable JSON line on stderr.
int cmd_analyze(const std::string& config_path, const std::string& markers_path,
                const std::string& sensors_path, const std::string& out_dir);
int cmd_synth(const std::string& scenario_path, const std::string& out_dir);
int cmd_verify(const std::string& dataset_dir, const std::string& tolerances_path);
int cmd_report(const std::string& results_dir, const std::string& out_dir);

}  // namespace ergo
