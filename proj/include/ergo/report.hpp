#pragma once

#include <string>

namespace ergo {

// Turn an analyze output directory into plot-ready long-format CSVs plus one
// SVG per panel: pulley pressure / funnel force vs proximal tension, torso
// reduction vs shoulder angle and proximal tension, cuff reduction vs distal
// and proximal tension. Rows cover repetition windows only; the median trial
// carries highlight=true.
void write_report(const std::string& results_dir, const std::string& out_dir);

}  // namespace ergo
