#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergo {

// Shortest round-trip decimal form (std::to_chars). Locale-free and deterministic,
// so repeated runs emit byte-identical files.
std::string format_double(double v);

// Strict double parse of a full field (std::from_chars). Rejects trailing junk.
std::optional<double> parse_double(std::string_view field);

// Split one CSV line on ','. No quoting support; the formats here never need it.
std::vector<std::string_view> split_csv(std::string_view line);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit over file bytes, hex encoded. Used for run manifests.
std::string fnv1a64_hex(std::string_view bytes);

// Numeric CSV with a header row. Empty cells become NaN.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // [column][row]

  [[nodiscard]] std::size_t rows() const {
    return columns.empty() ? 0 : columns[0].size();
  }
  [[nodiscard]] const std::vector<double>& col(const std::string& name) const;
};

CsvTable read_csv_table(const std::string& path);

std::string utc_timestamp_now();

}  // namespace ergo
