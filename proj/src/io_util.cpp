#include "ergo/io_util.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "ergo/errors.hpp"

namespace ergo {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view field) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

const std::vector<double>& CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  fail(ErrorCode::FormatError, "CSV has no column " + name);
}

CsvTable read_csv_table(const std::string& path) {
  const std::string text = read_text_file(path);
  CsvTable table;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    ++line_no;
    const auto fields = split_csv(line);
    if (line_no == 1) {
      for (const auto& f : fields) table.header.emplace_back(f);
      table.columns.resize(table.header.size());
      continue;
    }
    if (fields.size() != table.header.size())
      fail(ErrorCode::FormatError,
           "CSV row arity mismatch at line " + std::to_string(line_no) + " of " + path);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty()) {
        table.columns[c].push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      const auto v = parse_double(fields[c]);
      if (!v)
        fail(ErrorCode::FormatError, "bad CSV value '" + std::string(fields[c]) +
                                         "' at line " + std::to_string(line_no));
      table.columns[c].push_back(*v);
    }
  }
  if (table.header.empty()) fail(ErrorCode::FormatError, "empty CSV: " + path);
  return table;
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

}  // namespace ergo
