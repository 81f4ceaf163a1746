#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hapbench {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Same, or an empty string when v is absent.
template <typename Opt>
std::string format_optional(const Opt& v) {
  return v ? format_double(*v) : std::string{};
}

/// Parses a full decimal floating-point token; throws std::invalid_argument.
double parse_double(std::string_view text);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws std::out_of_range
};

/// LF line endings, mandatory header. Throws std::runtime_error on I/O failure.
CsvTable read_csv(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace hapbench
