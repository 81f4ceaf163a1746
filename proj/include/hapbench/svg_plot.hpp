#pragma once

#include <string>
#include <vector>

#include "hapbench/format.hpp"

namespace hapbench {

struct PlotSpec {
  std::string title;
  std::string x_column = "freq_hz";
  std::vector<std::string> y_columns;
  bool log_x = true;
  bool log_y = false;
  std::string y_label;
};

/// Standalone SVG line plot of CSV columns. Empty cells are gaps.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace hapbench
