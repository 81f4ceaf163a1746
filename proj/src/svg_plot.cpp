#include "hapbench/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hapbench {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::optional<double> cell(const std::string& s, bool log_scale) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  try {
    v = parse_double(s);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (!std::isfinite(v)) return std::nullopt;
  if (log_scale) {
    if (v <= 0.0) return std::nullopt;
    return std::log10(v);
  }
  return v;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  const std::size_t xc = table.column(spec.x_column);
  std::vector<std::size_t> ycs;
  for (const auto& name : spec.y_columns) ycs.push_back(table.column(name));

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& row : table.rows) {
    const auto x = cell(row[xc], spec.log_x);
    if (!x) continue;
    x_lo = std::min(x_lo, *x);
    x_hi = std::max(x_hi, *x);
    for (std::size_t c : ycs)
      if (const auto y = cell(row[c], spec.log_y)) {
        y_lo = std::min(y_lo, *y);
        y_hi = std::max(y_hi, *y);
      }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) {
    y_lo = std::isfinite(y_lo) ? y_lo - 1.0 : 0.0;
    y_hi = y_lo + 2.0;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };
  auto label = [](double v, bool log_scale) { return log_scale ? num(std::pow(10.0, v)) : num(v); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << spec.title << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
    os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kHeight - kBottom + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label(fx, spec.log_x) << "</text>\n";
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label(fy, spec.log_y) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << spec.x_column << "</text>\n";
  os << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << spec.y_label << "</text>\n";

  for (std::size_t k = 0; k < ycs.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    std::ostringstream path;
    bool pen_down = false;
    for (const auto& row : table.rows) {
      const auto x = cell(row[xc], spec.log_x);
      const auto y = cell(row[ycs[k]], spec.log_y);
      if (!x || !y) {
        pen_down = false;
        continue;
      }
      path << (pen_down ? " L" : " M") << num(px(*x)) << ' ' << num(py(*y));
      pen_down = true;
    }
    os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16 + 15 * k) << "\" fill=\"" << color
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << spec.y_columns[k] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hapbench
