#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fgap {

// Writes to a sibling temporary file, then renames over path.
void atomic_write(const std::string& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Standalone SVG with axes, tick labels and one polyline per series.
std::string svg_line_plot(const std::vector<PlotSeries>& series, const std::string& title,
                          const std::string& x_label = "x", const std::string& y_label = "");

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace fgap
