#pragma once

#include <string>
#include <vector>

namespace sagsim {

/// One plotted series: points sorted by x, optional stderr whiskers.
struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yerr;   // empty or same length as y
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
    int width = 640;
    int height = 420;
};

/// Self-contained SVG line chart. Output depends only on the spec (fixed
/// number formatting), so identical data gives identical bytes.
std::string render_line_chart(const ChartSpec& spec);

}  // namespace sagsim
