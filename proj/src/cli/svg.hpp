#pragma once

#include <string>
#include <vector>

namespace gonodyn::cli {

// One plotted series: y values against their index (iteration number).
struct Series {
    std::string name;
    std::vector<double> values;
};

// Trajectory plot: one polyline per series on a symlog vertical axis
// (sign(y) * log10(1 + |y|)), so decaying and exploding orbits both stay
// readable on the same plot.
std::string line_plot_svg(const std::string& title, const std::vector<Series>& series);

// Axis of a 2-D slice for the heat map.
struct HeatAxis {
    std::string name;
    double lo = 0, hi = 1;
    int count = 1;
};

// Grid heat map: cell (i0, i1) is cells[i0 * ax1.count + i1], each value an
// index into palette/labels. ax0 runs horizontally, ax1 vertically (upward).
std::string heat_map_svg(const std::string& title, const HeatAxis& ax0, const HeatAxis& ax1,
                         const std::vector<int>& cells, const std::vector<std::string>& labels,
                         const std::vector<std::string>& palette);

}  // namespace gonodyn::cli
