// svg.hpp — Minimal line plots (axes, legend, one polyline per series)

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbsim {

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

/// One polyline per series against a shared x grid. The plots exist for
/// human sanity checks, not publication.
void write_line_plot_svg(std::ostream& out, const std::string& title,
                         const std::vector<double>& x, const std::vector<PlotSeries>& series,
                         const std::string& x_label, const std::string& y_label);

} // namespace qbsim
