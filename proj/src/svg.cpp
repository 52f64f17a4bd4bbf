#include "qbsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qbsim {

namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 64, kRight = 600, kTop = 32, kBottom = 392;

const char* kPalette[] = {"#c0392b", "#1f4e9c", "#c8a400", "#2e8b57", "#7d3c98", "#555555"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void write_line_plot_svg(std::ostream& out, const std::string& title,
                         const std::vector<double>& x, const std::vector<PlotSeries>& series,
                         const std::string& x_label, const std::string& y_label) {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    if (!x.empty()) {
        x_min = *std::min_element(x.begin(), x.end());
        x_max = *std::max_element(x.begin(), x.end());
    }
    for (const PlotSeries& s : series)
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    y_max += 0.02 * (y_max - y_min);

    auto px = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft); };
    auto py = [&](double v) { return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    // axes with a few ticks
    out << "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
    out << "<path d=\"M" << kLeft << " " << kTop << " L" << kLeft << " " << kBottom << " L"
        << kRight << " " << kBottom << "\"/>\n";
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x_min + k * (x_max - x_min) / 4;
        const double yv = y_min + k * (y_max - y_min) / 4;
        out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << kBottom << "\" x2=\"" << num(px(xv))
            << "\" y2=\"" << kBottom + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px(xv)) << "\" y=\"" << kBottom + 16
            << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << num(py(yv)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(yv) + 4)
            << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (kTop + kBottom) / 2
        << ")\">" << y_label << "</text>\n</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < x.size() && k < series[s].y.size(); ++k) {
            if (k) out << " ";
            out << num(px(x[k])) << "," << num(py(series[s].y[k]));
        }
        out << "\"/>\n";
        const double ly = kTop + 16 + 16 * static_cast<double>(s);
        out << "<line x1=\"" << kRight - 110 << "\" y1=\"" << ly << "\" x2=\"" << kRight - 86
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << kRight - 80 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace qbsim
