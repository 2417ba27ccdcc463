#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

namespace nodal::tools {

struct SvgSeries {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

/// Minimal polyline plot; diagnostic only.
inline void write_svg(const std::string& path,
                      const std::vector<SvgSeries>& series) {
    double xmax = 1e-300, ymax = 1e-300;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    }
    const double w = 640, h = 480, m = 48;
    const auto px = [&](double x) { return m + x / xmax * (w - 2 * m); };
    const auto py = [&](double y) { return h - m - y / ymax * (h - 2 * m); };

    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m
        << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m
        << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
    double legend_y = m;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points)
            out << px(x) << "," << py(std::min(y, ymax)) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << w - m - 160 << "\" y=\"" << legend_y
            << "\" fill=\"" << s.color << "\" font-size=\"12\">" << s.name
            << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace nodal::tools
