#ifndef NLEVY_TOOLS_SVG_PLOT_HPP
#define NLEVY_TOOLS_SVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlevy_tools {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal static line plot, enough for batch report artifacts.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::vector<Series>& series, bool log_y = false) {
    const int W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            double yv = log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return ml + (W - ml - mr) * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) {
        double yv = log_y ? std::log10(std::max(y, 1e-300)) : y;
        return H - mb - (H - mt - mb) * (yv - ymin) / (ymax - ymin);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_svg_plot: cannot open " + path);
    std::fprintf(f, "<svg xmlns='http://www.w3.org/2000/svg' width='%d' height='%d'>\n", W, H);
    std::fprintf(f, "<rect width='%d' height='%d' fill='white'/>\n", W, H);
    std::fprintf(f, "<text x='%d' y='24' font-size='15' font-family='sans-serif'>%s</text>\n", ml,
                 title.c_str());
    std::fprintf(f, "<line x1='%d' y1='%d' x2='%d' y2='%d' stroke='black'/>\n", ml, H - mb, W - mr,
                 H - mb);
    std::fprintf(f, "<line x1='%d' y1='%d' x2='%d' y2='%d' stroke='black'/>\n", ml, mt, ml, H - mb);
    std::fprintf(f, "<text x='%d' y='%d' font-size='11' font-family='sans-serif'>%.4g</text>\n", ml,
                 H - mb + 16, xmin);
    std::fprintf(f, "<text x='%d' y='%d' font-size='11' font-family='sans-serif'>%.4g</text>\n",
                 W - mr - 40, H - mb + 16, xmax);
    std::fprintf(f, "<text x='4' y='%d' font-size='11' font-family='sans-serif'>%s%.4g</text>\n",
                 H - mb, log_y ? "1e" : "", ymin);
    std::fprintf(f, "<text x='4' y='%d' font-size='11' font-family='sans-serif'>%s%.4g</text>\n",
                 mt + 8, log_y ? "1e" : "", ymax);
    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::string pts;
        char buf[64];
        for (size_t i = 0; i < s.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            pts += buf;
        }
        std::fprintf(f, "<polyline points='%s' fill='none' stroke='%s' stroke-width='1.5'/>\n",
                     pts.c_str(), colors[si % 6]);
        std::fprintf(f,
                     "<text x='%d' y='%d' font-size='12' font-family='sans-serif' "
                     "fill='%s'>%s</text>\n",
                     W - mr - 160, mt + 16 * int(si + 1), colors[si % 6], s.label.c_str());
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

}  // namespace nlevy_tools

#endif
