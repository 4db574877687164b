#include "pathclust/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace pathclust {
namespace {

// tab10-like palette; class c uses kPalette[c % 10]
constexpr const char* kPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_sequence_svg(const HamiltonianPath& path,
                                const std::optional<ClusterLabeling>& classes,
                                const ChangePointSet& cps) {
    const Index n = path.gaps.size();
    if (n < 1) throw std::invalid_argument("render_sequence_svg: empty gap sequence");
    if (classes && static_cast<Index>(classes->labels.size()) != path.size())
        throw std::invalid_argument("render_sequence_svg: labeling length does not match path");

    constexpr double kWidth = 900.0, kHeight = 300.0, kMargin = 42.0;
    const double plot_w = kWidth - 2.0 * kMargin;
    const double plot_h = kHeight - 2.0 * kMargin;

    const double y_min = path.gaps.minCoeff();
    const double y_max = path.gaps.maxCoeff();
    const double span = std::max(y_max - y_min, 1e-12);
    const auto sx = [&](double i) {
        return kMargin + (n > 1 ? plot_w * i / static_cast<double>(n - 1) : plot_w / 2.0);
    };
    const auto sy = [&](double v) { return kHeight - kMargin - plot_h * (v - y_min) / span; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    out += "<polyline fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" points=\"";
    for (Index i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += num(sx(static_cast<double>(i))) + "," + num(sy(path.gaps[i]));
    }
    out += "\"/>\n";

    // gap i is drawn with the class of the visit at index i
    for (Index i = 0; i < n; ++i) {
        const char* color = "#1f77b4";
        if (classes) {
            const int cls =
                classes->labels[static_cast<std::size_t>(path.order[static_cast<std::size_t>(i)])];
            color = kPalette[cls % 10];
        }
        out += "<circle cx=\"" + num(sx(static_cast<double>(i))) + "\" cy=\"" +
               num(sy(path.gaps[i])) + "\" r=\"2\" fill=\"" + std::string(color) + "\"/>\n";
    }

    for (std::size_t c = 0; c < cps.positions.size(); ++c) {
        const double x = sx(static_cast<double>(cps.positions[c]));
        const bool lower = c < cps.directions.size() && cps.directions[c] == CpDirection::Lower;
        const char* color = lower ? "#2ca02c" : "#d62728";
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kHeight - kMargin) + "\" stroke=\"" + color +
               "\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
        out += "<path d=\"M " + num(x - 5.0) + " " + num(kMargin - 8.0) + " L " + num(x + 5.0) +
               " " + num(kMargin - 8.0) + " L " + num(x) + " " + num(kMargin) +
               " Z\" fill=\"" + color + "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace pathclust
