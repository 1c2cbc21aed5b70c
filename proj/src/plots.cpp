#include "sarcbench/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace sarcbench {

namespace {

std::string fixed(double v, int precision = 2) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    std::string s = buf;
    // Normalize the negative-zero artifact so output never depends on
    // how a 0.0 was computed.
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

void text(std::string& out, double x, double y, const std::string& content,
          const std::string& extra = {}) {
    out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\"";
    if (!extra.empty()) out += " " + extra;
    out += ">" + content + "</text>\n";
}

// Linear ramp from near-white to a dark blue, the conventional heatmap
// scale for count matrices.
std::string blues(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const std::array<int, 3> lo{247, 251, 255};
    const std::array<int, 3> hi{8, 48, 107};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)",
                  static_cast<int>(std::lround(lo[0] + t * (hi[0] - lo[0]))),
                  static_cast<int>(std::lround(lo[1] + t * (hi[1] - lo[1]))),
                  static_cast<int>(std::lround(lo[2] + t * (hi[2] - lo[2]))));
    return buf;
}

}  // namespace

std::string render_confusion_svg(const ConfusionMatrix2& cm) {
    constexpr double kCell = 140.0;
    constexpr double kLeft = 110.0;
    constexpr double kTop = 70.0;
    constexpr double kWidth = kLeft + 2 * kCell + 40.0;
    constexpr double kHeight = kTop + 2 * kCell + 90.0;

    // Row = true label, column = predicted label.
    const std::array<std::array<std::size_t, 2>, 2> counts{{{cm.tn, cm.fp}, {cm.fn, cm.tp}}};
    std::size_t max_count = 0;
    for (const auto& row : counts) {
        for (std::size_t c : row) max_count = std::max(max_count, c);
    }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
           "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " +
           fixed(kHeight, 0) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kHeight, 0) +
           "\" fill=\"white\"/>\n";
    text(out, kLeft + kCell, kTop - 30.0, "Confusion matrix",
         "font-size=\"20\" text-anchor=\"middle\"");

    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const std::size_t count = counts[r][c];
            const double t = max_count > 0
                                 ? static_cast<double>(count) / static_cast<double>(max_count)
                                 : 0.0;
            const double x = kLeft + c * kCell;
            const double y = kTop + r * kCell;
            out += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" width=\"" +
                   fixed(kCell) + "\" height=\"" + fixed(kCell) + "\" fill=\"" + blues(t) +
                   "\" stroke=\"white\"/>\n";
            const bool bright = 2 * count > max_count;
            text(out, x + kCell / 2, y + kCell / 2 + 7.0, std::to_string(count),
                 std::string("font-size=\"22\" text-anchor=\"middle\" fill=\"") +
                     (bright ? "white" : "black") + "\"");
        }
    }

    for (int i = 0; i < 2; ++i) {
        const std::string label = std::to_string(i);
        text(out, kLeft + i * kCell + kCell / 2, kTop + 2 * kCell + 28.0, label,
             "font-size=\"16\" text-anchor=\"middle\"");
        text(out, kLeft - 18.0, kTop + i * kCell + kCell / 2 + 6.0, label,
             "font-size=\"16\" text-anchor=\"middle\"");
    }
    text(out, kLeft + kCell, kTop + 2 * kCell + 62.0, "Predicted label",
         "font-size=\"16\" text-anchor=\"middle\"");
    out += "<text x=\"" + fixed(kLeft - 56.0) + "\" y=\"" + fixed(kTop + kCell) +
           "\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           fixed(kLeft - 56.0) + " " + fixed(kTop + kCell) + ")\">True label</text>\n";
    out += "</svg>\n";
    return out;
}

std::string render_roc_svg(const RocCurve& curve) {
    constexpr double kLeft = 80.0;
    constexpr double kTop = 56.0;
    constexpr double kPlotW = 360.0;
    constexpr double kPlotH = 320.0;
    constexpr double kWidth = kLeft + kPlotW + 40.0;
    constexpr double kHeight = kTop + kPlotH + 84.0;

    const auto px = [&](double fpr) { return kLeft + fpr * kPlotW; };
    const auto py = [&](double tpr) { return kTop + (1.0 - tpr) * kPlotH; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
           "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " +
           fixed(kHeight, 0) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kHeight, 0) +
           "\" fill=\"white\"/>\n";
    text(out, kLeft + kPlotW / 2, kTop - 24.0, "ROC curve",
         "font-size=\"20\" text-anchor=\"middle\"");

    out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" +
           fixed(kPlotW) + "\" height=\"" + fixed(kPlotH) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    // Axis ticks at 0, 0.5 and 1 on both axes.
    for (double v : {0.0, 0.5, 1.0}) {
        text(out, px(v), kTop + kPlotH + 22.0, fixed(v, 1),
             "font-size=\"14\" text-anchor=\"middle\"");
        text(out, kLeft - 12.0, py(v) + 5.0, fixed(v, 1),
             "font-size=\"14\" text-anchor=\"end\"");
    }
    text(out, kLeft + kPlotW / 2, kTop + kPlotH + 52.0, "False positive rate",
         "font-size=\"16\" text-anchor=\"middle\"");
    out += "<text x=\"" + fixed(kLeft - 48.0) + "\" y=\"" + fixed(kTop + kPlotH / 2) +
           "\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           fixed(kLeft - 48.0) + " " + fixed(kTop + kPlotH / 2) +
           ")\">True positive rate</text>\n";

    // Chance baseline.
    out += "<line x1=\"" + fixed(px(0.0)) + "\" y1=\"" + fixed(py(0.0)) + "\" x2=\"" +
           fixed(px(1.0)) + "\" y2=\"" + fixed(py(1.0)) +
           "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";

    out += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (i > 0) out += ' ';
        out += fixed(px(curve.points[i].first)) + ',' + fixed(py(curve.points[i].second));
    }
    out += "\"/>\n";

    char legend[64];
    std::snprintf(legend, sizeof(legend), "AUC = %.3f", curve.auc);
    text(out, kLeft + kPlotW - 12.0, kTop + kPlotH - 14.0, legend,
         "font-size=\"16\" text-anchor=\"end\"");
    out += "</svg>\n";
    return out;
}

}  // namespace sarcbench
