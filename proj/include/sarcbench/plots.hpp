#pragma once

// Dependency-free SVG renderings of the two report figures. Output is
// deterministic: fixed geometry, fixed-precision coordinates.

#include <string>

#include "sarcbench/eval.hpp"

namespace sarcbench {

// 2x2 heatmap (rows = true label, columns = predicted label) with the
// count centered in each cell; label color flips to white once a cell
// exceeds half of the maximum count.
std::string render_confusion_svg(const ConfusionMatrix2& cm);

// Solid curve over a dashed chance diagonal, AUC in the legend.
std::string render_roc_svg(const RocCurve& curve);

}  // namespace sarcbench
