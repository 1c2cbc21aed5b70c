#include "sarcbench/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "sarcbench/errors.hpp"

namespace sarcbench {

ConfusionMatrix2 confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw ArgumentError("confusion: y_true and y_pred lengths differ (" +
                            std::to_string(y_true.size()) + " vs " +
                            std::to_string(y_pred.size()) + ")");
    }
    ConfusionMatrix2 cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
            throw ArgumentError("confusion: labels must be 0 or 1");
        }
        if (t == 1) {
            ++(p == 1 ? cm.tp : cm.fn);
        } else {
            ++(p == 0 ? cm.tn : cm.fp);
        }
    }
    return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix2& cm, int positive) {
    if (positive != 0 && positive != 1) {
        throw ArgumentError("class_metrics: positive class must be 0 or 1");
    }
    // Viewing class 0 as positive relabels the cells: tn<->tp, fp<->fn.
    const auto tp = static_cast<double>(positive == 1 ? cm.tp : cm.tn);
    const auto fp = static_cast<double>(positive == 1 ? cm.fp : cm.fn);
    const auto fn = static_cast<double>(positive == 1 ? cm.fn : cm.fp);

    ClassMetrics m;
    m.precision = (tp + fp > 0.0) ? tp / (tp + fp) : 0.0;
    m.recall = (tp + fn > 0.0) ? tp / (tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall > 0.0)
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

RocCurve roc(std::span<const int> y_true, std::span<const double> scores) {
    if (y_true.size() != scores.size()) {
        throw ArgumentError("roc: y_true and scores lengths differ");
    }
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] != 0 && y_true[i] != 1) throw ArgumentError("roc: labels must be 0 or 1");
        if (!std::isfinite(scores[i])) throw MetricError("roc: scores must be finite");
        ++(y_true[i] == 1 ? pos : neg);
    }
    if (pos == 0 || neg == 0) {
        throw MetricError("roc: both classes must be present in y_true");
    }

    std::vector<std::uint32_t> order(y_true.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return scores[a] > scores[b];
    });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        // One point per distinct score value: consume the whole tie group.
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            ++(y_true[order[i]] == 1 ? tp : fp);
            ++i;
        }
        curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(neg),
                                  static_cast<double>(tp) / static_cast<double>(pos));
    }

    double auc = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& [x0, y0] = curve.points[k - 1];
        const auto& [x1, y1] = curve.points[k];
        auc += (x1 - x0) * (y0 + y1) * 0.5;
    }
    curve.auc = auc;
    return curve;
}

EvalReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::span<const double> scores) {
    EvalReport report;
    report.confusion = confusion(y_true, y_pred);
    const std::size_t total = report.confusion.total();
    report.accuracy =
        total > 0
            ? static_cast<double>(report.confusion.tn + report.confusion.tp) /
                  static_cast<double>(total)
            : 0.0;
    report.per_class[0] = class_metrics(report.confusion, 0);
    report.per_class[1] = class_metrics(report.confusion, 1);
    if (!scores.empty()) report.roc = roc(y_true, scores);
    return report;
}

}  // namespace sarcbench
