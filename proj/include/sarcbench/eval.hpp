#pragma once

// Binary-classification metrics: confusion matrix, accuracy, per-class
// precision/recall/F1, ROC curve and AUC. All functions are pure.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sarcbench {

struct ConfusionMatrix2 {
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tp = 0;

    std::size_t total() const { return tn + fp + fn + tp; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), starts (0,0), ends (1,1)
    double auc = 0.0;
};

struct EvalReport {
    double accuracy = 0.0;
    std::array<ClassMetrics, 2> per_class{};  // indexed by class label
    ConfusionMatrix2 confusion{};
    std::optional<RocCurve> roc;
};

// Row = true label, column = predicted label. Labels must be 0 or 1.
ConfusionMatrix2 confusion(std::span<const int> y_true, std::span<const int> y_pred);

// Zero denominators yield 0 rather than an error.
ClassMetrics class_metrics(const ConfusionMatrix2& cm, int positive);

// Threshold sweep over distinct score values, descending; tied scores
// share one point; (0,0) prepended. AUC by the trapezoidal rule, which
// equals the Mann-Whitney pair statistic.
RocCurve roc(std::span<const int> y_true, std::span<const double> scores);

// Assembles everything; the ROC block is computed only when scores are
// supplied (the probability-producing model path).
EvalReport evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::span<const double> scores = {});

}  // namespace sarcbench
