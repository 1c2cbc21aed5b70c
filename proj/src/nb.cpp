#include <algorithm>
#include <cmath>
#include <string>

#include "sarcbench/errors.hpp"
#include "sarcbench/models.hpp"

namespace sarcbench {

NbModel train_nb(const CsrMatrix& X, std::span<const int> y, double alpha) {
    if (y.size() != X.n_rows) {
        throw ShapeError("train_nb: label count " + std::to_string(y.size()) +
                         " does not match row count " + std::to_string(X.n_rows));
    }
    if (alpha <= 0.0) throw ArgumentError("train_nb: alpha must be positive");

    const std::size_t d = X.n_cols;
    std::array<std::size_t, 2> class_count{0, 0};
    std::array<std::vector<double>, 2> totals{std::vector<double>(d, 0.0),
                                              std::vector<double>(d, 0.0)};
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        const int label = y[i];
        if (label != 0 && label != 1) throw ArgumentError("train_nb: labels must be 0 or 1");
        ++class_count[label];
        const auto cols = X.row_cols(i);
        const auto vals = X.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (vals[k] < 0.0) {
                throw ArgumentError("train_nb: negative feature value at row " +
                                    std::to_string(i) + ", column " + std::to_string(cols[k]));
            }
            totals[label][cols[k]] += vals[k];
        }
    }
    if (class_count[0] == 0 || class_count[1] == 0) {
        throw TrainError("train_nb: both classes must be present in the training labels");
    }

    NbModel m;
    m.alpha = alpha;
    const auto n = static_cast<double>(X.n_rows);
    for (int c = 0; c < 2; ++c) {
        m.class_log_prior[c] = std::log(static_cast<double>(class_count[c]) / n);
        double total = 0.0;
        for (double t : totals[c]) total += t;
        const double denom = total + alpha * static_cast<double>(d);
        auto& log_prob = m.feature_log_prob[c];
        log_prob.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            log_prob[j] = std::log((totals[c][j] + alpha) / denom);
        }
    }
    return m;
}

DenseMatrix nb_predict_proba(const NbModel& m, const CsrMatrix& X) {
    if (X.n_cols != m.n_features()) {
        throw ShapeError("nb_predict_proba: matrix width " + std::to_string(X.n_cols) +
                         " does not match model width " + std::to_string(m.n_features()));
    }
    DenseMatrix proba(X.n_rows, 2);
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        std::array<double, 2> log_post = m.class_log_prior;
        const auto cols = X.row_cols(i);
        const auto vals = X.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            log_post[0] += vals[k] * m.feature_log_prob[0][cols[k]];
            log_post[1] += vals[k] * m.feature_log_prob[1][cols[k]];
        }
        const double top = std::max(log_post[0], log_post[1]);
        const double e0 = std::exp(log_post[0] - top);
        const double e1 = std::exp(log_post[1] - top);
        proba.at(i, 0) = e0 / (e0 + e1);
        proba.at(i, 1) = e1 / (e0 + e1);
    }
    return proba;
}

std::vector<int> proba_to_labels(const DenseMatrix& proba) {
    if (proba.n_cols != 2) throw ShapeError("proba_to_labels: expected exactly 2 columns");
    std::vector<int> labels(proba.n_rows);
    for (std::size_t i = 0; i < proba.n_rows; ++i) {
        labels[i] = proba.at(i, 1) > proba.at(i, 0) ? 1 : 0;
    }
    return labels;
}

std::vector<double> positive_class_scores(const DenseMatrix& proba) {
    if (proba.n_cols != 2) throw ShapeError("positive_class_scores: expected exactly 2 columns");
    std::vector<double> scores(proba.n_rows);
    for (std::size_t i = 0; i < proba.n_rows; ++i) scores[i] = proba.at(i, 1);
    return scores;
}

}  // namespace sarcbench
