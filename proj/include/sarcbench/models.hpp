#pragma once

// The four classifiers: multinomial Naive Bayes, L2 logistic regression,
// squared-hinge linear SVM and a Gini random forest. Binary labels only
// (0/1). Trained models are immutable; every predict path is pure.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sarcbench/rng.hpp"
#include "sarcbench/sparse.hpp"

namespace sarcbench {

struct TrainConfig {
    std::size_t lr_max_iter = 500;
    double lr_tol = 1e-4;
    double lr_reg_c = 1.0;
    std::size_t svm_max_iter = 5000;
    double svm_tol = 1e-4;  // same convergence contract as the logistic model
    double svm_reg_c = 1.0;
    double nb_alpha = 1.0;
    std::size_t rf_trees = 150;
    std::uint64_t rf_seed = 42;
};

// ---------------------------------------------------------------- NB --

struct NbModel {
    std::array<double, 2> class_log_prior{};
    std::array<std::vector<double>, 2> feature_log_prob;  // per class, length D
    double alpha = 1.0;

    std::size_t n_features() const { return feature_log_prob[0].size(); }
};

// Requires non-negative features and both classes present. Fractional
// feature values accumulate into the per-class totals as-is.
NbModel train_nb(const CsrMatrix& X, std::span<const int> y, double alpha);

// Rows of (P(class 0), P(class 1)); each row sums to 1.
DenseMatrix nb_predict_proba(const NbModel& m, const CsrMatrix& X);

// ------------------------------------------------------- linear models --

enum class LinearKind { logistic, svm };

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    LinearKind kind = LinearKind::logistic;
    bool converged = false;
    std::size_t iterations = 0;
};

struct ObjectiveEval {
    double value = 0.0;
    std::vector<double> grad;
};

// theta packs [w(0..D-1), bias]; the bias is never regularized.
// Logistic objective: sum ln(1+exp(-yz)) + (1/(2C))|w|^2 with y in {-1,+1}.
ObjectiveEval logreg_objective(const CsrMatrix& X, std::span<const int> y,
                               std::span<const double> theta, double reg_c);
// Squared-hinge objective: (1/2)|w|^2 + C sum max(0, 1-yz)^2.
ObjectiveEval svm_objective(const CsrMatrix& X, std::span<const int> y,
                            std::span<const double> theta, double reg_c);

// Both minimize from theta = 0 until the gradient infinity-norm falls
// below tol or max_iter steps elapse; non-convergence is recorded on the
// model, not thrown.
LinearModel train_logreg(const CsrMatrix& X, std::span<const int> y, const TrainConfig& cfg);
LinearModel train_linear_svm(const CsrMatrix& X, std::span<const int> y,
                             const TrainConfig& cfg);

// score_i = w.x_i + b
std::vector<double> linear_decision(const LinearModel& m, const CsrMatrix& X);
// label 1 iff score > 0 (ties resolve to 0)
std::vector<int> linear_predict(const LinearModel& m, const CsrMatrix& X);

// ------------------------------------------------------- random forest --

struct Tree {
    // Parallel node arrays; feature == -1 marks a leaf. count0/count1 are
    // the bootstrap class weights that reached each node; they sum > 0
    // everywhere and drive the leaf frequency estimates.
    std::vector<std::int32_t> feature;
    std::vector<double> threshold;
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    std::vector<std::uint32_t> count0;
    std::vector<std::uint32_t> count1;

    std::size_t node_count() const { return feature.size(); }
};

struct ForestModel {
    std::vector<Tree> trees;
    std::uint64_t seed = 42;
    std::size_t n_features = 0;
};

// Grows one tree on an explicit bootstrap sample (row indices into X,
// duplicates allowed). mtry candidate features are evaluated per node;
// when none of them admits a valid partition, drawing continues until
// one does or the pool is exhausted, so consistent data is always fit
// exactly. Splits go left on value <= threshold.
Tree build_tree(const CsrMatrix& X, std::span<const int> y,
                std::span<const std::uint32_t> bootstrap_rows, std::size_t mtry,
                Xoshiro256ss& rng);

// cfg.rf_trees trees; tree t draws its own generator seed from the t-th
// output of a SplitMix64 stream over cfg.rf_seed, so the forest is a
// pure function of (X, y, cfg) independent of scheduling.
ForestModel train_random_forest(const CsrMatrix& X, std::span<const int> y,
                                const TrainConfig& cfg);

// Average of per-tree leaf class frequencies; rows sum to 1.
DenseMatrix forest_predict_proba(const ForestModel& m, const CsrMatrix& X);

// ------------------------------------------------------ shared helpers --

// argmax over the two columns, ties resolve to class 0.
std::vector<int> proba_to_labels(const DenseMatrix& proba);
// Column 1 (the positive-class probability), used for ROC curves.
std::vector<double> positive_class_scores(const DenseMatrix& proba);

}  // namespace sarcbench
