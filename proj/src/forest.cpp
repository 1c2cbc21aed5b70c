#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "sarcbench/errors.hpp"
#include "sarcbench/models.hpp"

namespace sarcbench {

namespace {

// Column-major view of the nonzero entries, built once per forest and
// shared by every tree. Rows are ascending within each column.
struct ColumnIndex {
    std::vector<std::size_t> offsets;  // length n_cols + 1
    std::vector<std::uint32_t> rows;
    std::vector<double> values;

    static ColumnIndex build(const CsrMatrix& X) {
        ColumnIndex idx;
        idx.offsets.assign(X.n_cols + 1, 0);
        for (std::uint32_t c : X.col_indices) ++idx.offsets[c + 1];
        for (std::size_t c = 0; c < X.n_cols; ++c) idx.offsets[c + 1] += idx.offsets[c];
        idx.rows.resize(X.nnz());
        idx.values.resize(X.nnz());
        std::vector<std::size_t> cursor(idx.offsets.begin(), idx.offsets.end() - 1);
        for (std::size_t i = 0; i < X.n_rows; ++i) {
            const auto cols = X.row_cols(i);
            const auto vals = X.row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const std::size_t at = cursor[cols[k]]++;
                idx.rows[at] = static_cast<std::uint32_t>(i);
                idx.values[at] = vals[k];
            }
        }
        return idx;
    }

    std::span<const std::uint32_t> column_rows(std::size_t c) const {
        return {rows.data() + offsets[c], offsets[c + 1] - offsets[c]};
    }
    std::span<const double> column_values(std::size_t c) const {
        return {values.data() + offsets[c], offsets[c + 1] - offsets[c]};
    }
};

double gini(std::uint64_t a, std::uint64_t b) {
    const auto w = static_cast<double>(a + b);
    const double pa = static_cast<double>(a) / w;
    const double pb = static_cast<double>(b) / w;
    return 1.0 - pa * pa - pb * pb;
}

class TreeBuilder {
public:
    TreeBuilder(const CsrMatrix& X, const ColumnIndex& index, std::span<const int> y,
                std::size_t mtry)
        : X_(X),
          index_(index),
          y_(y),
          mtry_(mtry),
          weight_(X.n_rows, 0),
          node_of_row_(X.n_rows, 0),
          feature_order_(X.n_cols) {
        std::iota(feature_order_.begin(), feature_order_.end(), 0u);
    }

    Tree build(std::span<const std::uint32_t> bootstrap_rows, Xoshiro256ss& rng) {
        std::fill(weight_.begin(), weight_.end(), 0u);
        for (std::uint32_t r : bootstrap_rows) {
            if (r >= X_.n_rows) throw ArgumentError("build_tree: bootstrap row out of range");
            ++weight_[r];
        }
        samples_.clear();
        std::uint64_t c0 = 0;
        std::uint64_t c1 = 0;
        for (std::uint32_t r = 0; r < X_.n_rows; ++r) {
            if (weight_[r] == 0) continue;
            samples_.push_back(r);
            node_of_row_[r] = 0;
            (y_[r] == 1 ? c1 : c0) += weight_[r];
        }

        tree_ = Tree{};
        const std::uint32_t root = add_node(c0, c1);
        std::vector<Work> stack;
        stack.push_back({root, 0, samples_.size(), c0, c1});

        while (!stack.empty()) {
            const Work wk = stack.back();
            stack.pop_back();
            if (wk.c0 == 0 || wk.c1 == 0) continue;  // pure: stays a leaf

            const Split best = find_best_split(wk, rng);
            if (!best.valid) continue;  // every feature constant here: mixed leaf

            const std::size_t mid = partition(wk, best);
            const std::uint64_t r0 = wk.c0 - best.left0;
            const std::uint64_t r1 = wk.c1 - best.left1;
            const std::uint32_t left_id = add_node(best.left0, best.left1);
            const std::uint32_t right_id = add_node(r0, r1);
            tree_.feature[wk.node] = static_cast<std::int32_t>(best.feature);
            tree_.threshold[wk.node] = best.threshold;
            tree_.left[wk.node] = left_id;
            tree_.right[wk.node] = right_id;
            // Right first so the left child is processed next (depth
            // first, left to right), keeping node ids reproducible.
            stack.push_back({right_id, mid, wk.hi, r0, r1});
            stack.push_back({left_id, wk.lo, mid, best.left0, best.left1});
        }
        return std::move(tree_);
    }

private:
    struct Work {
        std::uint32_t node;
        std::size_t lo;
        std::size_t hi;
        std::uint64_t c0;
        std::uint64_t c1;
    };

    struct Split {
        bool valid = false;
        double children_impurity = std::numeric_limits<double>::infinity();
        std::uint32_t feature = 0;
        double threshold = 0.0;
        std::uint64_t left0 = 0;
        std::uint64_t left1 = 0;
    };

    struct ValueGroup {
        double value;
        std::uint64_t w0;
        std::uint64_t w1;
    };

    std::uint32_t add_node(std::uint64_t c0, std::uint64_t c1) {
        const auto id = static_cast<std::uint32_t>(tree_.node_count());
        tree_.feature.push_back(-1);
        tree_.threshold.push_back(0.0);
        tree_.left.push_back(0);
        tree_.right.push_back(0);
        tree_.count0.push_back(static_cast<std::uint32_t>(c0));
        tree_.count1.push_back(static_cast<std::uint32_t>(c1));
        return id;
    }

    // Draws candidate features by partial Fisher-Yates over a persistent
    // identity permutation (swaps undone afterwards). mtry candidates are
    // evaluated; if none admits a valid partition the draw continues, so
    // a node only becomes an impure leaf once every feature is constant
    // within it.
    Split find_best_split(const Work& wk, Xoshiro256ss& rng) {
        Split best;
        undo_.clear();
        const std::size_t d = X_.n_cols;
        for (std::size_t k = 0; k < d; ++k) {
            if (k >= mtry_ && best.valid) break;
            const std::size_t j = k + static_cast<std::size_t>(rng.bounded(d - k));
            std::swap(feature_order_[k], feature_order_[j]);
            undo_.emplace_back(k, j);

            Split cand = evaluate_feature(feature_order_[k], wk);
            if (!cand.valid) continue;
            // Lower impurity wins; exact ties resolve to the lower
            // feature index. Per-feature threshold ties are already
            // settled inside evaluate_feature (lowest threshold kept).
            if (!best.valid || cand.children_impurity < best.children_impurity ||
                (cand.children_impurity == best.children_impurity &&
                 cand.feature < best.feature)) {
                best = cand;
            }
        }
        for (auto it = undo_.rbegin(); it != undo_.rend(); ++it) {
            std::swap(feature_order_[it->first], feature_order_[it->second]);
        }
        return best;
    }

    Split evaluate_feature(std::uint32_t f, const Work& wk) {
        gather_.clear();
        std::uint64_t nz0 = 0;
        std::uint64_t nz1 = 0;
        const auto col_rows = index_.column_rows(f);
        const std::size_t node_size = wk.hi - wk.lo;

        if (col_rows.size() < node_size * 8) {
            // Short column: scan it and keep rows belonging to this node.
            const auto col_vals = index_.column_values(f);
            for (std::size_t k = 0; k < col_rows.size(); ++k) {
                const std::uint32_t r = col_rows[k];
                if (weight_[r] == 0 || node_of_row_[r] != wk.node) continue;
                add_gather(col_vals[k], r, nz0, nz1);
            }
        } else {
            // Small node: probe each sample row for this column.
            for (std::size_t i = wk.lo; i < wk.hi; ++i) {
                const std::uint32_t r = samples_[i];
                const double v = X_.at(r, f);
                if (v != 0.0) add_gather(v, r, nz0, nz1);
            }
        }

        // Rows of this node absent from the column sit at value zero.
        const std::uint64_t z0 = wk.c0 - nz0;
        const std::uint64_t z1 = wk.c1 - nz1;
        if (z0 + z1 > 0) gather_.push_back({0.0, z0, z1});

        std::sort(gather_.begin(), gather_.end(),
                  [](const ValueGroup& a, const ValueGroup& b) { return a.value < b.value; });
        groups_.clear();
        for (const ValueGroup& g : gather_) {
            if (!groups_.empty() && groups_.back().value == g.value) {
                groups_.back().w0 += g.w0;
                groups_.back().w1 += g.w1;
            } else {
                groups_.push_back(g);
            }
        }

        Split best;
        if (groups_.size() < 2) return best;  // constant within the node

        const std::uint64_t total = wk.c0 + wk.c1;
        std::uint64_t l0 = 0;
        std::uint64_t l1 = 0;
        for (std::size_t g = 0; g + 1 < groups_.size(); ++g) {
            l0 += groups_[g].w0;
            l1 += groups_[g].w1;
            const std::uint64_t r0 = wk.c0 - l0;
            const std::uint64_t r1 = wk.c1 - l1;
            double thr = 0.5 * (groups_[g].value + groups_[g + 1].value);
            // Adjacent doubles can round the midpoint up onto the right
            // value; pin it back so the partition stays non-trivial.
            if (thr == groups_[g + 1].value) thr = groups_[g].value;
            const double ci = (static_cast<double>(l0 + l1) * gini(l0, l1) +
                               static_cast<double>(r0 + r1) * gini(r0, r1)) /
                              static_cast<double>(total);
            // Strict improvement only: the lowest threshold wins a tie.
            if (!best.valid || ci < best.children_impurity) {
                best.valid = true;
                best.children_impurity = ci;
                best.feature = f;
                best.threshold = thr;
                best.left0 = l0;
                best.left1 = l1;
            }
        }
        return best;
    }

    // Stable two-buffer partition of samples_[lo, hi) on the chosen
    // split; updates node membership. Returns the boundary position.
    std::size_t partition(const Work& wk, const Split& split) {
        left_buf_.clear();
        right_buf_.clear();
        for (std::size_t i = wk.lo; i < wk.hi; ++i) {
            const std::uint32_t r = samples_[i];
            (X_.at(r, split.feature) <= split.threshold ? left_buf_ : right_buf_).push_back(r);
        }
        const std::uint32_t left_id = static_cast<std::uint32_t>(tree_.node_count());
        const std::uint32_t right_id = left_id + 1;
        std::size_t at = wk.lo;
        for (std::uint32_t r : left_buf_) {
            samples_[at++] = r;
            node_of_row_[r] = left_id;
        }
        const std::size_t mid = at;
        for (std::uint32_t r : right_buf_) {
            samples_[at++] = r;
            node_of_row_[r] = right_id;
        }
        return mid;
    }

    void add_gather(double value, std::uint32_t r, std::uint64_t& nz0, std::uint64_t& nz1) {
        const std::uint64_t w = weight_[r];
        if (y_[r] == 1) {
            gather_.push_back({value, 0, w});
            nz1 += w;
        } else {
            gather_.push_back({value, w, 0});
            nz0 += w;
        }
    }

    const CsrMatrix& X_;
    const ColumnIndex& index_;
    std::span<const int> y_;
    std::size_t mtry_;

    Tree tree_;
    std::vector<std::uint32_t> weight_;       // bootstrap multiplicity per row
    std::vector<std::uint32_t> node_of_row_;  // current node of each sampled row
    std::vector<std::uint32_t> feature_order_;
    std::vector<std::uint32_t> samples_;  // unique sampled rows, grouped by node
    std::vector<std::pair<std::uint32_t, std::uint32_t>> undo_;
    std::vector<ValueGroup> gather_;
    std::vector<ValueGroup> groups_;
    std::vector<std::uint32_t> left_buf_;
    std::vector<std::uint32_t> right_buf_;
};

void check_forest_inputs(const CsrMatrix& X, std::span<const int> y) {
    if (y.size() != X.n_rows) {
        throw ShapeError("forest training: label count does not match row count");
    }
    std::array<std::size_t, 2> counts{0, 0};
    for (int label : y) {
        if (label != 0 && label != 1) {
            throw ArgumentError("forest training: labels must be 0 or 1");
        }
        ++counts[label];
    }
    if (counts[0] == 0 || counts[1] == 0) {
        throw TrainError("forest training: both classes must be present");
    }
}

}  // namespace

Tree build_tree(const CsrMatrix& X, std::span<const int> y,
                std::span<const std::uint32_t> bootstrap_rows, std::size_t mtry,
                Xoshiro256ss& rng) {
    if (y.size() != X.n_rows) {
        throw ShapeError("build_tree: label count does not match row count");
    }
    if (bootstrap_rows.empty()) throw ArgumentError("build_tree: empty bootstrap sample");
    for (int label : y) {
        if (label != 0 && label != 1) throw ArgumentError("build_tree: labels must be 0 or 1");
    }
    const ColumnIndex index = ColumnIndex::build(X);
    TreeBuilder builder(X, index, y, mtry);
    return builder.build(bootstrap_rows, rng);
}

ForestModel train_random_forest(const CsrMatrix& X, std::span<const int> y,
                                const TrainConfig& cfg) {
    check_forest_inputs(X, y);
    if (cfg.rf_trees == 0) throw ArgumentError("forest training: rf_trees must be >= 1");

    const auto mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(X.n_cols))));
    const ColumnIndex index = ColumnIndex::build(X);
    TreeBuilder builder(X, index, y, mtry);

    // Seeds are pre-assigned from one SplitMix64 stream so the result
    // does not depend on tree scheduling.
    SplitMix64 seeder(cfg.rf_seed);
    std::vector<std::uint64_t> seeds(cfg.rf_trees);
    for (auto& s : seeds) s = seeder.next();

    ForestModel model;
    model.seed = cfg.rf_seed;
    model.n_features = X.n_cols;
    model.trees.reserve(cfg.rf_trees);

    const std::size_t n = X.n_rows;
    std::vector<std::uint32_t> bootstrap(n);
    for (std::size_t t = 0; t < cfg.rf_trees; ++t) {
        Xoshiro256ss rng(seeds[t]);
        for (std::size_t k = 0; k < n; ++k) {
            bootstrap[k] = static_cast<std::uint32_t>(rng.bounded(n));
        }
        model.trees.push_back(builder.build(bootstrap, rng));
    }
    return model;
}

DenseMatrix forest_predict_proba(const ForestModel& m, const CsrMatrix& X) {
    if (X.n_cols != m.n_features) {
        throw ShapeError("forest_predict_proba: matrix width " + std::to_string(X.n_cols) +
                         " does not match model width " + std::to_string(m.n_features));
    }
    if (m.trees.empty()) throw ArgumentError("forest_predict_proba: model has no trees");

    DenseMatrix proba(X.n_rows, 2);
    std::vector<double> dense(m.n_features, 0.0);
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        const auto cols = X.row_cols(i);
        const auto vals = X.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) dense[cols[k]] = vals[k];

        double s0 = 0.0;
        double s1 = 0.0;
        for (const Tree& tree : m.trees) {
            std::uint32_t id = 0;
            while (tree.feature[id] >= 0) {
                const auto f = static_cast<std::uint32_t>(tree.feature[id]);
                id = dense[f] <= tree.threshold[id] ? tree.left[id] : tree.right[id];
            }
            const auto total =
                static_cast<double>(tree.count0[id]) + static_cast<double>(tree.count1[id]);
            s0 += static_cast<double>(tree.count0[id]) / total;
            s1 += static_cast<double>(tree.count1[id]) / total;
        }
        const auto t = static_cast<double>(m.trees.size());
        proba.at(i, 0) = s0 / t;
        proba.at(i, 1) = s1 / t;

        for (std::uint32_t c : cols) dense[c] = 0.0;
    }
    return proba;
}

}  // namespace sarcbench
