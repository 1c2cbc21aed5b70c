#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>

#include "sarcbench/errors.hpp"
#include "sarcbench/models.hpp"

namespace sarcbench {

namespace {

// ln(1 + exp(t)) without overflow for large |t|.
double softplus(double t) {
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void check_linear_inputs(const CsrMatrix& X, std::span<const int> y) {
    if (y.size() != X.n_rows) {
        throw ShapeError("linear training: label count does not match row count");
    }
    std::array<std::size_t, 2> counts{0, 0};
    for (int label : y) {
        if (label != 0 && label != 1) {
            throw ArgumentError("linear training: labels must be 0 or 1");
        }
        ++counts[label];
    }
    if (counts[0] == 0 || counts[1] == 0) {
        throw TrainError("linear training: both classes must be present");
    }
}

struct MinimizeResult {
    std::vector<double> theta;
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

// Limited-memory BFGS with Armijo backtracking. Convergence is declared
// on the gradient infinity-norm; a failed line search ends the run with
// converged == false. Deterministic: no randomness, fixed history size.
MinimizeResult lbfgs_minimize(const std::function<ObjectiveEval(std::span<const double>)>& f,
                              std::vector<double> theta, double tol, std::size_t max_iter) {
    constexpr std::size_t kHistory = 10;
    constexpr double kArmijoC1 = 1e-4;

    const std::size_t n = theta.size();
    ObjectiveEval cur = f(theta);

    std::deque<std::vector<double>> s_hist;
    std::deque<std::vector<double>> y_hist;
    std::deque<double> rho_hist;

    MinimizeResult result;
    std::vector<double> direction(n);
    std::vector<double> candidate(n);

    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        if (inf_norm(cur.grad) <= tol) {
            result.converged = true;
            break;
        }

        // Two-loop recursion: direction = -H * grad.
        direction = cur.grad;
        std::vector<double> alpha_hist(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha_hist[k] = rho_hist[k] * dot(s_hist[k], direction);
            for (std::size_t i = 0; i < n; ++i) direction[i] -= alpha_hist[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const auto& s = s_hist.back();
            const auto& yv = y_hist.back();
            const double gamma = dot(s, yv) / dot(yv, yv);
            for (double& d : direction) d *= gamma;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], direction);
            for (std::size_t i = 0; i < n; ++i) {
                direction[i] += (alpha_hist[k] - beta) * s_hist[k][i];
            }
        }
        for (double& d : direction) d = -d;

        double descent = dot(cur.grad, direction);
        if (!(descent < 0.0)) {
            // Curvature history no longer describes the objective; fall
            // back to steepest descent.
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t i = 0; i < n; ++i) direction[i] = -cur.grad[i];
            descent = -dot(cur.grad, cur.grad);
        }

        double step = s_hist.empty() ? std::min(1.0, 1.0 / std::max(1.0, inf_norm(cur.grad)))
                                     : 1.0;
        ObjectiveEval next;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            for (std::size_t i = 0; i < n; ++i) candidate[i] = theta[i] + step * direction[i];
            next = f(candidate);
            if (next.value <= cur.value + kArmijoC1 * step * descent) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> s_vec(n);
        std::vector<double> y_vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            s_vec[i] = candidate[i] - theta[i];
            y_vec[i] = next.grad[i] - cur.grad[i];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kHistory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        theta = candidate;
        cur = std::move(next);
    }
    if (!result.converged && iter == max_iter && inf_norm(cur.grad) <= tol) {
        result.converged = true;
    }

    result.theta = std::move(theta);
    result.value = cur.value;
    result.iterations = iter;
    return result;
}

LinearModel pack_model(MinimizeResult res, std::size_t d, LinearKind kind) {
    LinearModel m;
    m.weights.assign(res.theta.begin(), res.theta.begin() + static_cast<std::ptrdiff_t>(d));
    m.bias = res.theta[d];
    m.kind = kind;
    m.converged = res.converged;
    m.iterations = res.iterations;
    return m;
}

}  // namespace

ObjectiveEval logreg_objective(const CsrMatrix& X, std::span<const int> y,
                               std::span<const double> theta, double reg_c) {
    const std::size_t d = X.n_cols;
    if (theta.size() != d + 1) throw ShapeError("logreg_objective: theta must have D+1 entries");

    ObjectiveEval out;
    out.grad.assign(d + 1, 0.0);
    const std::span<const double> w = theta.first(d);
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        const double yt = y[i] == 1 ? 1.0 : -1.0;
        const double z = row_dot_dense(X, i, w) + theta[d];
        const double t = -yt * z;
        out.value += softplus(t);
        const double coef = -yt / (1.0 + std::exp(-t));  // -yt * sigmoid(-yt z)
        const auto cols = X.row_cols(i);
        const auto vals = X.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) out.grad[cols[k]] += coef * vals[k];
        out.grad[d] += coef;
    }
    for (std::size_t j = 0; j < d; ++j) {
        out.value += w[j] * w[j] / (2.0 * reg_c);
        out.grad[j] += w[j] / reg_c;
    }
    return out;
}

ObjectiveEval svm_objective(const CsrMatrix& X, std::span<const int> y,
                            std::span<const double> theta, double reg_c) {
    const std::size_t d = X.n_cols;
    if (theta.size() != d + 1) throw ShapeError("svm_objective: theta must have D+1 entries");

    ObjectiveEval out;
    out.grad.assign(d + 1, 0.0);
    const std::span<const double> w = theta.first(d);
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        const double yt = y[i] == 1 ? 1.0 : -1.0;
        const double z = row_dot_dense(X, i, w) + theta[d];
        const double margin = 1.0 - yt * z;
        if (margin <= 0.0) continue;
        out.value += reg_c * margin * margin;
        const double coef = -2.0 * reg_c * yt * margin;
        const auto cols = X.row_cols(i);
        const auto vals = X.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) out.grad[cols[k]] += coef * vals[k];
        out.grad[d] += coef;
    }
    for (std::size_t j = 0; j < d; ++j) {
        out.value += 0.5 * w[j] * w[j];
        out.grad[j] += w[j];
    }
    return out;
}

LinearModel train_logreg(const CsrMatrix& X, std::span<const int> y, const TrainConfig& cfg) {
    check_linear_inputs(X, y);
    auto objective = [&](std::span<const double> theta) {
        return logreg_objective(X, y, theta, cfg.lr_reg_c);
    };
    MinimizeResult res = lbfgs_minimize(objective, std::vector<double>(X.n_cols + 1, 0.0),
                                        cfg.lr_tol, cfg.lr_max_iter);
    return pack_model(std::move(res), X.n_cols, LinearKind::logistic);
}

LinearModel train_linear_svm(const CsrMatrix& X, std::span<const int> y,
                             const TrainConfig& cfg) {
    check_linear_inputs(X, y);
    auto objective = [&](std::span<const double> theta) {
        return svm_objective(X, y, theta, cfg.svm_reg_c);
    };
    MinimizeResult res = lbfgs_minimize(objective, std::vector<double>(X.n_cols + 1, 0.0),
                                        cfg.svm_tol, cfg.svm_max_iter);
    return pack_model(std::move(res), X.n_cols, LinearKind::svm);
}

std::vector<double> linear_decision(const LinearModel& m, const CsrMatrix& X) {
    if (X.n_cols != m.weights.size()) {
        throw ShapeError("linear_decision: matrix width " + std::to_string(X.n_cols) +
                         " does not match model width " + std::to_string(m.weights.size()));
    }
    std::vector<double> scores(X.n_rows);
    for (std::size_t i = 0; i < X.n_rows; ++i) {
        scores[i] = row_dot_dense(X, i, m.weights) + m.bias;
    }
    return scores;
}

std::vector<int> linear_predict(const LinearModel& m, const CsrMatrix& X) {
    const std::vector<double> scores = linear_decision(m, X);
    std::vector<int> labels(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] > 0.0 ? 1 : 0;
    return labels;
}

}  // namespace sarcbench
