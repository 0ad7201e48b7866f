#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/linalg.hpp"
#include "webcred/naive_bayes.hpp"
#include "webcred/rng.hpp"

namespace webcred::learn {

using Mat = std::vector<std::vector<double>>;

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// ---------------------------------------------------------------------------
// depth-limited regression tree, exact greedy splits, deterministic
// tie-breaking (lowest feature index, then lowest threshold)
// ---------------------------------------------------------------------------

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(const std::vector<double>& x) const {
        int idx = 0;
        while (nodes[static_cast<std::size_t>(idx)].feature >= 0) {
            const auto& n = nodes[static_cast<std::size_t>(idx)];
            idx = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(idx)].value;
    }
};

// leaf_value(rows) -> value stored at the leaf; residuals drive the splits.
template <typename LeafFn>
RegressionTree fit_regression_tree(const Mat& x, const std::vector<double>& residual,
                                   const std::vector<std::size_t>& rows, int max_depth,
                                   LeafFn&& leaf_value) {
    RegressionTree tree;

    struct Frame {
        std::vector<std::size_t> rows;
        int depth;
        int node_index;
    };

    auto make_leaf = [&](const std::vector<std::size_t>& node_rows) {
        TreeNode leaf;
        leaf.value = leaf_value(node_rows);
        return leaf;
    };

    std::vector<Frame> stack;
    tree.nodes.push_back(TreeNode{});
    stack.push_back({rows, 0, 0});

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        const auto& node_rows = frame.rows;

        double sum = 0.0;
        for (std::size_t r : node_rows) sum += residual[r];
        const double n = static_cast<double>(node_rows.size());

        bool can_split = frame.depth < max_depth && node_rows.size() >= 2;
        int best_feature = -1;
        double best_threshold = 0.0, best_gain = 1e-12;

        if (can_split) {
            const std::size_t n_features = x[node_rows[0]].size();
            std::vector<std::size_t> order(node_rows);
            for (std::size_t j = 0; j < n_features; ++j) {
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    double va = x[a][j], vb = x[b][j];
                    if (va != vb) return va < vb;
                    return a < b;
                });
                double left_sum = 0.0;
                double left_n = 0.0;
                for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                    left_sum += residual[order[k]];
                    left_n += 1.0;
                    double v = x[order[k]][j], v_next = x[order[k + 1]][j];
                    if (v == v_next) continue;
                    double right_sum = sum - left_sum;
                    double right_n = n - left_n;
                    double gain = left_sum * left_sum / left_n +
                                  right_sum * right_sum / right_n - sum * sum / n;
                    double threshold = v + (v_next - v) / 2.0;
                    if (gain > best_gain + 1e-15) {
                        best_gain = gain;
                        best_feature = static_cast<int>(j);
                        best_threshold = threshold;
                    }
                }
            }
        }

        if (best_feature < 0) {
            tree.nodes[static_cast<std::size_t>(frame.node_index)] = make_leaf(node_rows);
            continue;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : node_rows) {
            if (x[r][static_cast<std::size_t>(best_feature)] <= best_threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }

        TreeNode split;
        split.feature = best_feature;
        split.threshold = best_threshold;
        split.left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        split.right = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        tree.nodes[static_cast<std::size_t>(frame.node_index)] = split;

        stack.push_back({std::move(right_rows), frame.depth + 1, split.right});
        stack.push_back({std::move(left_rows), frame.depth + 1, split.left});
    }
    return tree;
}

// ---------------------------------------------------------------------------
// AdaBoost with decision stumps (SAMME weights)
// ---------------------------------------------------------------------------

struct Stump {
    int feature = 0;
    double threshold = 0.0;
    int polarity = 1; // +1: predict positive when value > threshold
    double alpha = 0.0;

    int predict(const std::vector<double>& x) const {
        double side = x[static_cast<std::size_t>(feature)] > threshold ? 1.0 : -1.0;
        return static_cast<int>(side) * polarity;
    }
};

struct AdaBoostParams {
    int rounds = 50;
};

// Binary AdaBoost over labels {0,1}. Margin = sum of alpha-weighted votes;
// predict_proba is the logistic of the margin.
class AdaBoostBinary {
public:
    void fit(const Mat& x, const std::vector<int>& y, const AdaBoostParams& params = {}) {
        if (x.empty() || x.size() != y.size()) throw Error("adaboost: bad training shape");
        std::set<int> label_set(y.begin(), y.end());
        if (label_set.size() != 2)
            throw DegenerateLabels("adaboost: binary labels required, got " +
                                   std::to_string(label_set.size()) + " class(es)");
        const std::size_t n = x.size();
        const std::size_t d = x[0].size();
        std::vector<double> sign(n);
        for (std::size_t i = 0; i < n; ++i) sign[i] = y[i] == 1 ? 1.0 : -1.0;

        std::vector<double> w(n, 1.0 / static_cast<double>(n));
        stumps_.clear();

        // per-feature value order, reused every round
        std::vector<std::vector<std::size_t>> orders(d);
        for (std::size_t j = 0; j < d; ++j) {
            orders[j].resize(n);
            std::iota(orders[j].begin(), orders[j].end(), 0u);
            std::sort(orders[j].begin(), orders[j].end(), [&](std::size_t a, std::size_t b) {
                if (x[a][j] != x[b][j]) return x[a][j] < x[b][j];
                return a < b;
            });
        }

        for (int round = 0; round < params.rounds; ++round) {
            Stump best;
            double best_err = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j) {
                const auto& order = orders[j];
                // err(+1, theta=-inf side): everything predicted positive
                double err_pos = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (sign[i] < 0) err_pos += w[i];
                double below_min = x[order[0]][j] - 1.0;
                // features and thresholds scan in ascending order, so keeping
                // only strict improvements realizes the smallest-threshold tie
                // rule
                auto consider = [&](double threshold, double err_polarity_pos) {
                    for (int polarity : {1, -1}) {
                        double err = polarity == 1 ? err_polarity_pos : 1.0 - err_polarity_pos;
                        if (err < best_err - 1e-15) {
                            best_err = err;
                            best.feature = static_cast<int>(j);
                            best.threshold = threshold;
                            best.polarity = polarity;
                        }
                    }
                };
                consider(below_min, err_pos);
                double err_run = err_pos;
                for (std::size_t k = 0; k < n; ++k) {
                    std::size_t i = order[k];
                    // moving row i to the "<= threshold" (negative) side
                    err_run += sign[i] > 0 ? w[i] : -w[i];
                    if (k + 1 < n && x[order[k + 1]][j] == x[i][j]) continue;
                    if (k + 1 == n) break; // all rows on one side: constant stump
                    double threshold = x[i][j] + (x[order[k + 1]][j] - x[i][j]) / 2.0;
                    consider(threshold, err_run);
                }
            }

            best_err = std::max(best_err, 0.0);
            if (best_err >= 0.5 - 1e-12 && !stumps_.empty()) break;
            if (best_err <= 0.0) {
                best.alpha = std::log(1e9); // perfect stump; cap and stop
                stumps_.push_back(best);
                break;
            }
            best.alpha = std::log((1.0 - best_err) / best_err);
            if (best.alpha <= 0.0) break;
            stumps_.push_back(best);

            double w_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                bool wrong = best.predict(x[i]) != (sign[i] > 0 ? 1 : -1);
                if (wrong) w[i] *= std::exp(best.alpha);
                w_sum += w[i];
            }
            for (double& wi : w) wi /= w_sum;
        }
        if (stumps_.empty()) throw Error("adaboost: no usable stump found");
    }

    double margin(const std::vector<double>& x) const {
        double m = 0.0;
        for (const auto& s : stumps_) m += s.alpha * s.predict(x);
        return m;
    }

    double positive_probability(const std::vector<double>& x) const { return sigmoid(margin(x)); }
    int predict(const std::vector<double>& x) const { return margin(x) >= 0 ? 1 : 0; }
    const std::vector<Stump>& stumps() const { return stumps_; }
    std::vector<Stump>& mutable_stumps() { return stumps_; }

private:
    std::vector<Stump> stumps_;
};

// ---------------------------------------------------------------------------
// gradient boosting (squared loss regression / logistic classification)
// ---------------------------------------------------------------------------

struct GradientBoostingParams {
    int n_trees = 100;
    int max_depth = 3;
    double learning_rate = 0.1;
};

class GradientBoostingRegressor {
public:
    void fit(const Mat& x, const std::vector<double>& y, const GradientBoostingParams& params = {}) {
        if (x.empty() || x.size() != y.size()) throw Error("gboost: bad training shape");
        params_ = params;
        base_ = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
        trees_.clear();
        bool constant = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
        if (constant) return; // model of the constant, zero trees

        std::vector<double> f(y.size(), base_);
        std::vector<std::size_t> all(y.size());
        std::iota(all.begin(), all.end(), 0u);
        for (int t = 0; t < params.n_trees; ++t) {
            std::vector<double> residual(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) residual[i] = y[i] - f[i];
            auto tree = fit_regression_tree(x, residual, all, params.max_depth,
                                            [&](const std::vector<std::size_t>& rows) {
                                                double s = 0.0;
                                                for (std::size_t r : rows) s += residual[r];
                                                return s / static_cast<double>(rows.size());
                                            });
            for (std::size_t i = 0; i < y.size(); ++i)
                f[i] += params.learning_rate * tree.predict(x[i]);
            trees_.push_back(std::move(tree));
        }
    }

    double predict(const std::vector<double>& x) const {
        double f = base_;
        for (const auto& tree : trees_) f += params_.learning_rate * tree.predict(x);
        return f;
    }

    double base() const { return base_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }
    GradientBoostingParams& mutable_params() { return params_; }
    double& mutable_base() { return base_; }
    std::vector<RegressionTree>& mutable_trees() { return trees_; }

private:
    GradientBoostingParams params_;
    double base_ = 0.0;
    std::vector<RegressionTree> trees_;
};

// Binary logistic gradient boosting; initial prediction is the prior
// log-odds, leaves take a single Newton step.
class GradientBoostingBinary {
public:
    void fit(const Mat& x, const std::vector<int>& y, const GradientBoostingParams& params = {}) {
        if (x.empty() || x.size() != y.size()) throw Error("gboost: bad training shape");
        params_ = params;
        trees_.clear();
        double pos = 0.0;
        for (int v : y) pos += v == 1 ? 1.0 : 0.0;
        double p = pos / static_cast<double>(y.size());
        if (p <= 0.0 || p >= 1.0) { // constant labels: prior carries everything
            base_ = p <= 0.0 ? -std::log(1e9) : std::log(1e9);
            return;
        }
        base_ = std::log(p / (1.0 - p));

        std::vector<double> f(y.size(), base_);
        std::vector<std::size_t> all(y.size());
        std::iota(all.begin(), all.end(), 0u);
        std::vector<double> residual(y.size());
        for (int t = 0; t < params.n_trees; ++t) {
            for (std::size_t i = 0; i < y.size(); ++i) {
                double pi = sigmoid(f[i]);
                residual[i] = (y[i] == 1 ? 1.0 : 0.0) - pi;
            }
            auto tree = fit_regression_tree(
                x, residual, all, params.max_depth, [&](const std::vector<std::size_t>& rows) {
                    double num = 0.0, den = 0.0;
                    for (std::size_t r : rows) {
                        double pi = sigmoid(f[r]);
                        num += residual[r];
                        den += pi * (1.0 - pi);
                    }
                    return num / std::max(den, 1e-12);
                });
            for (std::size_t i = 0; i < y.size(); ++i)
                f[i] += params.learning_rate * tree.predict(x[i]);
            trees_.push_back(std::move(tree));
        }
    }

    double decision(const std::vector<double>& x) const {
        double f = base_;
        for (const auto& tree : trees_) f += params_.learning_rate * tree.predict(x);
        return f;
    }

    double positive_probability(const std::vector<double>& x) const {
        return sigmoid(decision(x));
    }

    double base() const { return base_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }
    GradientBoostingParams& mutable_params() { return params_; }
    double& mutable_base() { return base_; }
    std::vector<RegressionTree>& mutable_trees() { return trees_; }

private:
    GradientBoostingParams params_;
    double base_ = 0.0;
    std::vector<RegressionTree> trees_;
};

// ---------------------------------------------------------------------------
// standardization (regressors share it)
// ---------------------------------------------------------------------------

struct Standardizer {
    std::vector<double> mean, scale;

    void fit(const Mat& x) {
        const std::size_t n = x.size(), d = x.empty() ? 0 : x[0].size();
        mean.assign(d, 0.0);
        scale.assign(d, 1.0);
        for (const auto& row : x)
            for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
        for (double& m : mean) m /= static_cast<double>(n);
        std::vector<double> var(d, 0.0);
        for (const auto& row : x)
            for (std::size_t j = 0; j < d; ++j) {
                double c = row[j] - mean[j];
                var[j] += c * c;
            }
        for (std::size_t j = 0; j < d; ++j) {
            double sd = std::sqrt(var[j] / static_cast<double>(n));
            scale[j] = sd > 1e-12 ? sd : 1.0; // constant features pass through as 0
        }
    }

    std::vector<double> transform(const std::vector<double>& row) const {
        std::vector<double> out(row.size());
        for (std::size_t j = 0; j < row.size() && j < mean.size(); ++j)
            out[j] = (row[j] - mean[j]) / scale[j];
        return out;
    }
};

// ---------------------------------------------------------------------------
// ridge regression (closed form, intercept unpenalized)
// ---------------------------------------------------------------------------

class RidgeRegressor {
public:
    void fit(const Mat& x, const std::vector<double>& y, double lambda) {
        if (x.empty() || x.size() != y.size()) throw Error("ridge: bad training shape");
        if (lambda < 0) throw Error("ridge: lambda must be nonnegative");
        lambda_ = lambda;
        scaler_.fit(x);
        const std::size_t n = x.size(), d = x[0].size();
        Mat z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = scaler_.transform(x[i]);
        intercept_ = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

        // normal equations on centered targets
        linalg::Matrix gram(d, d, 0.0);
        std::vector<double> xty(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double yc = y[i] - intercept_;
            for (std::size_t a = 0; a < d; ++a) {
                xty[a] += z[i][a] * yc;
                for (std::size_t b = a; b < d; ++b) gram.at(a, b) += z[i][a] * z[i][b];
            }
        }
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < a; ++b) gram.at(a, b) = gram.at(b, a);

        if (lambda > 0) {
            for (std::size_t a = 0; a < d; ++a) gram.at(a, a) += lambda;
            coef_ = linalg::solve(gram, xty);
        } else {
            // pseudo-inverse through the eigen-decomposition of X^T X
            auto eigen = linalg::jacobi_eigen_symmetric(gram);
            double lambda_max = eigen.values.empty() ? 0.0 : std::max(eigen.values[0], 0.0);
            coef_.assign(d, 0.0);
            for (std::size_t k = 0; k < eigen.values.size(); ++k) {
                if (eigen.values[k] <= lambda_max * 1e-10 || eigen.values[k] <= 0) continue;
                double proj = linalg::dot(eigen.vectors[k], xty) / eigen.values[k];
                for (std::size_t j = 0; j < d; ++j) coef_[j] += proj * eigen.vectors[k][j];
            }
        }
    }

    double predict(const std::vector<double>& x) const {
        return intercept_ + linalg::dot(coef_, scaler_.transform(x));
    }

    const std::vector<double>& coefficients() const { return coef_; }
    double intercept() const { return intercept_; }
    double lambda() const { return lambda_; }
    const Standardizer& scaler() const { return scaler_; }
    Standardizer& mutable_scaler() { return scaler_; }
    std::vector<double>& mutable_coefficients() { return coef_; }
    double& mutable_intercept() { return intercept_; }

private:
    Standardizer scaler_;
    std::vector<double> coef_;
    double intercept_ = 0.0;
    double lambda_ = 0.0;
};

// ---------------------------------------------------------------------------
// linear epsilon-insensitive SVR via stochastic subgradient descent
// ---------------------------------------------------------------------------

struct LinearSvrParams {
    double epsilon = 0.1;
    double lambda = 1e-3;
    int epochs = 200;
    std::uint64_t seed = 7;
};

class LinearSvr {
public:
    void fit(const Mat& x, const std::vector<double>& y, const LinearSvrParams& params = {}) {
        if (x.empty() || x.size() != y.size()) throw Error("svr: bad training shape");
        params_ = params;
        scaler_.fit(x);
        const std::size_t n = x.size(), d = x[0].size();
        Mat z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = scaler_.transform(x[i]);

        w_.assign(d, 0.0);
        b_ = 0.0;
        SplitMix64 rng(params.seed);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        std::size_t t = 0;
        // eta_t = eta0/sqrt(t): divergent step sum with square-summable decay,
        // stable for the small lambdas this model runs with
        const double eta0 = 0.5;
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            deterministic_shuffle(order, rng);
            for (std::size_t i : order) {
                ++t;
                double eta = eta0 / std::sqrt(static_cast<double>(t));
                double err = linalg::dot(w_, z[i]) + b_ - y[i];
                // L2 shrink applies every step; the tube term only outside it
                for (double& wj : w_) wj *= (1.0 - eta * params.lambda);
                if (err > params.epsilon) {
                    for (std::size_t j = 0; j < d; ++j) w_[j] -= eta * z[i][j];
                    b_ -= eta;
                } else if (err < -params.epsilon) {
                    for (std::size_t j = 0; j < d; ++j) w_[j] += eta * z[i][j];
                    b_ += eta;
                }
            }
        }
    }

    double predict(const std::vector<double>& x) const {
        return linalg::dot(w_, scaler_.transform(x)) + b_;
    }

    const std::vector<double>& weights() const { return w_; }
    double bias() const { return b_; }
    const LinearSvrParams& params() const { return params_; }
    const Standardizer& scaler() const { return scaler_; }
    Standardizer& mutable_scaler() { return scaler_; }
    std::vector<double>& mutable_weights() { return w_; }
    double& mutable_bias() { return b_; }
    LinearSvrParams& mutable_params() { return params_; }

private:
    LinearSvrParams params_;
    Standardizer scaler_;
    std::vector<double> w_;
    double b_ = 0.0;
};

// ---------------------------------------------------------------------------
// univariate feature selection
// ---------------------------------------------------------------------------

// One-way ANOVA F-score per feature; zero-variance features score 0, perfect
// in-class-constant separators score infinity.
inline std::vector<double> anova_f_scores(const Mat& x, const std::vector<int>& y) {
    if (x.empty() || x.size() != y.size()) throw Error("anova: bad shape");
    const std::size_t n = x.size(), d = x[0].size();
    std::set<int> class_set(y.begin(), y.end());
    std::vector<int> classes(class_set.begin(), class_set.end());
    const std::size_t k = classes.size();
    if (k < 2) throw DegenerateLabels("anova: need at least 2 classes");

    std::vector<double> scores(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double grand = 0.0;
        for (std::size_t i = 0; i < n; ++i) grand += x[i][j];
        grand /= static_cast<double>(n);
        double between = 0.0, within = 0.0;
        for (int c : classes) {
            double cmean = 0.0, cn = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (y[i] == c) {
                    cmean += x[i][j];
                    cn += 1.0;
                }
            cmean /= cn;
            between += cn * (cmean - grand) * (cmean - grand);
            for (std::size_t i = 0; i < n; ++i)
                if (y[i] == c) within += (x[i][j] - cmean) * (x[i][j] - cmean);
        }
        if (between <= 1e-300) {
            scores[j] = 0.0;
        } else if (within <= 1e-300) {
            scores[j] = std::numeric_limits<double>::infinity();
        } else {
            double ms_between = between / static_cast<double>(k - 1);
            double ms_within = within / static_cast<double>(n - k);
            scores[j] = ms_between / ms_within;
        }
    }
    return scores;
}

// Univariate linear regression F-score per feature.
inline std::vector<double> regression_f_scores(const Mat& x, const std::vector<double>& y) {
    if (x.empty() || x.size() != y.size()) throw Error("regression f: bad shape");
    const std::size_t n = x.size(), d = x[0].size();
    double ymean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double yvar = 0.0;
    for (double v : y) yvar += (v - ymean) * (v - ymean);

    std::vector<double> scores(d, 0.0);
    if (n < 3 || yvar <= 1e-300) return scores;
    for (std::size_t j = 0; j < d; ++j) {
        double xmean = 0.0;
        for (std::size_t i = 0; i < n; ++i) xmean += x[i][j];
        xmean /= static_cast<double>(n);
        double xvar = 0.0, cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double cx = x[i][j] - xmean;
            xvar += cx * cx;
            cov += cx * (y[i] - ymean);
        }
        if (xvar <= 1e-300) continue;
        double r2 = cov * cov / (xvar * yvar);
        if (r2 >= 1.0 - 1e-15) {
            scores[j] = std::numeric_limits<double>::infinity();
        } else {
            scores[j] = r2 / (1.0 - r2) * static_cast<double>(n - 2);
        }
    }
    return scores;
}

// Top-k by score, ties keep the lower index; returned indices ascending.
inline std::vector<std::size_t> select_top_k(const std::vector<double>& scores, std::size_t k) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    k = std::min(k, order.size());
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

// Keep the top ceil(percentile% of d) features; indices ascending.
inline std::vector<std::size_t> select_top_percentile(const std::vector<double>& scores,
                                                      double percentile) {
    const std::size_t d = scores.size();
    if (d == 0) return {};
    std::size_t keep = percentile >= 100.0
                           ? d
                           : static_cast<std::size_t>(
                                 std::ceil(percentile / 100.0 * static_cast<double>(d)));
    keep = std::min(std::max<std::size_t>(keep, 1), d);
    return select_top_k(scores, keep);
}

inline Mat apply_mask(const Mat& x, const std::vector<std::size_t>& mask) {
    Mat out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i].reserve(mask.size());
        for (std::size_t j : mask) out[i].push_back(x[i][j]);
    }
    return out;
}

inline std::vector<double> apply_mask_row(const std::vector<double>& row,
                                          const std::vector<std::size_t>& mask) {
    std::vector<double> out;
    out.reserve(mask.size());
    for (std::size_t j : mask) out.push_back(row[j]);
    return out;
}

// ---------------------------------------------------------------------------
// lexical + html2seq stacking
// ---------------------------------------------------------------------------

// Class probabilities from a tag-window classifier, tagged with the folds its
// producer was trained on so leakage is detectable at stacking time.
struct TagProbs {
    std::vector<double> probs;
    std::uint32_t trained_folds_mask = 0; // bit f set: producer saw fold f
};

// Appends the tag-classifier probabilities to a lexical vector. Rejects
// probabilities produced by a model that was trained on the fold being
// evaluated.
inline std::vector<double> stack_features(const std::vector<double>& lexical,
                                          const TagProbs& tag_probs, int eval_fold) {
    if (eval_fold >= 0 && (tag_probs.trained_folds_mask >> eval_fold) & 1u)
        throw LeakageError("tag probabilities were trained on evaluation fold " +
                           std::to_string(eval_fold));
    std::vector<double> out(lexical);
    out.insert(out.end(), tag_probs.probs.begin(), tag_probs.probs.end());
    return out;
}

inline std::vector<std::string> stacked_schema(const std::vector<std::string>& lexical_schema,
                                               const std::vector<std::string>& class_names) {
    std::vector<std::string> out(lexical_schema);
    for (const auto& c : class_names) out.push_back("html2seq_prob_" + c);
    return out;
}

} // namespace webcred::learn
