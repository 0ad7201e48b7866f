// Test-only oracles, kept independent of the library's implementation paths:
// direct-formula metrics, exhaustive Bayes enumeration, a dense linear solve
// for the damped stationary distribution, and plain normal-equation least
// squares.
#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

// -- classification metrics by direct counting --------------------------------

struct ClassNumbers {
    double precision = 0, recall = 0, f1 = 0;
    std::size_t support = 0;
};

struct MetricNumbers {
    std::map<int, ClassNumbers> per_class;
    double micro_p = 0, micro_r = 0, micro_f1 = 0;
    double macro_p = 0, macro_r = 0, macro_f1 = 0;
    double weighted_p = 0, weighted_r = 0, weighted_f1 = 0;
};

inline MetricNumbers classification_metrics(const std::vector<int>& y_true,
                                            const std::vector<int>& y_pred, int n_classes) {
    MetricNumbers m;
    double tp_all = 0, fp_all = 0, fn_all = 0;
    for (int c = 0; c < n_classes; ++c) {
        double tp = 0, fp = 0, fn = 0;
        std::size_t support = 0;
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            if (y_true[i] == c) ++support;
            if (y_pred[i] == c && y_true[i] == c) tp += 1;
            if (y_pred[i] == c && y_true[i] != c) fp += 1;
            if (y_pred[i] != c && y_true[i] == c) fn += 1;
        }
        ClassNumbers cn;
        cn.support = support;
        cn.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        cn.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        cn.f1 = cn.precision + cn.recall > 0
                    ? 2 * cn.precision * cn.recall / (cn.precision + cn.recall)
                    : 0.0;
        m.per_class[c] = cn;
        tp_all += tp;
        fp_all += fp;
        fn_all += fn;
        m.macro_p += cn.precision;
        m.macro_r += cn.recall;
        m.macro_f1 += cn.f1;
        double w = static_cast<double>(support) / static_cast<double>(y_true.size());
        m.weighted_p += w * cn.precision;
        m.weighted_r += w * cn.recall;
        m.weighted_f1 += w * cn.f1;
    }
    m.macro_p /= n_classes;
    m.macro_r /= n_classes;
    m.macro_f1 /= n_classes;
    m.micro_p = tp_all + fp_all > 0 ? tp_all / (tp_all + fp_all) : 0.0;
    m.micro_r = tp_all + fn_all > 0 ? tp_all / (tp_all + fn_all) : 0.0;
    m.micro_f1 = m.micro_p + m.micro_r > 0 ? 2 * m.micro_p * m.micro_r / (m.micro_p + m.micro_r)
                                           : 0.0;
    return m;
}

struct RegressionNumbers {
    double r2 = 0, rmse = 0, mae = 0, evar = 0;
};

inline RegressionNumbers regression_metrics(const std::vector<double>& y,
                                            const std::vector<double>& yhat) {
    RegressionNumbers m;
    const double n = static_cast<double>(y.size());
    double mean = 0;
    for (double v : y) mean += v;
    mean /= n;
    double ss_res = 0, ss_tot = 0, abs_sum = 0, err_sum = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double e = y[i] - yhat[i];
        ss_res += e * e;
        abs_sum += std::fabs(e);
        ss_tot += (y[i] - mean) * (y[i] - mean);
        err_sum += e;
    }
    double err_mean = err_sum / n;
    double err_var = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double e = y[i] - yhat[i] - err_mean;
        err_var += e * e;
    }
    m.rmse = std::sqrt(ss_res / n);
    m.mae = abs_sum / n;
    m.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
    m.evar = ss_tot > 0 ? 1.0 - err_var / ss_tot : 0.0;
    return m;
}

// -- exhaustive Bayes enumeration ----------------------------------------------
//
// P(c | x) by explicit products of smoothed likelihoods over the count
// vector, normalized over classes. Works directly on the training corpus.

inline std::vector<double> nb_posterior_brute_force(
    const std::vector<std::vector<double>>& train_counts, const std::vector<int>& labels,
    double alpha, const std::vector<double>& x) {
    alpha = std::max(alpha, 1e-9);
    std::set<int> class_set(labels.begin(), labels.end());
    std::vector<int> classes(class_set.begin(), class_set.end());
    const std::size_t d = train_counts.front().size();

    std::vector<double> joint;
    for (int c : classes) {
        double docs_c = 0;
        std::vector<double> feature_sum(d, 0.0);
        double total_c = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] != c) continue;
            docs_c += 1;
            for (std::size_t j = 0; j < d; ++j) {
                feature_sum[j] += train_counts[i][j];
                total_c += train_counts[i][j];
            }
        }
        double prior = docs_c / static_cast<double>(labels.size());
        // product of theta^count computed in log space to survive large counts
        double log_prob = std::log(prior);
        for (std::size_t j = 0; j < d; ++j) {
            double theta = (feature_sum[j] + alpha) / (total_c + alpha * static_cast<double>(d));
            log_prob += x[j] * std::log(theta);
        }
        joint.push_back(log_prob);
    }
    double mx = joint[0];
    for (double v : joint) mx = std::max(mx, v);
    double total = 0;
    for (double& v : joint) {
        v = std::exp(v - mx);
        total += v;
    }
    for (double& v : joint) v /= total;
    return joint; // aligned with sorted class order
}

// -- dense stationary distribution ------------------------------------------------
//
// Solves p = (1-d)/n + d * M^T p directly by Gaussian elimination on
// (I - d M^T); independent of the power-iteration path.

inline std::vector<double> stationary_by_linear_solve(const std::vector<std::vector<double>>& m,
                                                      double damping) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, (1.0 - damping) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = (i == j ? 1.0 : 0.0) - damping * m[j][i];

    // plain Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> p(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * p[j];
        p[i] = s / a[i][i];
    }
    return p;
}

// -- ordinary least squares by normal equations -----------------------------------

inline std::vector<double> ols_normal_equations(const std::vector<std::vector<double>>& x,
                                                const std::vector<double>& y) {
    const std::size_t n = x.size(), d = x[0].size();
    std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
    std::vector<double> b(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < d; ++p) {
            b[p] += x[i][p] * y[i];
            for (std::size_t q = 0; q < d; ++q) a[p][q] += x[i][p] * x[i][q];
        }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < d; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < d; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> beta(d, 0.0);
    for (std::size_t i = d; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < d; ++j) s -= a[i][j] * beta[j];
        beta[i] = s / a[i][i];
    }
    return beta;
}

} // namespace oracles
