#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/html2seq.hpp"
#include "webcred/model.hpp"
#include "webcred/rng.hpp"
#include "webcred/text.hpp"

namespace webcred::eval {

using learn::Mat;

// ---------------------------------------------------------------------------
// Likert class schemes
// ---------------------------------------------------------------------------

enum class ClassScheme { TwoClass, ThreeClass, FiveClass };

inline std::string scheme_name(ClassScheme scheme) {
    switch (scheme) {
        case ClassScheme::TwoClass: return "two_class";
        case ClassScheme::ThreeClass: return "three_class";
        case ClassScheme::FiveClass: return "five_class";
    }
    return "?";
}

inline ClassScheme parse_scheme(const std::string& name) {
    if (name == "two_class" || name == "2") return ClassScheme::TwoClass;
    if (name == "three_class" || name == "3") return ClassScheme::ThreeClass;
    if (name == "five_class" || name == "5") return ClassScheme::FiveClass;
    throw Error("unknown scheme: " + name + " (expected two_class|three_class|five_class)");
}

inline const std::vector<std::string>& scheme_class_names(ClassScheme scheme) {
    static const std::vector<std::string> two = {"low", "high"};
    static const std::vector<std::string> three = {"low", "medium", "high"};
    static const std::vector<std::string> five = {"1", "2", "3", "4", "5"};
    switch (scheme) {
        case ClassScheme::TwoClass: return two;
        case ClassScheme::ThreeClass: return three;
        case ClassScheme::FiveClass: return five;
    }
    return five;
}

// Likert 1-5 to class index under the scheme. 2-class: {1,2,3}->low, {4,5}->high;
// 3-class: {1,2}->low, {3}->medium, {4,5}->high; 5-class: identity.
inline int map_likert_index(int rating, ClassScheme scheme) {
    if (rating < 1 || rating > 5) throw InvalidRating(rating);
    switch (scheme) {
        case ClassScheme::TwoClass: return rating <= 3 ? 0 : 1;
        case ClassScheme::ThreeClass: return rating <= 2 ? 0 : (rating == 3 ? 1 : 2);
        case ClassScheme::FiveClass: return rating - 1;
    }
    return rating - 1;
}

inline std::string map_likert(int rating, ClassScheme scheme) {
    return scheme_class_names(scheme)[static_cast<std::size_t>(map_likert_index(rating, scheme))];
}

// ---------------------------------------------------------------------------
// metric reports
// ---------------------------------------------------------------------------

struct ClassMetrics {
    std::string name;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    std::size_t support = 0;
    bool degenerate_precision = false; // class never predicted
    bool degenerate_recall = false;    // class has no true members
};

struct MetricsReport {
    // classification
    std::vector<ClassMetrics> per_class;
    double micro_precision = 0, micro_recall = 0, micro_f1 = 0;
    double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
    double weighted_precision = 0, weighted_recall = 0, weighted_f1 = 0;
    std::size_t total = 0;

    // regression
    bool regression = false;
    double r2 = 0, rmse = 0, mae = 0, evar = 0;
    bool degenerate_target = false;

    std::string protocol; // filled by the harness

    std::string render() const {
        std::ostringstream out;
        char buf[160];
        if (!protocol.empty()) out << "# " << protocol << '\n';
        if (regression) {
            std::snprintf(buf, sizeof(buf), "r2 %.6f\nrmse %.6f\nmae %.6f\nevar %.6f\n", r2,
                          rmse, mae, evar);
            out << buf;
            if (degenerate_target) out << "# note: constant target, r2/evar reported as 0\n";
            return out.str();
        }
        out << "class\tprecision\trecall\tf1\tsupport\n";
        for (const auto& c : per_class) {
            std::snprintf(buf, sizeof(buf), "%s\t%.6f\t%.6f\t%.6f\t%zu%s\n", c.name.c_str(),
                          c.precision, c.recall, c.f1, c.support,
                          c.degenerate_precision ? "\t(never predicted)" : "");
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "micro\t%.6f\t%.6f\t%.6f\t%zu\n", micro_precision,
                      micro_recall, micro_f1, total);
        out << buf;
        std::snprintf(buf, sizeof(buf), "macro\t%.6f\t%.6f\t%.6f\t%zu\n", macro_precision,
                      macro_recall, macro_f1, total);
        out << buf;
        std::snprintf(buf, sizeof(buf), "weighted\t%.6f\t%.6f\t%.6f\t%zu\n", weighted_precision,
                      weighted_recall, weighted_f1, total);
        out << buf;
        return out.str();
    }
};

// Standard single-label classification metrics. Zero denominators report 0
// and set the degeneracy flag.
inline MetricsReport classification_report(const std::vector<int>& y_true,
                                           const std::vector<int>& y_pred,
                                           const std::vector<std::string>& class_order) {
    if (y_true.empty() || y_true.size() != y_pred.size()) throw EmptyEval();
    const std::size_t k = class_order.size();
    for (int v : y_true)
        if (v < 0 || static_cast<std::size_t>(v) >= k) throw Error("label outside class order");
    for (int v : y_pred)
        if (v < 0 || static_cast<std::size_t>(v) >= k) throw Error("label outside class order");

    std::vector<double> tp(k, 0), fp(k, 0), fn(k, 0);
    std::vector<std::size_t> support(k, 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        auto t = static_cast<std::size_t>(y_true[i]);
        auto p = static_cast<std::size_t>(y_pred[i]);
        ++support[t];
        if (t == p) tp[t] += 1;
        else {
            fp[p] += 1;
            fn[t] += 1;
        }
    }

    MetricsReport rep;
    rep.total = y_true.size();
    double tp_all = 0, fp_all = 0, fn_all = 0;
    for (std::size_t c = 0; c < k; ++c) {
        ClassMetrics m;
        m.name = class_order[c];
        m.support = support[c];
        double denom_p = tp[c] + fp[c];
        double denom_r = tp[c] + fn[c];
        m.degenerate_precision = denom_p == 0;
        m.degenerate_recall = denom_r == 0;
        m.precision = denom_p > 0 ? tp[c] / denom_p : 0.0;
        m.recall = denom_r > 0 ? tp[c] / denom_r : 0.0;
        double pr = m.precision + m.recall;
        m.f1 = pr > 0 ? 2 * m.precision * m.recall / pr : 0.0;
        rep.per_class.push_back(m);
        tp_all += tp[c];
        fp_all += fp[c];
        fn_all += fn[c];
    }

    rep.micro_precision = tp_all + fp_all > 0 ? tp_all / (tp_all + fp_all) : 0.0;
    rep.micro_recall = tp_all + fn_all > 0 ? tp_all / (tp_all + fn_all) : 0.0;
    double micro_pr = rep.micro_precision + rep.micro_recall;
    rep.micro_f1 = micro_pr > 0 ? 2 * rep.micro_precision * rep.micro_recall / micro_pr : 0.0;

    for (const auto& m : rep.per_class) {
        rep.macro_precision += m.precision;
        rep.macro_recall += m.recall;
        rep.macro_f1 += m.f1;
        double w = static_cast<double>(m.support) / static_cast<double>(rep.total);
        rep.weighted_precision += w * m.precision;
        rep.weighted_recall += w * m.recall;
        rep.weighted_f1 += w * m.f1;
    }
    rep.macro_precision /= static_cast<double>(k);
    rep.macro_recall /= static_cast<double>(k);
    rep.macro_f1 /= static_cast<double>(k);
    return rep;
}

// R^2, RMSE, MAE and explained variance; constant targets report r2/evar 0
// with the degeneracy flag set.
inline MetricsReport regression_report(const std::vector<double>& y_true,
                                       const std::vector<double>& y_pred) {
    if (y_true.empty() || y_true.size() != y_pred.size()) throw EmptyEval();
    MetricsReport rep;
    rep.regression = true;
    rep.total = y_true.size();
    const double n = static_cast<double>(y_true.size());

    double mean = std::accumulate(y_true.begin(), y_true.end(), 0.0) / n;
    double ss_res = 0, ss_tot = 0, abs_err = 0;
    double err_mean = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        double e = y_true[i] - y_pred[i];
        ss_res += e * e;
        abs_err += std::fabs(e);
        ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
        err_mean += e;
    }
    err_mean /= n;
    double err_var = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        double e = y_true[i] - y_pred[i];
        err_var += (e - err_mean) * (e - err_mean);
    }

    rep.rmse = std::sqrt(ss_res / n);
    rep.mae = abs_err / n;
    if (ss_tot <= 1e-300) {
        rep.degenerate_target = true;
        rep.r2 = 0.0;
        rep.evar = 0.0;
    } else {
        rep.r2 = 1.0 - ss_res / ss_tot;
        rep.evar = 1.0 - err_var / ss_tot;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// cross-validation harness
// ---------------------------------------------------------------------------

struct SelectionSpec {
    double value = 100.0;  // percentile by default
    bool as_count = false; // interpret value as an absolute top-K instead

    std::string describe() const {
        std::ostringstream out;
        out << (as_count ? "top_k=" : "percentile=") << value;
        return out.str();
    }
};

inline std::vector<std::size_t> fit_selection(const Mat& x_train, const std::vector<int>& y_train,
                                              const SelectionSpec& sel) {
    auto scores = learn::anova_f_scores(x_train, y_train);
    return sel.as_count ? learn::select_top_k(scores, static_cast<std::size_t>(sel.value))
                        : learn::select_top_percentile(scores, sel.value);
}

inline std::vector<std::size_t> fit_selection_regression(const Mat& x_train,
                                                         const std::vector<double>& y_train,
                                                         const SelectionSpec& sel) {
    auto scores = learn::regression_f_scores(x_train, y_train);
    return sel.as_count ? learn::select_top_k(scores, static_cast<std::size_t>(sel.value))
                        : learn::select_top_percentile(scores, sel.value);
}

// Deterministic stratified fold assignment: per class, shuffle then deal
// round-robin. Throws when any class has fewer members than folds.
inline std::vector<int> stratified_folds(const std::vector<int>& y, std::size_t n_classes,
                                         std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw Error("cross-validation needs folds >= 2");
    std::vector<int> fold_of(y.size(), -1);
    for (std::size_t c = 0; c < n_classes; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == static_cast<int>(c)) members.push_back(i);
        if (members.empty()) continue;
        if (members.size() < folds)
            throw StratificationError(
                "class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                " members but " + std::to_string(folds) +
                " folds requested; reduce --folds or merge classes");
        SplitMix64 rng(seed ^ (0x9E37ULL * (c + 1)));
        deterministic_shuffle(members, rng);
        for (std::size_t i = 0; i < members.size(); ++i)
            fold_of[members[i]] = static_cast<int>(i % folds);
    }
    return fold_of;
}

inline std::vector<int> plain_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw Error("cross-validation needs folds >= 2");
    if (n < folds) throw StratificationError("dataset smaller than fold count");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    SplitMix64 rng(seed);
    deterministic_shuffle(order, rng);
    std::vector<int> fold_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = static_cast<int>(i % folds);
    return fold_of;
}

struct CvResult {
    MetricsReport report;
    std::vector<int> fold_of_row;
    std::vector<int> pooled_pred;           // classification
    std::vector<double> pooled_value;       // regression
    std::vector<std::vector<double>> pooled_proba; // classification, per row
};

// Per-fold fit with selection fitted on the training fold only; metrics over
// the pooled out-of-fold predictions.
inline CvResult cross_validate_classification(const Mat& x, const std::vector<int>& y,
                                              const std::vector<std::string>& class_names,
                                              const learn::LearnerSpec& spec,
                                              const SelectionSpec& sel, std::size_t folds,
                                              std::uint64_t seed) {
    if (x.empty() || x.size() != y.size()) throw EmptyEval();
    CvResult result;
    result.fold_of_row = stratified_folds(y, class_names.size(), folds, seed);
    result.pooled_pred.assign(y.size(), -1);
    result.pooled_proba.assign(y.size(), {});

    for (std::size_t fold = 0; fold < folds; ++fold) {
        Mat x_train;
        std::vector<int> y_train;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (result.fold_of_row[i] == static_cast<int>(fold)) test_rows.push_back(i);
            else {
                x_train.push_back(x[i]);
                y_train.push_back(y[i]);
            }
        }
        if (test_rows.empty()) continue;
        auto mask = fit_selection(x_train, y_train, sel);
        learn::ClassifierModel model;
        model.fit(learn::apply_mask(x_train, mask), y_train, class_names.size(), spec);
        for (std::size_t i : test_rows) {
            auto probs = model.predict_proba(learn::apply_mask_row(x[i], mask));
            std::size_t best = 0;
            for (std::size_t c = 1; c < probs.size(); ++c)
                if (probs[c] > probs[best]) best = c;
            result.pooled_pred[i] = static_cast<int>(best);
            result.pooled_proba[i] = std::move(probs);
        }
    }
    result.report = classification_report(y, result.pooled_pred, class_names);
    result.report.protocol = "stratified-" + std::to_string(folds) + "fold-cv seed=" +
                             std::to_string(seed) + " learner=" + spec.name() + " " +
                             sel.describe();
    return result;
}

inline CvResult cross_validate_regression(const Mat& x, const std::vector<double>& y,
                                          const learn::LearnerSpec& spec,
                                          const SelectionSpec& sel, std::size_t folds,
                                          std::uint64_t seed) {
    if (x.empty() || x.size() != y.size()) throw EmptyEval();
    CvResult result;
    result.fold_of_row = plain_folds(y.size(), folds, seed);
    result.pooled_value.assign(y.size(), 0.0);

    for (std::size_t fold = 0; fold < folds; ++fold) {
        Mat x_train;
        std::vector<double> y_train;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (result.fold_of_row[i] == static_cast<int>(fold)) test_rows.push_back(i);
            else {
                x_train.push_back(x[i]);
                y_train.push_back(y[i]);
            }
        }
        if (test_rows.empty()) continue;
        auto mask = fit_selection_regression(x_train, y_train, sel);
        learn::RegressorModel model;
        model.fit(learn::apply_mask(x_train, mask), y_train, spec);
        for (std::size_t i : test_rows)
            result.pooled_value[i] = model.predict(learn::apply_mask_row(x[i], mask));
    }
    result.report = regression_report(y, result.pooled_value);
    result.report.protocol = std::to_string(folds) + "fold-cv seed=" + std::to_string(seed) +
                             " learner=" + spec.name() + " " + sel.describe();
    return result;
}

// ---------------------------------------------------------------------------
// padding sweep over tag windows
// ---------------------------------------------------------------------------

struct SweepRow {
    std::size_t pad = 0;
    double weighted_f1 = 0.0;
    double macro_f1 = 0.0;
};

// For each pad: encode leading windows, cross-validate the tag-count
// classifier, report pooled F1. One corpus-level vocabulary is shared across
// pads.
inline std::vector<SweepRow> padding_sweep(const std::vector<std::vector<std::string>>& streams,
                                           const std::vector<int>& y,
                                           const std::vector<std::string>& class_names,
                                           const std::vector<std::size_t>& grid,
                                           const learn::LearnerSpec& spec, std::size_t folds,
                                           std::uint64_t seed) {
    if (grid.empty()) throw Error("padding sweep: empty grid");
    if (streams.size() != y.size() || streams.empty()) throw EmptyEval();
    auto vocab = html2seq::build_vocab(streams);

    std::vector<std::size_t> pads(grid);
    std::sort(pads.begin(), pads.end());

    std::vector<SweepRow> rows;
    for (std::size_t pad : pads) {
        Mat counts(streams.size());
        for (std::size_t i = 0; i < streams.size(); ++i)
            counts[i] = html2seq::window_to_counts(
                html2seq::encode_window(streams[i], vocab, pad), vocab);
        auto cv = cross_validate_classification(counts, y, class_names, spec, SelectionSpec{},
                                                folds, seed);
        rows.push_back({pad, cv.report.weighted_f1, cv.report.macro_f1});
    }
    return rows;
}

inline std::string render_sweep(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "pad\tweighted_f1\tmacro_f1\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu\t%.6f\t%.6f\n", r.pad, r.weighted_f1, r.macro_f1);
        out << buf;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// lexical + html2seq stacking evaluation
// ---------------------------------------------------------------------------

// Stacked cross-validation: the outer-fold tag classifier is trained on the
// outer training rows only; training-row probabilities come from an inner
// split so no row ever sees probabilities from a model trained on it.
inline CvResult cross_validate_stacked(const Mat& lexical, const Mat& tag_counts,
                                       const std::vector<int>& y,
                                       const std::vector<std::string>& class_names,
                                       const learn::LearnerSpec& lexical_spec,
                                       const learn::LearnerSpec& tag_spec,
                                       const SelectionSpec& sel, std::size_t folds,
                                       std::uint64_t seed, std::size_t inner_folds = 5) {
    if (lexical.size() != y.size() || tag_counts.size() != y.size() || y.empty())
        throw EmptyEval();
    if (folds > 31) throw Error("stacked cv: fold provenance mask supports at most 31 folds");
    CvResult result;
    result.fold_of_row = stratified_folds(y, class_names.size(), folds, seed);
    result.pooled_pred.assign(y.size(), -1);
    result.pooled_proba.assign(y.size(), {});

    for (std::size_t fold = 0; fold < folds; ++fold) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < y.size(); ++i)
            (result.fold_of_row[i] == static_cast<int>(fold) ? test_rows : train_rows)
                .push_back(i);
        if (test_rows.empty()) continue;

        std::vector<int> y_train;
        y_train.reserve(train_rows.size());
        for (std::size_t i : train_rows) y_train.push_back(y[i]);

        // out-of-fold tag probabilities for the training rows via inner CV
        std::size_t usable_inner = inner_folds;
        std::vector<int> inner_fold_of;
        while (true) {
            try {
                inner_fold_of = stratified_folds(y_train, class_names.size(), usable_inner,
                                                 seed ^ (fold + 1));
                break;
            } catch (const StratificationError&) {
                if (usable_inner <= 2) throw;
                --usable_inner;
            }
        }

        std::vector<learn::TagProbs> train_probs(train_rows.size());
        for (std::size_t inner = 0; inner < usable_inner; ++inner) {
            Mat x_in;
            std::vector<int> y_in;
            std::vector<std::size_t> holdout; // positions within train_rows
            for (std::size_t t = 0; t < train_rows.size(); ++t) {
                if (inner_fold_of[t] == static_cast<int>(inner)) holdout.push_back(t);
                else {
                    x_in.push_back(tag_counts[train_rows[t]]);
                    y_in.push_back(y_train[t]);
                }
            }
            if (holdout.empty()) continue;
            learn::ClassifierModel inner_model;
            inner_model.fit(x_in, y_in, class_names.size(), tag_spec);
            for (std::size_t t : holdout) {
                train_probs[t].probs = inner_model.predict_proba(tag_counts[train_rows[t]]);
                // the inner producer saw every fold except the outer test fold
                train_probs[t].trained_folds_mask =
                    ~(1u << fold) & ((1u << folds) - 1u);
            }
        }

        // tag model for the test rows: trained on the full outer training part
        learn::ClassifierModel outer_tag_model;
        {
            Mat x_tags;
            for (std::size_t i : train_rows) x_tags.push_back(tag_counts[i]);
            outer_tag_model.fit(x_tags, y_train, class_names.size(), tag_spec);
        }

        // assemble the stacked training matrix
        Mat x_train_stacked;
        x_train_stacked.reserve(train_rows.size());
        for (std::size_t t = 0; t < train_rows.size(); ++t)
            x_train_stacked.push_back(
                learn::stack_features(lexical[train_rows[t]], train_probs[t],
                                      static_cast<int>(fold)));

        auto mask = fit_selection(x_train_stacked, y_train, sel);
        learn::ClassifierModel model;
        model.fit(learn::apply_mask(x_train_stacked, mask), y_train, class_names.size(),
                  lexical_spec);

        for (std::size_t i : test_rows) {
            learn::TagProbs probs;
            probs.probs = outer_tag_model.predict_proba(tag_counts[i]);
            probs.trained_folds_mask = ~(1u << fold) & ((1u << folds) - 1u);
            auto stacked = learn::stack_features(lexical[i], probs, static_cast<int>(fold));
            auto p = model.predict_proba(learn::apply_mask_row(stacked, mask));
            std::size_t best = 0;
            for (std::size_t c = 1; c < p.size(); ++c)
                if (p[c] > p[best]) best = c;
            result.pooled_pred[i] = static_cast<int>(best);
            result.pooled_proba[i] = std::move(p);
        }
    }
    result.report = classification_report(y, result.pooled_pred, class_names);
    result.report.protocol = "stacked stratified-" + std::to_string(folds) + "fold-cv seed=" +
                             std::to_string(seed) + " lexical=" + lexical_spec.name() +
                             " tags=" + tag_spec.name() + " " + sel.describe();
    return result;
}

} // namespace webcred::eval
