#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/text.hpp"

namespace webcred::learn {

// Multinomial naive Bayes over nonnegative count vectors. Laplace smoothing
// with the alpha floor keeps log-likelihoods finite for unseen features.
class MultinomialNb {
public:
    void fit(const std::vector<std::vector<double>>& counts, const std::vector<int>& labels,
             double alpha = 1.0) {
        if (counts.size() != labels.size() || counts.empty())
            throw Error("naive bayes: counts/labels size mismatch or empty");
        alpha = std::max(alpha, 1e-9);
        std::set<int> label_set(labels.begin(), labels.end());
        if (label_set.size() < 2)
            throw DegenerateLabels("naive bayes needs at least 2 classes, got " +
                                   std::to_string(label_set.size()));
        classes_.assign(label_set.begin(), label_set.end());
        const std::size_t n_features = counts.front().size();
        const std::size_t n_classes = classes_.size();
        std::vector<double> class_docs(n_classes, 0.0);
        std::vector<std::vector<double>> feature_totals(n_classes,
                                                        std::vector<double>(n_features, 0.0));
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i].size() != n_features)
                throw Error("naive bayes: ragged count matrix");
            std::size_t c = class_index(labels[i]);
            class_docs[c] += 1.0;
            for (std::size_t j = 0; j < n_features; ++j) {
                if (counts[i][j] < 0) throw Error("naive bayes: negative count");
                feature_totals[c][j] += counts[i][j];
            }
        }
        log_prior_.resize(n_classes);
        log_likelihood_.assign(n_classes, std::vector<double>(n_features, 0.0));
        for (std::size_t c = 0; c < n_classes; ++c) {
            log_prior_[c] = std::log(class_docs[c] / static_cast<double>(counts.size()));
            double total = 0.0;
            for (double v : feature_totals[c]) total += v;
            double denom = total + alpha * static_cast<double>(n_features);
            for (std::size_t j = 0; j < n_features; ++j)
                log_likelihood_[c][j] = std::log((feature_totals[c][j] + alpha) / denom);
        }
        n_features_ = n_features;
    }

    std::vector<double> predict_log_joint(const std::vector<double>& x) const {
        std::vector<double> joint(classes_.size());
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            double s = log_prior_[c];
            for (std::size_t j = 0; j < n_features_ && j < x.size(); ++j)
                s += x[j] * log_likelihood_[c][j];
            joint[c] = s;
        }
        return joint;
    }

    std::vector<double> predict_proba(const std::vector<double>& x) const {
        std::vector<double> joint = predict_log_joint(x);
        double mx = *std::max_element(joint.begin(), joint.end());
        double total = 0.0;
        for (double& v : joint) {
            v = std::exp(v - mx);
            total += v;
        }
        for (double& v : joint) v /= total;
        return joint;
    }

    int predict(const std::vector<double>& x) const {
        auto p = predict_proba(x);
        std::size_t best = 0;
        for (std::size_t c = 1; c < p.size(); ++c)
            if (p[c] > p[best]) best = c;
        return classes_[best];
    }

    const std::vector<int>& classes() const { return classes_; }
    const std::vector<double>& log_prior() const { return log_prior_; }
    const std::vector<std::vector<double>>& log_likelihood() const { return log_likelihood_; }

    // Rebuild from serialized parameters (model artifact round-trip).
    void restore(std::vector<int> classes, std::vector<double> log_prior,
                 std::vector<std::vector<double>> log_likelihood) {
        classes_ = std::move(classes);
        log_prior_ = std::move(log_prior);
        log_likelihood_ = std::move(log_likelihood);
        n_features_ = log_likelihood_.empty() ? 0 : log_likelihood_.front().size();
    }

private:
    std::size_t class_index(int label) const {
        return static_cast<std::size_t>(
            std::lower_bound(classes_.begin(), classes_.end(), label) - classes_.begin());
    }

    std::vector<int> classes_;
    std::vector<double> log_prior_;
    std::vector<std::vector<double>> log_likelihood_;
    std::size_t n_features_ = 0;
};

// Text front-end: vocabulary built from the training documents, unseen tokens
// dropped at prediction time.
class TextNb {
public:
    void fit(const std::vector<std::string>& docs, const std::vector<int>& labels,
             double alpha = 1.0) {
        vocab_.clear();
        std::map<std::string, int> sorted_vocab;
        std::vector<std::vector<std::string>> token_docs;
        token_docs.reserve(docs.size());
        for (const auto& doc : docs) {
            token_docs.push_back(text::tokenize(doc));
            for (const auto& tok : token_docs.back()) sorted_vocab.emplace(tok, 0);
        }
        int next = 0;
        for (auto& [tok, id] : sorted_vocab) id = next++;
        vocab_.insert(sorted_vocab.begin(), sorted_vocab.end());
        std::vector<std::vector<double>> counts(docs.size(),
                                                std::vector<double>(sorted_vocab.size(), 0.0));
        for (std::size_t i = 0; i < token_docs.size(); ++i)
            for (const auto& tok : token_docs[i])
                counts[i][static_cast<std::size_t>(vocab_.at(tok))] += 1.0;
        nb_.fit(counts, labels, alpha);
    }

    // True when the text contains at least one in-vocabulary token.
    bool has_evidence(const std::string& doc) const {
        for (const auto& tok : text::tokenize(doc))
            if (vocab_.count(tok)) return true;
        return false;
    }

    std::vector<double> predict_proba(const std::string& doc) const {
        std::vector<double> x(vocab_.size(), 0.0);
        for (const auto& tok : text::tokenize(doc)) {
            auto it = vocab_.find(tok);
            if (it != vocab_.end()) x[static_cast<std::size_t>(it->second)] += 1.0;
        }
        return nb_.predict_proba(x);
    }

    const std::vector<int>& classes() const { return nb_.classes(); }
    const MultinomialNb& model() const { return nb_; }

private:
    std::unordered_map<std::string, int> vocab_;
    MultinomialNb nb_;
};

// Binary convenience wrapper: probability of the positive class (label 1),
// 0.5 when the text offers no in-vocabulary evidence.
class BinaryTextModel {
public:
    void fit(const std::vector<std::string>& docs, const std::vector<int>& labels,
             double alpha = 1.0) {
        nb_.fit(docs, labels, alpha);
    }

    double positive_probability(const std::string& doc) const {
        if (!nb_.has_evidence(doc)) return 0.5;
        auto probs = nb_.predict_proba(doc);
        const auto& classes = nb_.classes();
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (classes[c] == 1) return probs[c];
        return 0.5;
    }

private:
    TextNb nb_;
};

} // namespace webcred::learn
