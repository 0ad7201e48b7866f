#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "webcred/linalg.hpp"
#include "webcred/text.hpp"

namespace webcred::feat {

namespace detail {

// term-by-sentence TF-IDF matrix with the smooth idf (1 + ln(n/df)) so that a
// term present in every sentence still carries weight.
inline linalg::Matrix tfidf_term_sentence(const std::vector<std::vector<std::string>>& docs) {
    std::map<std::string, std::size_t> term_ids;
    for (const auto& doc : docs)
        for (const auto& tok : doc) term_ids.emplace(tok, 0);
    std::size_t next = 0;
    for (auto& [term, id] : term_ids) id = next++;

    const std::size_t n_terms = term_ids.size();
    const std::size_t n_docs = docs.size();
    linalg::Matrix tf(n_terms, n_docs, 0.0);
    for (std::size_t s = 0; s < n_docs; ++s)
        for (const auto& tok : docs[s]) tf.at(term_ids[tok], s) += 1.0;

    for (std::size_t t = 0; t < n_terms; ++t) {
        double df = 0.0;
        for (std::size_t s = 0; s < n_docs; ++s)
            if (tf.at(t, s) > 0) df += 1.0;
        double idf = 1.0 + std::log(static_cast<double>(n_docs) / df);
        for (std::size_t s = 0; s < n_docs; ++s) tf.at(t, s) *= idf;
    }
    return tf;
}

inline std::vector<std::vector<std::string>> tokenize_all(const std::vector<std::string>& sents) {
    std::vector<std::vector<std::string>> out;
    out.reserve(sents.size());
    for (const auto& s : sents) out.push_back(text::tokenize(s));
    return out;
}

inline std::vector<std::size_t> top_n_by_score(const std::vector<double>& scores, std::size_t n) {
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b]; // stable: ties keep original order
    });
    if (order.size() > n) order.resize(n);
    return order;
}

} // namespace detail

struct LexRankParams {
    double similarity_threshold = 0.1;
    double damping = 0.85;
    double tolerance = 1e-6;
    int max_iterations = 200;
};

// Damped stationary distribution over the thresholded cosine-similarity
// graph. Rows without any above-threshold neighbor distribute uniformly;
// self-similarity is not an edge.
inline std::vector<double> lexrank_centrality(const std::vector<std::string>& sentences,
                                              const LexRankParams& params = {}) {
    const std::size_t n = sentences.size();
    if (n == 0) return {};
    if (n == 1) return {1.0};

    auto docs = detail::tokenize_all(sentences);
    linalg::Matrix tfidf = detail::tfidf_term_sentence(docs);
    std::vector<std::vector<double>> cols(n, std::vector<double>(tfidf.rows, 0.0));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < tfidf.rows; ++t) cols[s][t] = tfidf.at(t, s);

    // row-stochastic transition matrix
    linalg::Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double sim = linalg::cosine(cols[i], cols[j]);
            if (sim >= params.similarity_threshold) {
                m.at(i, j) = sim;
                row_sum += sim;
            }
        }
        if (row_sum > 0) {
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) /= row_sum;
        } else {
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = 1.0 / static_cast<double>(n);
        }
    }

    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    const double teleport = (1.0 - params.damping) / static_cast<double>(n);
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        std::vector<double> next(n, teleport);
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) next[j] += params.damping * p[i] * m.at(i, j);
        }
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::fabs(next[j] - p[j]));
        p = std::move(next);
        if (diff < params.tolerance) break;
    }
    return p;
}

// Indices of the N most central sentences, original order among ties; all
// indices when there are fewer than N sentences.
inline std::vector<std::size_t> lexrank_top(const std::vector<std::string>& sentences,
                                            std::size_t n, const LexRankParams& params = {}) {
    return detail::top_n_by_score(lexrank_centrality(sentences, params), n);
}

// Steinberger-Jezek LSA sentence scores: sqrt(sum_k (sigma_k * v_{k,s})^2)
// over the top-k singular triplets, k = min(3, rank). Sentence columns are
// L2-normalized first so sentence length and rare-term idf mass cannot
// dominate the decomposition; computed from the eigen-decomposition of the
// sentence Gram matrix.
inline std::vector<double> lsa_scores(const std::vector<std::string>& sentences,
                                      std::size_t max_rank = 3) {
    const std::size_t n = sentences.size();
    if (n == 0) return {};
    auto docs = detail::tokenize_all(sentences);
    linalg::Matrix a = detail::tfidf_term_sentence(docs);
    if (a.rows == 0) return std::vector<double>(n, 0.0);

    for (std::size_t s = 0; s < n; ++s) {
        double norm_sq = 0.0;
        for (std::size_t t = 0; t < a.rows; ++t) norm_sq += a.at(t, s) * a.at(t, s);
        if (norm_sq > 0) {
            double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t t = 0; t < a.rows; ++t) a.at(t, s) *= inv;
        }
    }

    // gram(i,j) = <sentence_i, sentence_j>; eigenvalues are squared singular
    // values, eigenvectors the right singular vectors
    linalg::Matrix gram(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < a.rows; ++t) s += a.at(t, i) * a.at(t, j);
            gram.at(i, j) = s;
            gram.at(j, i) = s;
        }
    auto eigen = linalg::jacobi_eigen_symmetric(gram);
    double lambda_max = eigen.values.empty() ? 0.0 : std::max(eigen.values[0], 0.0);
    std::size_t rank = 0;
    for (double v : eigen.values)
        if (v > lambda_max * 1e-12 && v > 0) ++rank;
    std::size_t k = std::min(max_rank, rank);

    std::vector<double> scores(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double sv = eigen.values[j] * eigen.vectors[j][s] * eigen.vectors[j][s];
            acc += sv; // lambda * v^2 == (sigma * v)^2
        }
        scores[s] = std::sqrt(std::max(acc, 0.0));
    }
    return scores;
}

inline std::vector<std::size_t> lsa_top(const std::vector<std::string>& sentences, std::size_t n,
                                        std::size_t max_rank = 3) {
    return detail::top_n_by_score(lsa_scores(sentences, max_rank), n);
}

} // namespace webcred::feat
