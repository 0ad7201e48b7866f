// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL/SKIP line each. Exit code 0 iff nothing failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "synthetic.hpp"

#include "webcred/archive.hpp"
#include "webcred/cli.hpp"
#include "webcred/corpus.hpp"
#include "webcred/eval.hpp"
#include "webcred/features.hpp"
#include "webcred/naive_bayes.hpp"
#include "webcred/rng.hpp"
#include "webcred/snapshot.hpp"
#include "webcred/summarize.hpp"

using namespace webcred;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Fail;
    std::string detail;
};

int failures = 0;

// time_budget_secs <= 0 means no stated budget
void run(int number, const std::string& title, const std::function<Outcome()>& fn,
         double time_budget_secs = 0.0) {
    auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
        result = fn();
    } catch (const std::exception& e) {
        result.kind = Outcome::Fail;
        result.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.kind == Outcome::Pass && time_budget_secs > 0 && secs > time_budget_secs) {
        result.kind = Outcome::Fail;
        result.detail += " [over the " + std::to_string(time_budget_secs) + "s budget]";
    }
    const char* tag = result.kind == Outcome::Pass ? "PASS"
                      : result.kind == Outcome::Skip ? "SKIP"
                                                     : "FAIL";
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", tag, number, title.c_str(), secs,
                result.detail.empty() ? "" : " -- ", result.detail.c_str());
    std::fflush(stdout);
    if (result.kind == Outcome::Fail) ++failures;
}

struct TempTree {
    fs::path root;
    explicit TempTree(const std::string& tag) {
        root = fs::temp_directory_path() /
               ("webcred_accept_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
    std::string p(const std::string& name) const { return (root / name).string(); }
};

void seed_cache(const std::string& cache_dir, const std::vector<synthetic::PageSpec>& pages) {
    ingest::SnapshotStore store(cache_dir);
    for (const auto& page : pages) {
        ingest::RawDocument doc;
        doc.url = page.url;
        doc.bytes = page.html;
        doc.fetched_at = 1700000000;
        doc.status = 200;
        store.store(doc);
    }
}

void write_labels(const std::string& path, const std::vector<synthetic::PageSpec>& pages) {
    std::ofstream out(path, std::ios::trunc);
    out << "url,rating\n";
    for (const auto& page : pages) out << page.url << ',' << page.rating << '\n';
}

// ---------------------------------------------------------------------------

Outcome criterion1_metric_oracles() {
    SplitMix64 rng(1001);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.below(50);
        int k = 2 + static_cast<int>(rng.below(2));
        std::vector<int> y_true(n), y_pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            y_true[i] = static_cast<int>(rng.below(static_cast<std::size_t>(k)));
            y_pred[i] = static_cast<int>(rng.below(static_cast<std::size_t>(k)));
        }
        std::vector<std::string> names;
        for (int c = 0; c < k; ++c) names.push_back("c" + std::to_string(c));
        auto rep = eval::classification_report(y_true, y_pred, names);
        auto want = oracles::classification_metrics(y_true, y_pred, k);
        for (int c = 0; c < k; ++c) {
            auto& got = rep.per_class[static_cast<std::size_t>(c)];
            if (std::fabs(got.precision - want.per_class[c].precision) >= 1e-9 ||
                std::fabs(got.recall - want.per_class[c].recall) >= 1e-9 ||
                std::fabs(got.f1 - want.per_class[c].f1) >= 1e-9)
                return {Outcome::Fail, "classification mismatch at trial " + std::to_string(trial)};
        }
        if (std::fabs(rep.micro_f1 - want.micro_f1) >= 1e-9 ||
            std::fabs(rep.macro_f1 - want.macro_f1) >= 1e-9 ||
            std::fabs(rep.weighted_f1 - want.weighted_f1) >= 1e-9)
            return {Outcome::Fail, "aggregate mismatch at trial " + std::to_string(trial)};
    }
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(40);
        std::vector<double> y(n), yhat(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform() * 10;
            yhat[i] = rng.uniform() * 10;
        }
        auto rep = eval::regression_report(y, yhat);
        auto want = oracles::regression_metrics(y, yhat);
        if (std::fabs(rep.r2 - want.r2) >= 1e-9 || std::fabs(rep.rmse - want.rmse) >= 1e-9 ||
            std::fabs(rep.mae - want.mae) >= 1e-9 || std::fabs(rep.evar - want.evar) >= 1e-9)
            return {Outcome::Fail, "regression mismatch at trial " + std::to_string(trial)};
    }
    return {Outcome::Pass, "200 randomized instances within 1e-9"};
}

Outcome criterion2_nb_enumeration() {
    SplitMix64 rng(1002);
    const double alphas[] = {0.5, 1.0, 2.0};
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t vocab = 1 + rng.below(5);
        std::size_t docs = 2 + rng.below(7);
        double alpha = alphas[rng.below(3)];
        std::size_t n_classes = 2 + rng.below(2);
        std::vector<std::vector<double>> counts(docs, std::vector<double>(vocab, 0));
        std::vector<int> labels(docs);
        for (std::size_t i = 0; i < docs; ++i) {
            labels[i] = static_cast<int>(i < n_classes ? i : rng.below(n_classes));
            for (std::size_t j = 0; j < vocab; ++j)
                counts[i][j] = static_cast<double>(rng.below(4));
        }
        learn::MultinomialNb nb;
        nb.fit(counts, labels, alpha);
        for (int probe = 0; probe < 5; ++probe) {
            std::vector<double> x(vocab);
            for (std::size_t j = 0; j < vocab; ++j) x[j] = static_cast<double>(rng.below(4));
            auto got = nb.predict_proba(x);
            auto want = oracles::nb_posterior_brute_force(counts, labels, alpha, x);
            for (std::size_t c = 0; c < got.size(); ++c)
                if (std::fabs(got[c] - want[c]) >= 1e-9)
                    return {Outcome::Fail, "posterior mismatch at trial " + std::to_string(trial)};
            ++checked;
        }
    }
    return {Outcome::Pass, std::to_string(checked) + " posteriors within 1e-9"};
}

Outcome criterion3_lexrank_dense() {
    auto check = [&](const std::vector<std::string>& sentences) -> bool {
        auto p = feat::lexrank_centrality(sentences);
        // rebuild the implementation's transition matrix, solve densely
        auto docs = feat::detail::tokenize_all(sentences);
        auto tfidf = feat::detail::tfidf_term_sentence(docs);
        const std::size_t n = sentences.size();
        std::vector<std::vector<double>> cols(n, std::vector<double>(tfidf.rows, 0.0));
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < tfidf.rows; ++t) cols[s][t] = tfidf.at(t, s);
        std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            double row_sum = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                double sim = linalg::cosine(cols[i], cols[j]);
                if (sim >= 0.1) {
                    m[i][j] = sim;
                    row_sum += sim;
                }
            }
            if (row_sum > 0)
                for (std::size_t j = 0; j < n; ++j) m[i][j] /= row_sum;
            else
                for (std::size_t j = 0; j < n; ++j) m[i][j] = 1.0 / static_cast<double>(n);
        }
        auto want = oracles::stationary_by_linear_solve(m, 0.85);
        for (std::size_t i = 0; i < n; ++i)
            if (std::fabs(p[i] - want[i]) >= 1e-6) return false;
        return true;
    };

    std::vector<std::vector<std::string>> fixtures = {
        {"a b c", "b c d"},
        {"a b c", "b c d", "c d e"},
        {"stock market prices rose", "market prices rose sharply", "stock prices rose again",
         "zebra quagga okapi"},
        {"alpha beta", "beta gamma", "gamma delta", "delta alpha", "alpha gamma"},
        {"same words here", "same words here", "other thing entirely", "same words again",
         "words here same"},
    };
    SplitMix64 rng(1003);
    std::vector<std::string> pool = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> doc;
        std::size_t n = 2 + rng.below(4); // <= 5 sentences
        for (std::size_t s = 0; s < n; ++s) {
            std::string sent;
            std::size_t words = 1 + rng.below(5);
            for (std::size_t w = 0; w < words; ++w) sent += pool[rng.below(pool.size())] + " ";
            doc.push_back(sent);
        }
        fixtures.push_back(doc);
    }
    for (std::size_t i = 0; i < fixtures.size(); ++i)
        if (!check(fixtures[i]))
            return {Outcome::Fail, "dense-solution mismatch on fixture " + std::to_string(i)};

    // uniform-document symmetry must be exact
    auto p = feat::lexrank_centrality({"the cat sat", "the cat sat", "the cat sat"});
    if (p[0] != p[1] || p[1] != p[2])
        return {Outcome::Fail, "identical sentences not exactly uniform"};
    return {Outcome::Pass, std::to_string(fixtures.size()) + " documents within 1e-6"};
}

Outcome criterion4_arc_closed_form() {
    double v1 = feat::archive_score_closed_form(2, 5, 1000, 10, 1.0);
    double v2 = feat::archive_score_closed_form(2, 5, 1000, 10, 0.5);
    double want = 1.0 / std::log(10.0) + std::log(1000.0) + 0.1;
    if (std::fabs(v1 - want) >= 1e-9 || std::fabs(v1 - 7.4420497608853884) >= 1e-9)
        return {Outcome::Fail, "exact-url worked example off"};
    if (std::fabs(v2 - want / 2) >= 1e-9 || std::fabs(v2 - 3.7210248804426942) >= 1e-9)
        return {Outcome::Fail, "domain-fallback worked example off"};
    feat::ArchiveTimeline empty;
    empty.queried_at_days = 123;
    if (feat::score_archive(empty) != 0.0) return {Outcome::Fail, "empty timeline not 0"};

    SplitMix64 rng(1004);
    for (int i = 0; i < 1000; ++i) {
        double db = 1 + rng.uniform() * 400;
        double de = 1 + rng.uniform() * 400;
        double da = 1 + rng.uniform() * 5000;
        double du = 1 + rng.uniform() * 400;
        double base = feat::archive_score_closed_form(db, de, da, du, 1.0);
        if (!(feat::archive_score_closed_form(db, de, da + 1 + rng.uniform() * 50, du, 1.0) >
              base))
            return {Outcome::Fail, "delta_a monotonicity violated"};
        if (!(feat::archive_score_closed_form(db, de, da, du + 1 + rng.uniform() * 50, 1.0) <=
              base))
            return {Outcome::Fail, "delta_u monotonicity violated"};
        if (std::fabs(feat::archive_score_closed_form(db, de, da, du, 0.5) - base / 2) >= 1e-12)
            return {Outcome::Fail, "gamma scaling violated"};
    }
    return {Outcome::Pass, "worked examples within 1e-9, 1000-point monotonicity grid"};
}

Outcome criterion5_class_mappings() {
    struct Row {
        int rating;
        eval::ClassScheme scheme;
        const char* want;
    };
    const Row table[] = {
        {1, eval::ClassScheme::TwoClass, "low"},    {2, eval::ClassScheme::TwoClass, "low"},
        {3, eval::ClassScheme::TwoClass, "low"},    {4, eval::ClassScheme::TwoClass, "high"},
        {5, eval::ClassScheme::TwoClass, "high"},   {1, eval::ClassScheme::ThreeClass, "low"},
        {2, eval::ClassScheme::ThreeClass, "low"},  {3, eval::ClassScheme::ThreeClass, "medium"},
        {4, eval::ClassScheme::ThreeClass, "high"}, {5, eval::ClassScheme::ThreeClass, "high"},
        {1, eval::ClassScheme::FiveClass, "1"},     {2, eval::ClassScheme::FiveClass, "2"},
        {3, eval::ClassScheme::FiveClass, "3"},     {4, eval::ClassScheme::FiveClass, "4"},
        {5, eval::ClassScheme::FiveClass, "5"},
    };
    for (const auto& row : table)
        if (eval::map_likert(row.rating, row.scheme) != row.want)
            return {Outcome::Fail, "mapping wrong for rating " + std::to_string(row.rating) +
                                       " in " + eval::scheme_name(row.scheme)};
    return {Outcome::Pass, "all 15 rating/scheme pairs"};
}

// shared state between criterion 6/7/8 and the determinism criterion
std::string report6a, report6b, report7a, report7b, report8a, report8b;

eval::CvResult run_criterion6_pipeline(const std::string& features_path,
                                       const std::string& labels_path) {
    auto f = cli::load_feature_file(features_path);
    auto rated = corpus::load_rated_corpus(labels_path, corpus::CorpusFormat::Microsoft);
    auto joined = cli::join_features_labels(f, rated);
    std::vector<int> y;
    for (int r : joined.ratings)
        y.push_back(eval::map_likert_index(r, eval::ClassScheme::TwoClass));
    learn::LearnerSpec spec = learn::LearnerSpec::parse("gboost");
    return eval::cross_validate_classification(joined.x, y, {"low", "high"}, spec, {25, false},
                                               10, 42);
}

Outcome criterion6_end_to_end() {
    TempTree tmp("c6");
    auto pages = synthetic::lexical_corpus(200, 6001);
    seed_cache(tmp.p("cache"), pages);
    synthetic::write_demo_tables(tmp.root / "tables");
    write_labels(tmp.p("labels.csv"), pages);

    cli::ExtractOptions ex;
    ex.cache_dir = tmp.p("cache");
    ex.tables.tables_dir = tmp.p("tables");
    ex.tables.queried_at = "2024-01-01";
    ex.out_file = tmp.p("features.jsonl");
    ex.quiet = true;
    std::ostringstream out, err;
    if (cli::cmd_extract(ex, out, err) != cli::kExitOk)
        return {Outcome::Fail, "extract failed: " + err.str()};

    auto cv = run_criterion6_pipeline(ex.out_file, tmp.p("labels.csv"));
    report6a = cv.report.render();
    auto cv2 = run_criterion6_pipeline(ex.out_file, tmp.p("labels.csv"));
    report6b = cv2.report.render();

    char buf[64];
    std::snprintf(buf, sizeof(buf), "weighted F1 = %.4f", cv.report.weighted_f1);
    if (cv.report.weighted_f1 < 0.95) return {Outcome::Fail, buf};
    return {Outcome::Pass, buf};
}

Outcome criterion7_padding_sweep() {
    auto pages = synthetic::tag_corpus(60, 7001, 12, 5000); // ~10k tags per page
    std::vector<std::vector<std::string>> streams;
    std::vector<int> y;
    for (const auto& page : pages) {
        streams.push_back(html::tokenize_tags(page.html));
        y.push_back(page.rating >= 4 ? 1 : 0);
    }
    learn::LearnerSpec nb = learn::LearnerSpec::parse("nb");
    auto rows = eval::padding_sweep(streams, y, {"low", "high"}, {25, 10000}, nb, 5, 42);
    report7a = eval::render_sweep(rows);
    report7b = eval::render_sweep(
        eval::padding_sweep(streams, y, {"low", "high"}, {25, 10000}, nb, 5, 42));

    double f25 = rows[0].weighted_f1, f10000 = rows[1].weighted_f1;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "F1(25)=%.4f F1(10000)=%.4f", f25, f10000);
    if (f25 < f10000 - 0.02) return {Outcome::Fail, buf};
    return {Outcome::Pass, buf};
}

Outcome criterion8_stacking_gain() {
    TempTree tmp("c8");
    auto pages = synthetic::complementary_corpus(120, 8001);
    seed_cache(tmp.p("cache"), pages);
    synthetic::write_demo_tables(tmp.root / "tables");
    write_labels(tmp.p("labels.csv"), pages);

    cli::ExtractOptions ex;
    ex.cache_dir = tmp.p("cache");
    ex.tables.tables_dir = tmp.p("tables");
    ex.tables.queried_at = "2024-01-01";
    ex.out_file = tmp.p("features.jsonl");
    ex.quiet = true;
    std::ostringstream out, err;
    if (cli::cmd_extract(ex, out, err) != cli::kExitOk)
        return {Outcome::Fail, "extract failed: " + err.str()};

    auto f = cli::load_feature_file(ex.out_file);
    auto rated = corpus::load_rated_corpus(tmp.p("labels.csv"), corpus::CorpusFormat::Microsoft);
    auto joined = cli::join_features_labels(f, rated);
    std::vector<int> y;
    for (int r : joined.ratings)
        y.push_back(eval::map_likert_index(r, eval::ClassScheme::TwoClass));

    // tag-count matrix aligned with the joined rows
    ingest::SnapshotStore store(tmp.p("cache"));
    std::vector<std::vector<std::string>> streams;
    for (const auto& u : joined.urls)
        streams.push_back(html::tokenize_tags(store.load(u).bytes));
    auto vocab = html2seq::build_vocab(streams);
    learn::Mat tag_counts;
    for (const auto& s : streams)
        tag_counts.push_back(
            html2seq::window_to_counts(html2seq::encode_window(s, vocab, 50), vocab));

    learn::LearnerSpec gb = learn::LearnerSpec::parse("gboost");
    learn::LearnerSpec nb = learn::LearnerSpec::parse("nb");
    auto run_both = [&]() {
        auto lex_only = eval::cross_validate_classification(joined.x, y, {"low", "high"}, gb,
                                                            {50, false}, 5, 42);
        auto stacked = eval::cross_validate_stacked(joined.x, tag_counts, y, {"low", "high"},
                                                    gb, nb, {50, false}, 5, 42);
        return std::make_pair(lex_only, stacked);
    };
    auto [lex_only, stacked] = run_both();
    report8a = lex_only.report.render() + stacked.report.render();
    auto [lex2, stacked2] = run_both();
    report8b = lex2.report.render() + stacked2.report.render();

    double gain = stacked.report.weighted_f1 - lex_only.report.weighted_f1;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "lexical F1=%.4f stacked F1=%.4f gain=%.4f",
                  lex_only.report.weighted_f1, stacked.report.weighted_f1, gain);
    if (gain < 0.05) return {Outcome::Fail, buf};
    return {Outcome::Pass, buf};
}

Outcome criterion9_factcheck_fractions() {
    // Published reference figures for the fact-checking impact study. The
    // reference human-annotation count for true/non-credible (57) is
    // inconsistent with its own published fraction (40/57 = 0.70, published
    // as 0.81); the reproducible base is 49 = round(40/0.81). The other three
    // cells match their published annotated counts exactly.
    struct Cell {
        bool claim_true;
        bool credible;
        std::size_t annotated;
        std::size_t correct;
    };
    const Cell cells[] = {
        {true, false, 49, 40},  // published fraction 0.81
        {true, true, 39, 31},   // 0.79
        {false, false, 48, 34}, // 0.70
        {false, true, 32, 24},  // 0.75
    };
    std::vector<corpus::ClaimEvidence> evidence(2);
    evidence[0].claim_id = "true_claim";
    evidence[0].claim_true = true;
    evidence[1].claim_id = "false_claim";
    evidence[1].claim_true = false;
    std::unordered_map<std::string, bool> predictions;
    int n = 0;
    for (const auto& cell : cells) {
        for (std::size_t i = 0; i < cell.annotated; ++i) {
            corpus::EvidenceUrl ev;
            ev.url = "http://u" + std::to_string(n++) + ".org/";
            ev.annotated_credible = cell.credible;
            bool model_correct = i < cell.correct;
            predictions[ev.url] = model_correct == cell.credible;
            evidence[cell.claim_true ? 0 : 1].urls.push_back(ev);
        }
    }
    auto table = corpus::factcheck_report(evidence, predictions);
    auto frac = [&](double v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    std::string got = frac(table.rows[0].noncred_fraction()) + " " +
                      frac(table.rows[0].cred_fraction()) + " " +
                      frac(table.rows[1].noncred_fraction()) + " " +
                      frac(table.rows[1].cred_fraction());
    if (got != "0.81 0.79 0.70 0.75") return {Outcome::Fail, "got " + got};
    return {Outcome::Pass, "fractions " + got};
}

// One dataset's worth of published-number comparisons: two- and three-class
// weighted F1 plus the ridge regression R^2, each within +/- 0.05 of the
// published table value.
struct ReproTargets {
    const char* name;
    corpus::CorpusFormat format;
    learn::LearnerSpec classifier;
    double two_class_f1;
    double two_class_percentile;
    double three_class_f1;
    double three_class_percentile;
    double ridge_r2;
    double ridge_percentile;
};

Outcome reproduce_dataset(const char* cache, const char* labels, const char* tables,
                          const ReproTargets& t) {
    TempTree tmp(std::string("c10_") + t.name);
    cli::ExtractOptions ex;
    ex.cache_dir = cache;
    ex.tables.tables_dir = tables;
    ex.out_file = tmp.p("features.jsonl");
    ex.quiet = true;
    std::ostringstream out, err;
    if (cli::cmd_extract(ex, out, err) != cli::kExitOk)
        return {Outcome::Fail, std::string(t.name) + " extract failed: " + err.str()};

    auto f = cli::load_feature_file(ex.out_file);
    auto rated = corpus::load_rated_corpus(labels, t.format, true);
    auto joined = cli::join_features_labels(f, rated);
    if (joined.x.empty())
        return {Outcome::Fail, std::string(t.name) + ": no rows after label join"};

    std::string detail = t.name;
    bool ok = true;

    auto classify = [&](eval::ClassScheme scheme, double target, double percentile,
                        const char* tag) {
        std::vector<int> y;
        for (int r : joined.ratings) y.push_back(eval::map_likert_index(r, scheme));
        auto cv = eval::cross_validate_classification(joined.x, y, eval::scheme_class_names(scheme),
                                                      t.classifier, {percentile, false}, 10, 42);
        char buf[96];
        std::snprintf(buf, sizeof(buf), " %s F1=%.3f (paper %.3f)", tag, cv.report.weighted_f1,
                      target);
        detail += buf;
        if (std::fabs(cv.report.weighted_f1 - target) > 0.05) ok = false;
    };
    classify(eval::ClassScheme::TwoClass, t.two_class_f1, t.two_class_percentile, "2c");
    classify(eval::ClassScheme::ThreeClass, t.three_class_f1, t.three_class_percentile, "3c");

    {
        std::vector<double> y(joined.ratings.begin(), joined.ratings.end());
        learn::LearnerSpec ridge = learn::LearnerSpec::parse("ridge");
        auto cv = eval::cross_validate_regression(joined.x, y, ridge,
                                                  {t.ridge_percentile, false}, 10, 42);
        char buf[96];
        std::snprintf(buf, sizeof(buf), " ridge R2=%.3f (paper %.3f)", cv.report.r2, t.ridge_r2);
        detail += buf;
        if (std::fabs(cv.report.r2 - t.ridge_r2) > 0.05) ok = false;
    }
    return {ok ? Outcome::Pass : Outcome::Fail, detail};
}

Outcome criterion10_dataset_reproduction() {
    const char* tables = std::getenv("WEBCRED_TABLES");
    const char* ms_cache = std::getenv("WEBCRED_MS_CACHE");
    const char* ms_labels = std::getenv("WEBCRED_MS_LABELS");
    const char* c3_cache = std::getenv("WEBCRED_C3_CACHE");
    const char* c3_labels = std::getenv("WEBCRED_C3_LABELS");

    bool have_ms = tables && ms_cache && ms_labels;
    bool have_c3 = tables && c3_cache && c3_labels;
    if (!have_ms && !have_c3)
        return {Outcome::Skip,
                "requires user-obtained caches (set WEBCRED_TABLES plus WEBCRED_MS_CACHE/"
                "WEBCRED_MS_LABELS and/or WEBCRED_C3_CACHE/WEBCRED_C3_LABELS; see README). "
                "Sensitive to scrape drift and the unstated evaluation protocol."};

    std::string detail;
    bool ok = true;
    if (have_ms) {
        ReproTargets ms{"microsoft", corpus::CorpusFormat::Microsoft,
                        learn::LearnerSpec::parse("gboost"),
                        0.772, 25, 0.626, 75, 0.268, 3};
        auto r = reproduce_dataset(ms_cache, ms_labels, tables, ms);
        detail += r.detail;
        ok = ok && r.kind == Outcome::Pass;
    }
    if (have_c3) {
        ReproTargets c3{"c3", corpus::CorpusFormat::C3, learn::LearnerSpec::parse("adaboost"),
                        0.674, 75, 0.598, 100, 0.133, 25};
        auto r = reproduce_dataset(c3_cache, c3_labels, tables, c3);
        if (!detail.empty()) detail += "; ";
        detail += r.detail;
        ok = ok && r.kind == Outcome::Pass;
    }
    return {ok ? Outcome::Pass : Outcome::Fail, detail};
}

Outcome criterion11_determinism() {
    if (report6a.empty() || report7a.empty() || report8a.empty())
        return {Outcome::Fail, "criteria 6-8 did not produce reports"};
    if (report6a != report6b) return {Outcome::Fail, "criterion 6 reports differ across reruns"};
    if (report7a != report7b) return {Outcome::Fail, "criterion 7 reports differ across reruns"};
    if (report8a != report8b) return {Outcome::Fail, "criterion 8 reports differ across reruns"};
    return {Outcome::Pass, "criteria 6-8 reports byte-identical across reruns"};
}

} // namespace

int main() {
    std::printf("webcred acceptance suite\n");
    run(1, "metric reports match brute-force oracles (1e-9)", criterion1_metric_oracles, 5.0);
    run(2, "naive bayes matches exhaustive enumeration (1e-9)", criterion2_nb_enumeration, 10.0);
    run(3, "lexrank centrality matches dense solution (1e-6)", criterion3_lexrank_dense);
    run(4, "f_arc worked examples and monotonicity", criterion4_arc_closed_form);
    run(5, "likert class mappings", criterion5_class_mappings);
    run(6, "end-to-end synthetic separability (F1 >= 0.95)", criterion6_end_to_end, 120.0);
    run(7, "padding sweep: first tags carry the signal", criterion7_padding_sweep);
    run(8, "stacking gain >= 0.05 on complementary signals", criterion8_stacking_gain);
    run(9, "factbench report reproduces published fractions", criterion9_factcheck_fractions);
    run(10, "best-effort dataset reproduction (non-CI)", criterion10_dataset_reproduction);
    run(11, "determinism: byte-identical reports under a fixed seed", criterion11_determinism);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all runnable criteria passed\n");
    return 0;
}
