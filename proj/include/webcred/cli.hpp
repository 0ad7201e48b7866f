#pragma once

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "webcred/archive_http.hpp"
#include "webcred/config.hpp"
#include "webcred/corpus.hpp"
#include "webcred/errors.hpp"
#include "webcred/eval.hpp"
#include "webcred/features.hpp"
#include "webcred/fetch.hpp"
#include "webcred/html.hpp"
#include "webcred/html2seq.hpp"
#include "webcred/model.hpp"
#include "webcred/snapshot.hpp"
#include "webcred/timeutil.hpp"

namespace webcred::cli {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDataFailure = 1;
constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// shared option bundles
// ---------------------------------------------------------------------------

struct TableOptions {
    std::string tables_dir;
    std::string archive_endpoint; // live CDX endpoint; overrides archive.tsv
    bool no_archive = false;
    bool no_rank = false;
    bool no_opensources = false;
    bool no_gi = false;
    bool no_valence = false;
    std::vector<std::string> social_markers; // empty: defaults
    std::size_t summary_n = 5;
    std::string queried_at; // ISO date; empty: now
};

// Owns every table/model the feature context points at.
struct LoadedTables {
    feat::CategoryModelSet categories;
    feat::SpamModel spam;
    std::optional<feat::LexiconTable> gi;
    std::optional<feat::ValenceTable> valence;
    std::optional<std::unordered_set<std::string>> opensources;
    std::optional<feat::RankTable> rank;
    std::shared_ptr<feat::ArchiveClient> archive;
    feat::DomainVocab domain_vocab;
    double queried_at_days = 0.0;

    feat::FeatureContext context(const TableOptions& opt) const {
        feat::FeatureContext ctx;
        ctx.categories = &categories;
        ctx.spam = &spam;
        if (gi) ctx.gi = &*gi;
        if (valence) ctx.valence = &*valence;
        if (opensources) ctx.opensources = &*opensources;
        if (rank) ctx.rank = &*rank;
        ctx.domain_vocab = &domain_vocab;
        if (!opt.social_markers.empty()) ctx.social_markers = opt.social_markers;
        ctx.summary_n = opt.summary_n;
        return ctx;
    }
};

inline double resolve_queried_at_days(const std::string& iso) {
    if (iso.empty()) return timeutil::days_since_epoch(std::time(nullptr));
    auto secs = timeutil::parse_utc(iso);
    if (!secs) throw Error("bad --queried-at timestamp: " + iso);
    return timeutil::days_since_epoch(*secs);
}

// Loads the tables a corpus run needs. Missing required tables throw unless
// the matching no_* flag disables them.
inline LoadedTables load_tables(const TableOptions& opt, const std::vector<std::string>& urls) {
    namespace fs = std::filesystem;
    LoadedTables t;
    fs::path dir(opt.tables_dir);

    auto require = [&](const char* file, bool disabled, const char* flag) -> std::string {
        if (disabled) return "";
        fs::path p = dir / file;
        if (opt.tables_dir.empty() || !fs::exists(p))
            throw Error(std::string("missing table ") + file +
                        (opt.tables_dir.empty() ? " (no --tables dir given)"
                                                : " in " + dir.string()) +
                        "; pass " + flag + " to disable");
        return p.string();
    };

    fs::path topics = dir / "topics.tsv";
    t.categories = (!opt.tables_dir.empty() && fs::exists(topics))
                       ? feat::CategoryModelSet::train(feat::load_labeled_texts(topics.string()))
                       : feat::CategoryModelSet::train_builtin();
    fs::path spam = dir / "spam.tsv";
    t.spam = (!opt.tables_dir.empty() && fs::exists(spam))
                 ? feat::SpamModel::train(feat::load_labeled_texts(spam.string()))
                 : feat::SpamModel::train_builtin();

    if (std::string p = require("gi.tsv", opt.no_gi, "--no-gi"); !p.empty())
        t.gi = feat::load_category_lexicon(p, "gi");
    if (std::string p = require("valence.tsv", opt.no_valence, "--no-valence"); !p.empty())
        t.valence = feat::load_valence_table(p, "valence");
    if (std::string p = require("opensources.txt", opt.no_opensources, "--no-opensources");
        !p.empty())
        t.opensources = feat::load_domain_list(p);
    if (std::string p = require("rank.tsv", opt.no_rank, "--no-rank"); !p.empty())
        t.rank = feat::load_rank_table(p);
    if (!opt.archive_endpoint.empty()) {
        t.archive = std::make_shared<feat::CdxHttpClient>(opt.archive_endpoint);
    } else if (std::string p = require("archive.tsv", opt.no_archive, "--no-archive");
               !p.empty()) {
        t.archive = std::make_shared<feat::FixtureArchiveClient>(p);
    }

    t.domain_vocab = feat::DomainVocab::build(urls);
    t.queried_at_days = resolve_queried_at_days(opt.queried_at);
    return t;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOptions {
    std::string corpus_file;
    std::string format = "microsoft";
    std::string cache_dir;
    ingest::FetchPolicy policy;
    bool quiet = false;
};

inline int cmd_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<corpus::RatedUrl> rated;
    try {
        rated = corpus::load_rated_corpus(opt.corpus_file, corpus::parse_corpus_format(opt.format),
                                          /*skip_bad_rows=*/true);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    ingest::SnapshotStore store(opt.cache_dir);
    ingest::HostRateLimiter limiter(opt.policy.per_host_rps);

    std::size_t fetched = 0, cached = 0;
    std::vector<std::pair<std::string, std::string>> failures;
    for (const auto& r : rated) {
        if (store.contains(r.url)) {
            ++cached;
            continue;
        }
        try {
            auto doc = ingest::fetch_page(r.url, opt.policy, &limiter);
            store.store(doc);
            ++fetched;
            if (!opt.quiet) out << "fetched " << r.url << '\n';
        } catch (const Error& e) {
            failures.emplace_back(r.url, e.what());
            if (!opt.quiet) out << "failed " << r.url << ": " << e.what() << '\n';
        }
    }
    out << fetched << " fetched, " << cached << " cached, " << failures.size() << " failed\n";
    if (fetched + cached == 0) {
        for (const auto& [u, why] : failures) err << "failed: " << u << " (" << why << ")\n";
        return kExitDataFailure;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractOptions {
    std::string cache_dir;
    TableOptions tables;
    std::string out_file;
    bool quiet = false;
};

inline json features_header(const feat::FeatureVector& fv, const LoadedTables& tables,
                            const TableOptions& opt) {
    json vocab = json::object();
    for (const auto& [suffix, id] : tables.domain_vocab.ids) vocab[suffix] = id;
    json header;
    header["record"] = "schema";
    header["version"] = 1;
    header["schema"] = fv.schema;
    header["schema_fp"] = fv.schema_fingerprint();
    header["domain_vocab"] = vocab;
    header["social_markers"] =
        opt.social_markers.empty() ? feat::default_social_markers() : opt.social_markers;
    header["summary_n"] = opt.summary_n;
    header["queried_at_days"] = tables.queried_at_days;
    return header;
}

// One feature vector per cached page, deterministic URL order, JSON lines.
inline int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    LoadedTables tables;
    ingest::SnapshotStore store(opt.cache_dir);
    auto urls = store.urls();
    if (urls.empty()) {
        err << "error: cache at " << opt.cache_dir << " is empty; run ingest first\n";
        return kExitUsage;
    }
    try {
        tables = load_tables(opt.tables, urls);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    feat::FeatureContext ctx = tables.context(opt.tables);

    std::ofstream file(opt.out_file, std::ios::trunc);
    if (!file) {
        err << "error: cannot write " << opt.out_file << '\n';
        return kExitUsage;
    }

    bool wrote_header = false;
    std::size_t written = 0, skipped = 0;
    for (const auto& u : urls) {
        feat::ArchiveTimeline timeline;
        timeline.queried_at_days = tables.queried_at_days;
        std::vector<std::string> notes;
        try {
            auto doc = store.load(u);
            auto page = html::parse_html(doc);
            if (tables.archive) {
                try {
                    timeline = feat::query_archive(u, *tables.archive, tables.queried_at_days);
                } catch (const ArchiveUnavailable&) {
                    timeline.unavailable = true;
                }
            } else {
                notes.push_back("archive: disabled");
            }
            auto assembled = feat::assemble_features(page, timeline, ctx);
            notes.insert(notes.end(), assembled.provenance.begin(), assembled.provenance.end());
            if (!wrote_header) {
                file << features_header(assembled.vector, tables, opt.tables).dump() << '\n';
                wrote_header = true;
            }
            json rec;
            rec["record"] = "features";
            rec["url"] = u;
            rec["schema_fp"] = assembled.vector.schema_fingerprint();
            rec["values"] = assembled.vector.values;
            rec["notes"] = notes;
            file << rec.dump() << '\n';
            ++written;
        } catch (const Error& e) {
            ++skipped;
            if (!opt.quiet) out << "skipped " << u << ": " << e.what() << '\n';
        }
    }
    out << written << " extracted, " << skipped << " skipped -> " << opt.out_file << '\n';
    return written > 0 ? kExitOk : kExitDataFailure;
}

// ---------------------------------------------------------------------------
// features file loading (shared by train/eval/score)
// ---------------------------------------------------------------------------

struct FeatureFile {
    std::vector<std::string> schema;
    std::string schema_fp;
    std::map<std::string, int> domain_vocab_ids;
    std::vector<std::string> social_markers;
    std::size_t summary_n = 5;
    double queried_at_days = 0.0;
    std::vector<std::string> urls;
    learn::Mat rows;
};

inline FeatureFile load_feature_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open features file: " + path);
    FeatureFile f;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw Error("features file line " + std::to_string(lineno) + ": bad json");
        std::string kind = rec.value("record", "");
        if (kind == "schema") {
            f.schema = rec.at("schema").get<std::vector<std::string>>();
            f.schema_fp = rec.at("schema_fp").get<std::string>();
            if (rec.contains("domain_vocab"))
                for (auto& [k, v] : rec.at("domain_vocab").items())
                    f.domain_vocab_ids[k] = v.get<int>();
            if (rec.contains("social_markers"))
                f.social_markers = rec.at("social_markers").get<std::vector<std::string>>();
            f.summary_n = rec.value("summary_n", std::size_t{5});
            f.queried_at_days = rec.value("queried_at_days", 0.0);
        } else if (kind == "features") {
            f.urls.push_back(rec.at("url").get<std::string>());
            f.rows.push_back(rec.at("values").get<std::vector<double>>());
        } else {
            throw Error("features file line " + std::to_string(lineno) + ": unknown record");
        }
    }
    if (f.schema.empty()) throw Error("features file has no schema record: " + path);
    for (const auto& row : f.rows)
        if (row.size() != f.schema.size())
            throw SchemaError("features file row width does not match schema");
    return f;
}

// join features with labels by normalized URL
struct JoinedDataset {
    learn::Mat x;
    std::vector<int> ratings; // likert 1..5
    std::vector<std::string> urls;
    std::size_t unmatched_labels = 0;
    std::size_t unmatched_rows = 0;
};

inline JoinedDataset join_features_labels(const FeatureFile& f,
                                          const std::vector<corpus::RatedUrl>& rated) {
    std::unordered_map<std::string, int> label_of;
    for (const auto& r : rated) label_of[r.url] = r.aggregated;
    JoinedDataset d;
    std::set<std::string> used;
    for (std::size_t i = 0; i < f.urls.size(); ++i) {
        auto it = label_of.find(url::normalize(f.urls[i]));
        if (it == label_of.end()) {
            ++d.unmatched_rows;
            continue;
        }
        d.x.push_back(f.rows[i]);
        d.ratings.push_back(it->second);
        d.urls.push_back(f.urls[i]);
        used.insert(it->first);
    }
    d.unmatched_labels = rated.size() - used.size();
    return d;
}

// ---------------------------------------------------------------------------
// train / eval
// ---------------------------------------------------------------------------

struct TrainEvalOptions {
    std::string features_file;
    std::string labels_file;
    std::string labels_format = "microsoft";
    std::string scheme = "two_class";
    std::string learner; // empty: gboost for classification, ridge for regression
    eval::SelectionSpec selection;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::string model_out;  // train
    std::string report_out; // eval run record (json lines)
    bool quiet = false;
};

inline learn::LearnerSpec resolve_learner(const TrainEvalOptions& opt, bool regression) {
    if (!opt.learner.empty()) return learn::LearnerSpec::parse(opt.learner);
    learn::LearnerSpec spec;
    spec.kind = regression ? learn::LearnerKind::Ridge : learn::LearnerKind::GradientBoosting;
    return spec;
}

inline int cmd_train(const TrainEvalOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto scheme = eval::parse_scheme(opt.scheme);
        auto f = load_feature_file(opt.features_file);
        auto rated = corpus::load_rated_corpus(opt.labels_file,
                                               corpus::parse_corpus_format(opt.labels_format),
                                               /*skip_bad_rows=*/true);
        auto joined = join_features_labels(f, rated);
        if (joined.x.empty()) {
            err << "error: no rows after joining features with labels\n";
            return kExitDataFailure;
        }
        bool regression = scheme == eval::ClassScheme::FiveClass;
        auto spec = resolve_learner(opt, regression);
        if (regression && !spec.is_regressor()) {
            err << "error: five_class (regression) needs ridge|svr|gboost\n";
            return kExitUsage;
        }

        learn::ModelArtifact artifact;
        artifact.spec = spec;
        artifact.schema = f.schema;
        if (regression) {
            std::vector<double> y(joined.ratings.begin(), joined.ratings.end());
            artifact.selection_mask = eval::fit_selection_regression(joined.x, y, opt.selection);
            artifact.regressor.fit(learn::apply_mask(joined.x, artifact.selection_mask), y, spec);
        } else {
            const auto& names = eval::scheme_class_names(scheme);
            artifact.class_names = names;
            std::vector<int> y;
            for (int r : joined.ratings) y.push_back(eval::map_likert_index(r, scheme));
            artifact.selection_mask = eval::fit_selection(joined.x, y, opt.selection);
            artifact.classifier.fit(learn::apply_mask(joined.x, artifact.selection_mask), y,
                                    names.size(), spec);
        }
        artifact.save(opt.model_out);
        out << "trained " << spec.name() << " on " << joined.x.size() << " rows ("
            << joined.unmatched_rows << " rows without labels, " << joined.unmatched_labels
            << " labels without rows), " << artifact.selection_mask.size() << "/"
            << f.schema.size() << " features -> " << opt.model_out << '\n';
        if (!opt.report_out.empty()) {
            json rec;
            rec["record"] = "train";
            rec["seed"] = opt.seed;
            rec["scheme"] = eval::scheme_name(scheme);
            rec["learner"] = spec.name();
            rec["selection"] = opt.selection.describe();
            rec["rows"] = joined.x.size();
            rec["selected_features"] = artifact.selection_mask.size();
            rec["schema_fp"] = artifact.schema_fingerprint();
            rec["model"] = opt.model_out;
            std::ofstream rf(opt.report_out, std::ios::app);
            if (!rf) {
                err << "error: cannot write run record " << opt.report_out << '\n';
                return kExitDataFailure;
            }
            rf << rec.dump() << '\n';
        }
        return kExitOk;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

inline int cmd_eval(const TrainEvalOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto scheme = eval::parse_scheme(opt.scheme);
        auto f = load_feature_file(opt.features_file);
        auto rated = corpus::load_rated_corpus(opt.labels_file,
                                               corpus::parse_corpus_format(opt.labels_format),
                                               /*skip_bad_rows=*/true);
        auto joined = join_features_labels(f, rated);
        if (joined.x.empty()) {
            err << "error: no rows after joining features with labels\n";
            return kExitDataFailure;
        }
        bool regression = scheme == eval::ClassScheme::FiveClass;
        auto spec = resolve_learner(opt, regression);
        if (regression && !spec.is_regressor()) {
            err << "error: five_class (regression) needs ridge|svr|gboost\n";
            return kExitUsage;
        }

        eval::CvResult cv;
        if (regression) {
            std::vector<double> y(joined.ratings.begin(), joined.ratings.end());
            cv = eval::cross_validate_regression(joined.x, y, spec, opt.selection, opt.folds,
                                                 opt.seed);
        } else {
            std::vector<int> y;
            for (int r : joined.ratings) y.push_back(eval::map_likert_index(r, scheme));
            cv = eval::cross_validate_classification(joined.x, y, eval::scheme_class_names(scheme),
                                                     spec, opt.selection, opt.folds, opt.seed);
        }
        cv.report.protocol += " scheme=" + eval::scheme_name(scheme);
        out << cv.report.render();

        if (!opt.report_out.empty()) {
            json rec;
            rec["protocol"] = cv.report.protocol;
            rec["seed"] = opt.seed;
            rec["scheme"] = eval::scheme_name(scheme);
            rec["learner"] = spec.name();
            rec["selection"] = opt.selection.describe();
            rec["folds"] = opt.folds;
            rec["rows"] = joined.x.size();
            if (regression) {
                rec["r2"] = cv.report.r2;
                rec["rmse"] = cv.report.rmse;
                rec["mae"] = cv.report.mae;
                rec["evar"] = cv.report.evar;
            } else {
                rec["weighted_f1"] = cv.report.weighted_f1;
                rec["macro_f1"] = cv.report.macro_f1;
                rec["micro_f1"] = cv.report.micro_f1;
            }
            std::ofstream rf(opt.report_out, std::ios::app);
            if (!rf) {
                err << "error: cannot write run record " << opt.report_out << '\n';
                return kExitDataFailure;
            }
            rf << rec.dump() << '\n';
        }
        return kExitOk;
    } catch (const StratificationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::string cache_dir;
    std::string labels_file;
    std::string labels_format = "microsoft";
    std::string scheme = "two_class";
    std::vector<std::size_t> grid = html2seq::default_padding_grid();
    std::string learner = "nb";
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::string plot_out;    // two-column plot data
    std::string windows_out; // window dump rows: url TAB pad TAB ids
    bool quiet = false;
};

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto scheme = eval::parse_scheme(opt.scheme);
        if (scheme == eval::ClassScheme::FiveClass) {
            err << "error: sweep is a classification experiment; use two_class or three_class\n";
            return kExitUsage;
        }
        if (opt.grid.empty()) {
            err << "error: empty padding grid\n";
            return kExitUsage;
        }
        const std::vector<std::size_t>& grid = opt.grid;

        ingest::SnapshotStore store(opt.cache_dir);
        auto rated = corpus::load_rated_corpus(opt.labels_file,
                                               corpus::parse_corpus_format(opt.labels_format),
                                               /*skip_bad_rows=*/true);
        std::unordered_map<std::string, int> label_of;
        for (const auto& r : rated) label_of[r.url] = r.aggregated;

        std::vector<std::vector<std::string>> streams;
        std::vector<std::string> stream_urls;
        std::vector<int> y;
        for (const auto& u : store.urls()) {
            auto it = label_of.find(url::normalize(u));
            if (it == label_of.end()) continue;
            try {
                auto doc = store.load(u);
                auto page = html::parse_html(doc);
                streams.push_back(page.tag_stream);
                stream_urls.push_back(u);
                y.push_back(eval::map_likert_index(it->second, scheme));
            } catch (const Error&) {
                continue; // unparsable page: excluded from the sweep
            }
        }
        if (streams.empty()) {
            err << "error: no labeled cached pages to sweep\n";
            return kExitDataFailure;
        }

        auto rows = eval::padding_sweep(streams, y, eval::scheme_class_names(scheme), grid,
                                        learn::LearnerSpec::parse(opt.learner), opt.folds,
                                        opt.seed);
        out << eval::render_sweep(rows);

        if (!opt.windows_out.empty()) {
            std::ofstream wf(opt.windows_out, std::ios::trunc);
            if (!wf) {
                err << "error: cannot write window dump " << opt.windows_out << '\n';
                return kExitDataFailure;
            }
            auto vocab = html2seq::build_vocab(streams);
            std::vector<std::size_t> pads(grid);
            std::sort(pads.begin(), pads.end());
            for (std::size_t pad : pads)
                for (std::size_t i = 0; i < streams.size(); ++i)
                    wf << html2seq::dump_window_row(
                              stream_urls[i],
                              html2seq::encode_window(streams[i], vocab, pad))
                       << '\n';
        }
        if (!opt.plot_out.empty()) {
            std::ofstream pf(opt.plot_out, std::ios::trunc);
            if (!pf) {
                err << "error: cannot write plot data " << opt.plot_out << '\n';
                return kExitDataFailure;
            }
            char buf[64];
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof(buf), "%zu %.6f\n", r.pad, r.weighted_f1);
                pf << buf;
            }
        }
        return kExitOk;
    } catch (const StratificationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------

struct ScoreOptions {
    std::string model_file;
    std::string features_file; // supplies schema context (domain vocab etc.)
    std::string url;
    std::string cache_dir;
    TableOptions tables;
    ingest::FetchPolicy policy;
    bool allow_fetch = true;
    std::size_t top_features = 10;
    bool quiet = false;
};

inline int cmd_score(const ScoreOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto artifact = learn::ModelArtifact::load(opt.model_file);
        auto f = load_feature_file(opt.features_file);

        // row from the features file when present; otherwise extract fresh
        std::vector<double> row;
        std::string normalized = url::normalize(opt.url);
        for (std::size_t i = 0; i < f.urls.size(); ++i)
            if (url::normalize(f.urls[i]) == normalized) {
                row = f.rows[i];
                break;
            }
        if (row.empty()) {
            ingest::RawDocument doc;
            bool have_doc = false;
            if (!opt.cache_dir.empty()) {
                ingest::SnapshotStore store(opt.cache_dir);
                if (store.contains(opt.url)) {
                    doc = store.load(opt.url);
                    have_doc = true;
                }
            }
            if (!have_doc) {
                if (!opt.allow_fetch) {
                    err << "error: " << opt.url << " is not cached and fetching is disabled\n";
                    return kExitDataFailure;
                }
                try {
                    doc = ingest::fetch_page(opt.url, opt.policy);
                } catch (const Error& e) {
                    err << "error: cannot fetch " << opt.url << ": " << e.what() << '\n';
                    return kExitDataFailure;
                }
            }
            LoadedTables tables = load_tables(opt.tables, {});
            // reuse the training run's context so the schema lines up
            tables.domain_vocab.ids.clear();
            for (const auto& [suffix, id] : f.domain_vocab_ids)
                tables.domain_vocab.ids[suffix] = id;
            tables.queried_at_days = f.queried_at_days > 0 ? f.queried_at_days
                                                           : tables.queried_at_days;
            TableOptions topt = opt.tables;
            topt.social_markers = f.social_markers;
            topt.summary_n = f.summary_n;
            feat::FeatureContext ctx = tables.context(topt);

            auto page = html::parse_html(doc);
            feat::ArchiveTimeline timeline;
            timeline.queried_at_days = tables.queried_at_days;
            if (tables.archive) {
                try {
                    timeline = feat::query_archive(opt.url, *tables.archive,
                                                   tables.queried_at_days);
                } catch (const ArchiveUnavailable&) {
                    timeline.unavailable = true;
                }
            }
            auto assembled = feat::assemble_features(page, timeline, ctx);
            if (assembled.vector.schema_fingerprint() != f.schema_fp)
                throw SchemaError("extracted schema does not match the features file");
            row = assembled.vector.values;
        }

        std::string fp = f.schema_fp;
        if (artifact.is_regression()) {
            double value = artifact.predict_value(row, fp);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.4f", value);
            out << opt.url << "\tlikert_prediction\t" << buf << '\n';
        } else {
            auto probs = artifact.predict_proba(row, fp);
            out << opt.url;
            std::size_t best = 0;
            for (std::size_t c = 1; c < probs.size(); ++c)
                if (probs[c] > probs[best]) best = c;
            out << "\tclass\t" << artifact.class_names[best];
            char buf[64];
            for (std::size_t c = 0; c < probs.size(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.6f", probs[c]);
                out << "\tp(" << artifact.class_names[c] << ")=" << buf;
            }
            out << '\n';
        }

        // top contributing features among the selected ones
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t m = 0; m < artifact.selection_mask.size(); ++m) {
            std::size_t j = artifact.selection_mask[m];
            double weight = std::fabs(row[j]);
            if (artifact.spec.kind == learn::LearnerKind::Ridge)
                weight = std::fabs(artifact.regressor.ridge().coefficients()[m] * row[j]);
            else if (artifact.spec.kind == learn::LearnerKind::Svr)
                weight = std::fabs(artifact.regressor.svr().weights()[m] * row[j]);
            ranked.emplace_back(weight, j);
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        std::size_t shown = std::min(opt.top_features, ranked.size());
        for (std::size_t k = 0; k < shown; ++k) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", row[ranked[k].second]);
            out << "  feature\t" << f.schema[ranked[k].second] << "\t" << buf << '\n';
        }
        return kExitOk;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// factcheck
// ---------------------------------------------------------------------------

struct FactcheckOptions {
    std::string evidence_file;
    std::string predictions_file; // "url TAB credible|non-credible"; alternative to model scoring
    std::string model_file;       // with features_file: score annotated urls
    std::string features_file;
    bool quiet = false;
};

inline int cmd_factcheck(const FactcheckOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto evidence = corpus::load_claim_evidence(opt.evidence_file);
        std::unordered_map<std::string, bool> predictions;

        if (!opt.predictions_file.empty()) {
            std::ifstream in(opt.predictions_file);
            if (!in) {
                err << "error: cannot open predictions file " << opt.predictions_file << '\n';
                return kExitUsage;
            }
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (text::trim(line).empty() || line[0] == '#') continue;
                auto tab = line.find('\t');
                if (tab == std::string::npos)
                    throw RowError(lineno, "expected 'url TAB credible|non-credible'");
                std::string label = text::to_lower(text::trim(line.substr(tab + 1)));
                bool credible;
                if (label == "credible") credible = true;
                else if (label == "non-credible" || label == "noncredible") credible = false;
                else throw RowError(lineno, "unknown prediction label '" + label + "'");
                predictions[url::normalize(line.substr(0, tab))] = credible;
            }
        } else if (!opt.model_file.empty() && !opt.features_file.empty()) {
            auto artifact = learn::ModelArtifact::load(opt.model_file);
            auto f = load_feature_file(opt.features_file);
            if (artifact.is_regression()) {
                err << "error: factcheck needs a classification model (two_class)\n";
                return kExitUsage;
            }
            for (std::size_t i = 0; i < f.urls.size(); ++i) {
                auto probs = artifact.predict_proba(f.rows[i], f.schema_fp);
                // two_class order is (low, high); low = non-credible
                bool credible = probs.size() == 2 ? probs[1] >= probs[0]
                                                  : probs.back() >= probs.front();
                predictions[url::normalize(f.urls[i])] = credible;
            }
        } else {
            err << "error: factcheck needs --predictions or (--model and --features)\n";
            return kExitUsage;
        }

        auto table = corpus::factcheck_report(evidence, predictions);
        out << table.render();
        return kExitOk;
    } catch (const IncompleteReport& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace webcred::cli
