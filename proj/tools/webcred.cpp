// webcred: website credibility scoring pipeline.
//
// Subcommands: ingest, extract, train, eval, sweep, score, factcheck.
// Exit codes: 0 success, 1 partial/data failure, 2 usage/config error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "webcred/cli.hpp"
#include "webcred/config.hpp"

namespace {

using webcred::Config;
namespace cli = webcred::cli;

struct GlobalOptions {
    std::string config_path;
    std::string cache_dir = "cache";
    std::uint64_t seed = 42;
    bool quiet = false;
};

void apply_config(const Config& cfg, GlobalOptions& global, webcred::ingest::FetchPolicy& policy,
                  cli::TableOptions& tables) {
    if (cfg.has("cache_dir")) global.cache_dir = cfg.get("cache_dir");
    if (cfg.has("seed")) global.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    policy.timeout_secs = cfg.get_double("fetch.timeout_secs", policy.timeout_secs);
    policy.max_bytes =
        static_cast<std::size_t>(cfg.get_int("fetch.max_bytes", static_cast<long>(policy.max_bytes)));
    policy.max_redirects =
        static_cast<int>(cfg.get_int("fetch.max_redirects", policy.max_redirects));
    if (cfg.has("fetch.user_agent")) policy.user_agent = cfg.get("fetch.user_agent");
    policy.per_host_rps = cfg.get_double("fetch.per_host_rps", policy.per_host_rps);
    if (cfg.has("tables.dir")) tables.tables_dir = cfg.get("tables.dir");
    if (cfg.has("tables.archive_endpoint"))
        tables.archive_endpoint = cfg.get("tables.archive_endpoint");
    if (cfg.has("features.social_markers"))
        tables.social_markers = cfg.get_list("features.social_markers");
    tables.summary_n =
        static_cast<std::size_t>(cfg.get_int("features.summary_n", static_cast<long>(tables.summary_n)));
    if (cfg.has("features.queried_at")) tables.queried_at = cfg.get("features.queried_at");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"webcred: automated website credibility scoring"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions global;
    webcred::ingest::FetchPolicy policy;
    cli::TableOptions table_opts;

    app.add_option("--config", global.config_path, "key=value config file");
    app.add_option("--cache-dir", global.cache_dir, "snapshot cache directory");
    app.add_option("--seed", global.seed, "random seed for all experiments");
    app.add_flag("--quiet", global.quiet, "suppress per-item progress output");

    // ingest ------------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "fetch corpus urls into the snapshot cache");
    cli::IngestOptions ingest_opts;
    ingest->add_option("corpus", ingest_opts.corpus_file, "rated corpus file")->required();
    ingest->add_option("--format", ingest_opts.format, "corpus format: microsoft|c3");
    ingest->add_option("--timeout", policy.timeout_secs, "fetch timeout seconds");
    ingest->add_option("--max-bytes", policy.max_bytes, "per-page byte cap");
    ingest->add_option("--max-redirects", policy.max_redirects, "redirect limit");
    ingest->add_option("--user-agent", policy.user_agent, "user-agent header");
    ingest->add_option("--per-host-rps", policy.per_host_rps, "per-host requests per second");

    // extract -----------------------------------------------------------------
    auto* extract = app.add_subcommand("extract", "compute feature vectors for cached pages");
    cli::ExtractOptions extract_opts;
    extract->add_option("--tables", table_opts.tables_dir, "lexicon/rank tables directory");
    extract->add_option("--out", extract_opts.out_file, "output features file (json lines)")
        ->required();
    extract->add_flag("--no-archive", table_opts.no_archive, "disable the archive feature");
    extract->add_flag("--no-rank", table_opts.no_rank, "disable the rank table");
    extract->add_flag("--no-opensources", table_opts.no_opensources, "disable the domains list");
    extract->add_flag("--no-gi", table_opts.no_gi, "disable the category lexicon");
    extract->add_flag("--no-valence", table_opts.no_valence, "disable the valence lexicon");
    extract->add_option("--social-markers", table_opts.social_markers,
                        "override social marker list");
    extract->add_option("--summary-n", table_opts.summary_n, "top-N sentences for summarizers");
    extract->add_option("--queried-at", table_opts.queried_at,
                        "fixed 'today' timestamp for the archive feature (ISO-8601)");
    extract->add_option("--archive-endpoint", table_opts.archive_endpoint,
                        "live CDX endpoint url (overrides archive.tsv)");

    // train / eval --------------------------------------------------------------
    cli::TrainEvalOptions tv_opts;
    auto add_train_eval_options = [&](CLI::App* cmd) {
        cmd->add_option("--features", tv_opts.features_file, "features file from extract")
            ->required();
        cmd->add_option("--labels", tv_opts.labels_file, "rated corpus file")->required();
        cmd->add_option("--labels-format", tv_opts.labels_format, "microsoft|c3");
        cmd->add_option("--scheme", tv_opts.scheme, "two_class|three_class|five_class");
        cmd->add_option("--learner", tv_opts.learner, "nb|adaboost|gboost|ridge|svr");
        cmd->add_option("--percentile", tv_opts.selection.value,
                        "selection percentile (or top-K with --k-as-count)");
        cmd->add_flag("--k-as-count", tv_opts.selection.as_count,
                      "interpret --percentile as an absolute top-K count");
        cmd->add_option("--folds", tv_opts.folds, "cross-validation folds");
    };
    auto* train = app.add_subcommand("train", "fit a model on all labeled rows");
    add_train_eval_options(train);
    train->add_option("--model-out", tv_opts.model_out, "output model file")->required();
    train->add_option("--report-out", tv_opts.report_out, "append machine-readable run record");
    auto* evalc = app.add_subcommand("eval", "cross-validated evaluation");
    add_train_eval_options(evalc);
    evalc->add_option("--report-out", tv_opts.report_out, "append machine-readable run record");

    // sweep ---------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "padding sweep over tag windows");
    cli::SweepOptions sweep_opts;
    sweep->add_option("--labels", sweep_opts.labels_file, "rated corpus file")->required();
    sweep->add_option("--labels-format", sweep_opts.labels_format, "microsoft|c3");
    sweep->add_option("--scheme", sweep_opts.scheme, "two_class|three_class");
    sweep->add_option("--grid", sweep_opts.grid, "padding grid (default: paper grid)");
    sweep->add_option("--learner", sweep_opts.learner, "tag-count classifier (default nb)");
    sweep->add_option("--folds", sweep_opts.folds, "cross-validation folds");
    sweep->add_option("--plot-out", sweep_opts.plot_out, "two-column plot data file");
    sweep->add_option("--windows-out", sweep_opts.windows_out,
                      "dump encoded windows (url TAB pad TAB ids)");

    // score ----------------------------------------------------------------------
    auto* score = app.add_subcommand("score", "score one url with a trained model");
    cli::ScoreOptions score_opts;
    score->add_option("--model", score_opts.model_file, "model artifact")->required();
    score->add_option("--features", score_opts.features_file,
                      "features file supplying the schema context")
        ->required();
    score->add_option("url", score_opts.url, "url to score")->required();
    score->add_option("--tables", table_opts.tables_dir, "tables directory (for fresh extraction)");
    score->add_flag("--no-fetch", [&](std::int64_t) { score_opts.allow_fetch = false; },
                    "fail instead of fetching uncached urls");
    score->add_option("--top-features", score_opts.top_features, "contributing features to list");

    // factcheck ------------------------------------------------------------------
    auto* factcheck = app.add_subcommand("factcheck", "fact-checking impact report");
    cli::FactcheckOptions fact_opts;
    factcheck->add_option("evidence", fact_opts.evidence_file, "claim evidence file")->required();
    factcheck->add_option("--predictions", fact_opts.predictions_file,
                          "url TAB credible|non-credible predictions file");
    factcheck->add_option("--model", fact_opts.model_file, "model artifact");
    factcheck->add_option("--features", fact_opts.features_file, "features file for the model");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!global.config_path.empty()) {
            Config cfg = Config::load(global.config_path);
            apply_config(cfg, global, policy, table_opts);
        }
    } catch (const webcred::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            ingest_opts.cache_dir = global.cache_dir;
            ingest_opts.policy = policy;
            ingest_opts.quiet = global.quiet;
            return cli::cmd_ingest(ingest_opts, std::cout, std::cerr);
        }
        if (extract->parsed()) {
            extract_opts.cache_dir = global.cache_dir;
            extract_opts.tables = table_opts;
            extract_opts.quiet = global.quiet;
            return cli::cmd_extract(extract_opts, std::cout, std::cerr);
        }
        if (train->parsed() || evalc->parsed()) {
            tv_opts.seed = global.seed;
            tv_opts.quiet = global.quiet;
            return train->parsed() ? cli::cmd_train(tv_opts, std::cout, std::cerr)
                                   : cli::cmd_eval(tv_opts, std::cout, std::cerr);
        }
        if (sweep->parsed()) {
            sweep_opts.cache_dir = global.cache_dir;
            sweep_opts.seed = global.seed;
            sweep_opts.quiet = global.quiet;
            return cli::cmd_sweep(sweep_opts, std::cout, std::cerr);
        }
        if (score->parsed()) {
            score_opts.cache_dir = global.cache_dir;
            score_opts.tables = table_opts;
            score_opts.policy = policy;
            score_opts.quiet = global.quiet;
            return cli::cmd_score(score_opts, std::cout, std::cerr);
        }
        if (factcheck->parsed()) {
            fact_opts.quiet = global.quiet;
            return cli::cmd_factcheck(fact_opts, std::cout, std::cerr);
        }
    } catch (const webcred::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitDataFailure;
    }
    return cli::kExitUsage;
}
