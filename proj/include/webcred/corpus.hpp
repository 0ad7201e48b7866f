#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/text.hpp"
#include "webcred/url.hpp"

namespace webcred::corpus {

// One URL with its Likert ratings (1-5) and the aggregated rating.
struct RatedUrl {
    std::string url;
    std::vector<int> ratings;
    int aggregated = 0;
};

enum class CorpusFormat { Microsoft, C3 };

inline CorpusFormat parse_corpus_format(const std::string& name) {
    if (name == "microsoft") return CorpusFormat::Microsoft;
    if (name == "c3") return CorpusFormat::C3;
    throw Error("unknown corpus format: " + name + " (expected microsoft|c3)");
}

// Mean rating rounded half-up into {1..5}.
inline int aggregate_ratings(const std::vector<int>& ratings, bool use_median = false) {
    if (ratings.empty()) throw EmptyRatings();
    double value;
    if (use_median) {
        std::vector<int> sorted(ratings);
        std::sort(sorted.begin(), sorted.end());
        std::size_t n = sorted.size();
        value = n % 2 == 1 ? sorted[n / 2]
                           : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    } else {
        double sum = 0;
        for (int r : ratings) sum += r;
        value = sum / static_cast<double>(ratings.size());
    }
    int rounded = static_cast<int>(std::floor(value + 0.5));
    return std::clamp(rounded, 1, 5);
}

namespace detail {

inline char detect_delimiter(const std::string& header) {
    return header.find('\t') != std::string::npos ? '\t' : ',';
}

inline std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delim, start);
        out.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    for (auto& f : out) f = text::trim(f);
    return out;
}

} // namespace detail

// Delimiter-separated rated-URL corpus with a header row. Microsoft format is
// one rating per URL; C3 has many rows per URL which get grouped. URLs are
// normalized (lowercase host, fragment stripped).
inline std::vector<RatedUrl> load_rated_corpus(const std::string& path, CorpusFormat format,
                                               bool skip_bad_rows = false,
                                               std::vector<std::string>* row_errors = nullptr) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw Error("empty corpus file: " + path);
    char delim = detail::detect_delimiter(header);

    std::map<std::string, std::vector<int>> grouped; // normalized url -> ratings
    std::vector<std::string> order;                  // first-seen order
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        auto handle_error = [&](const std::string& what) {
            if (!skip_bad_rows) throw RowError(lineno, what);
            if (row_errors)
                row_errors->push_back("line " + std::to_string(lineno) + ": " + what);
        };
        auto fields = detail::split_fields(line, delim);
        std::size_t min_fields = format == CorpusFormat::Microsoft ? 2 : 2;
        if (fields.size() < min_fields || fields[0].empty()) {
            handle_error("malformed row");
            continue;
        }
        int rating;
        try {
            rating = std::stoi(fields[1]);
        } catch (const std::exception&) {
            handle_error("non-numeric rating '" + fields[1] + "'");
            continue;
        }
        if (rating < 1 || rating > 5) {
            handle_error("rating outside 1-5: " + std::to_string(rating));
            continue;
        }
        std::string normalized = url::normalize(fields[0]);
        if (grouped.find(normalized) == grouped.end()) order.push_back(normalized);
        grouped[normalized].push_back(rating);
    }

    std::vector<RatedUrl> out;
    out.reserve(order.size());
    for (const auto& u : order) {
        RatedUrl r;
        r.url = u;
        r.ratings = grouped[u];
        r.aggregated = aggregate_ratings(r.ratings);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// fact-checking evidence
// ---------------------------------------------------------------------------

struct EvidenceUrl {
    std::string url;
    std::optional<bool> annotated_credible; // human annotation when present
};

struct ClaimEvidence {
    std::string claim_id;
    bool claim_true = false;
    std::vector<EvidenceUrl> urls;
};

// "claim_id,truth,url[,annotation]" with a header row. Unknown truth labels
// are row errors; the annotation column is optional per row.
inline std::vector<ClaimEvidence> load_claim_evidence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open evidence file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw Error("empty evidence file: " + path);
    char delim = detail::detect_delimiter(header);

    std::map<std::string, ClaimEvidence> grouped;
    std::vector<std::string> order;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        auto fields = detail::split_fields(line, delim);
        if (fields.size() < 3 || fields[0].empty() || fields[2].empty())
            throw RowError(lineno, "expected claim_id,truth,url[,annotation]");
        std::string truth = text::to_lower(fields[1]);
        bool is_true;
        if (truth == "true") is_true = true;
        else if (truth == "false") is_true = false;
        else throw RowError(lineno, "unknown truth label '" + fields[1] + "'");

        EvidenceUrl ev;
        ev.url = url::normalize(fields[2]);
        if (fields.size() >= 4 && !fields[3].empty()) {
            std::string ann = text::to_lower(fields[3]);
            if (ann == "credible") ev.annotated_credible = true;
            else if (ann == "non-credible" || ann == "noncredible")
                ev.annotated_credible = false;
            else throw RowError(lineno, "unknown annotation '" + fields[3] + "'");
        }

        auto it = grouped.find(fields[0]);
        if (it == grouped.end()) {
            order.push_back(fields[0]);
            ClaimEvidence ce;
            ce.claim_id = fields[0];
            ce.claim_true = is_true;
            ce.urls.push_back(std::move(ev));
            grouped.emplace(fields[0], std::move(ce));
        } else {
            if (it->second.claim_true != is_true)
                throw RowError(lineno, "claim " + fields[0] + " has conflicting truth labels");
            it->second.urls.push_back(std::move(ev));
        }
    }

    std::vector<ClaimEvidence> out;
    out.reserve(order.size());
    for (const auto& id : order) out.push_back(std::move(grouped[id]));
    return out;
}

// ---------------------------------------------------------------------------
// fact-checking impact report
// ---------------------------------------------------------------------------

struct ImpactRow {
    std::string truth_label; // "true" / "false"
    std::size_t annotated_noncred = 0;
    std::size_t model_noncred_correct = 0;
    std::size_t annotated_cred = 0;
    std::size_t model_cred_correct = 0;

    // published-table convention: fractions truncated to two decimals
    static double display_fraction(std::size_t num, std::size_t den) {
        if (den == 0) return 0.0;
        return std::floor(static_cast<double>(num) / static_cast<double>(den) * 100.0) / 100.0;
    }
    double noncred_fraction() const {
        return display_fraction(model_noncred_correct, annotated_noncred);
    }
    double cred_fraction() const { return display_fraction(model_cred_correct, annotated_cred); }
};

struct ImpactTable {
    std::vector<ImpactRow> rows; // "true" first, then "false"
    bool empty() const {
        for (const auto& r : rows)
            if (r.annotated_noncred + r.annotated_cred > 0) return false;
        return true;
    }

    std::string render() const {
        if (empty()) return "no annotated evidence urls; nothing to report\n";
        std::ostringstream out;
        out << "label\tannotated_noncred\tmodel_noncred\tfrac\tannotated_cred\tmodel_cred\tfrac\n";
        char buf[160];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%s\t%zu\t%zu\t%.2f\t%zu\t%zu\t%.2f\n",
                          r.truth_label.c_str(), r.annotated_noncred, r.model_noncred_correct,
                          r.noncred_fraction(), r.annotated_cred, r.model_cred_correct,
                          r.cred_fraction());
            out << buf;
        }
        return out.str();
    }
};

// Per truth label: how many human-annotated URLs the model labels correctly.
// Predictions map normalized URL -> credible? (low class = non-credible).
// Missing predictions for annotated URLs are an error listing the URLs.
inline ImpactTable factcheck_report(const std::vector<ClaimEvidence>& evidence,
                                    const std::unordered_map<std::string, bool>& predicted_credible) {
    std::vector<std::string> missing;
    ImpactTable table;
    table.rows = {ImpactRow{"true"}, ImpactRow{"false"}};
    for (const auto& claim : evidence) {
        ImpactRow& row = table.rows[claim.claim_true ? 0 : 1];
        for (const auto& ev : claim.urls) {
            if (!ev.annotated_credible.has_value()) continue;
            auto it = predicted_credible.find(ev.url);
            if (it == predicted_credible.end()) {
                missing.push_back(ev.url);
                continue;
            }
            if (*ev.annotated_credible) {
                ++row.annotated_cred;
                if (it->second) ++row.model_cred_correct;
            } else {
                ++row.annotated_noncred;
                if (!it->second) ++row.model_noncred_correct;
            }
        }
    }
    if (!missing.empty()) {
        std::string joined;
        for (const auto& u : missing) {
            if (!joined.empty()) joined += ", ";
            joined += u;
        }
        throw IncompleteReport("missing model predictions for annotated urls: " + joined);
    }
    return table;
}

// Validation pass over a rated corpus against a snapshot cache: returns the
// usable subset and an exclusion list with reasons (uncached, binary, ...).
struct CorpusValidation {
    std::vector<RatedUrl> usable;
    std::vector<std::pair<std::string, std::string>> excluded; // url, reason
};

template <typename CacheCheck>
CorpusValidation validate_corpus(const std::vector<RatedUrl>& rated, CacheCheck&& usable_reason) {
    CorpusValidation v;
    for (const auto& r : rated) {
        std::string reason = usable_reason(r.url);
        if (reason.empty()) v.usable.push_back(r);
        else v.excluded.emplace_back(r.url, reason);
    }
    return v;
}

} // namespace webcred::corpus
