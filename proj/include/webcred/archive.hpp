#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/timeutil.hpp"
#include "webcred/url.hpp"

namespace webcred::feat {

// Web-archive capture history for one URL (or its domain when the exact URL
// has none).
struct ArchiveTimeline {
    std::vector<double> snapshot_days; // sorted ascending, fractional days since epoch
    enum class Source { ExactUrl, DomainFallback } source = Source::ExactUrl;
    double queried_at_days = 0.0; // "today" for the corpus run
    bool unavailable = false;     // transport failure; scored as empty, flagged
};

class ArchiveClient {
public:
    virtual ~ArchiveClient() = default;
    // Capture timestamps for a query key (exact URL or registrable domain).
    // Throws ArchiveUnavailable on transport failure.
    virtual std::vector<double> capture_days(const std::string& query) const = 0;
};

// Reads "url TAB timestamp" lines; timestamps ISO-8601 or CDX 14-digit.
class FixtureArchiveClient : public ArchiveClient {
public:
    FixtureArchiveClient() = default;

    explicit FixtureArchiveClient(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw TableFormatError("cannot open archive fixture: " + path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw TableFormatError("archive fixture line " + std::to_string(lineno) +
                                       ": expected 'url TAB timestamp'");
            std::string key = line.substr(0, tab);
            auto secs = timeutil::parse_utc(line.substr(tab + 1));
            if (!secs)
                throw TableFormatError("archive fixture line " + std::to_string(lineno) +
                                       ": bad timestamp");
            captures_[key].push_back(timeutil::days_since_epoch(*secs));
        }
        for (auto& [key, days] : captures_) std::sort(days.begin(), days.end());
    }

    void add(const std::string& key, double days) {
        auto& v = captures_[key];
        v.insert(std::upper_bound(v.begin(), v.end(), days), days);
    }

    std::vector<double> capture_days(const std::string& query) const override {
        auto it = captures_.find(query);
        return it == captures_.end() ? std::vector<double>{} : it->second;
    }

private:
    std::unordered_map<std::string, std::vector<double>> captures_;
};

// Exact-URL timeline with registrable-domain fallback.
inline ArchiveTimeline query_archive(const std::string& url_str, const ArchiveClient& client,
                                     double queried_at_days) {
    ArchiveTimeline t;
    t.queried_at_days = queried_at_days;
    t.snapshot_days = client.capture_days(url_str);
    if (t.snapshot_days.empty()) {
        t.source = ArchiveTimeline::Source::DomainFallback;
        std::string domain = url::registrable_domain_of_url(url_str);
        if (!domain.empty()) t.snapshot_days = client.capture_days(domain);
    }
    std::sort(t.snapshot_days.begin(), t.snapshot_days.end());
    return t;
}

// f_arc closed form over day-valued gaps. Each delta is clamped below at one
// day and the delta_b*delta_e product at e, which keeps the function total
// and the first term at most 1.
inline double archive_score_closed_form(double delta_b, double delta_e, double delta_a,
                                        double delta_u, double gamma) {
    delta_b = std::max(delta_b, 1.0);
    delta_e = std::max(delta_e, 1.0);
    delta_a = std::max(delta_a, 1.0);
    delta_u = std::max(delta_u, 1.0);
    double product = std::max(delta_b * delta_e, std::exp(1.0));
    return (1.0 / std::log(product) + std::log(delta_a) + 1.0 / delta_u) * gamma;
}

// Archive feature: 0 for an empty timeline; with a single capture the
// first-update term drops out; domain-fallback timelines are penalized by
// gamma_fallback.
inline double score_archive(const ArchiveTimeline& t, double gamma_fallback = 0.5) {
    const auto& s = t.snapshot_days;
    if (s.empty()) return 0.0;
    double gamma = t.source == ArchiveTimeline::Source::DomainFallback ? gamma_fallback : 1.0;
    double delta_a = std::max(t.queried_at_days - s.front(), 1.0);
    double delta_u = std::max(t.queried_at_days - s.back(), 1.0);
    if (s.size() >= 2) {
        double delta_b = s[1] - s[0];
        double delta_e = s[s.size() - 1] - s[s.size() - 2];
        return archive_score_closed_form(delta_b, delta_e, delta_a, delta_u, gamma);
    }
    return (std::log(delta_a) + 1.0 / delta_u) * gamma; // single capture: no update gaps
}

} // namespace webcred::feat
