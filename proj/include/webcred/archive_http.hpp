#pragma once

#include <string>
#include <vector>

#include "webcred/archive.hpp"
#include "webcred/errors.hpp"
#include "webcred/timeutil.hpp"
#include "webcred/url.hpp"

#if defined(WEBCRED_ENABLE_TLS) && !defined(CPPHTTPLIB_OPENSSL_SUPPORT)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

namespace webcred::feat {

// Live CDX endpoint client: GET <endpoint>?url=<query>&output=text&fl=timestamp
// answering one timestamp per line (14-digit or ISO-8601). Transport failures
// surface as ArchiveUnavailable so callers can fall back to an empty,
// flagged timeline.
class CdxHttpClient : public ArchiveClient {
public:
    explicit CdxHttpClient(std::string endpoint, double timeout_secs = 10.0)
        : endpoint_(std::move(endpoint)), timeout_secs_(timeout_secs) {}

    std::vector<double> capture_days(const std::string& query) const override {
        auto parsed = url::parse(endpoint_);
        if (!parsed || parsed->host.empty())
            throw ArchiveUnavailable("bad cdx endpoint: " + endpoint_);
        std::string origin = parsed->scheme + "://" + parsed->host;
        if (!parsed->port.empty()) origin += ":" + parsed->port;

        httplib::Client client(origin);
        auto timeout =
            std::chrono::milliseconds(static_cast<long>(std::max(0.001, timeout_secs_) * 1000));
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);

        httplib::Params params{
            {"url", query}, {"output", "text"}, {"fl", "timestamp"}};
        auto res = client.Get(parsed->path, params, httplib::Headers{});
        if (!res)
            throw ArchiveUnavailable("cdx transport failure (" +
                                     httplib::to_string(res.error()) + ")");
        if (res->status != 200)
            throw ArchiveUnavailable("cdx status " + std::to_string(res->status));

        std::vector<double> days;
        std::size_t start = 0;
        const std::string& body = res->body;
        while (start <= body.size()) {
            auto nl = body.find('\n', start);
            std::string line =
                body.substr(start, nl == std::string::npos ? nl : nl - start);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                line.pop_back();
            if (!line.empty()) {
                auto secs = timeutil::parse_utc(line);
                if (secs) days.push_back(timeutil::days_since_epoch(*secs));
            }
            if (nl == std::string::npos) break;
            start = nl + 1;
        }
        std::sort(days.begin(), days.end());
        return days;
    }

private:
    std::string endpoint_;
    double timeout_secs_;
};

} // namespace webcred::feat
