#pragma once

#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "webcred/errors.hpp"
#include "webcred/raw_document.hpp"
#include "webcred/url.hpp"

#if defined(WEBCRED_ENABLE_TLS) && !defined(CPPHTTPLIB_OPENSSL_SUPPORT)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

namespace webcred::ingest {

struct FetchPolicy {
    double timeout_secs = 10.0;
    std::size_t max_bytes = 2 * 1024 * 1024;
    int max_redirects = 5;
    std::string user_agent = "webcred/0.1 (+research crawler)";
    double per_host_rps = 1.0; // requests per second per host
};

// Per-host request spacing. Thread-safe; shared by concurrent fetch workers.
class HostRateLimiter {
public:
    explicit HostRateLimiter(double requests_per_sec)
        : min_interval_(requests_per_sec > 0 ? 1.0 / requests_per_sec : 0.0) {}

    void acquire(const std::string& host) {
        if (min_interval_ <= 0) return;
        std::chrono::steady_clock::time_point wait_until;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto now = std::chrono::steady_clock::now();
            auto it = next_allowed_.find(host);
            wait_until = (it == next_allowed_.end() || it->second < now) ? now : it->second;
            next_allowed_[host] =
                wait_until + std::chrono::microseconds(static_cast<long>(min_interval_ * 1e6));
        }
        std::this_thread::sleep_until(wait_until);
    }

private:
    double min_interval_;
    std::mutex mu_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_allowed_;
};

namespace detail {

inline std::string resolve_location(const url::Url& base, const std::string& location) {
    if (location.empty()) return "";
    if (location.find("://") != std::string::npos) return location;
    std::string origin = base.scheme + "://" + base.host;
    if (!base.port.empty()) origin += ":" + base.port;
    if (location[0] == '/') return origin + location;
    std::string dir = base.path;
    auto slash = dir.rfind('/');
    dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
    return origin + dir + location;
}

} // namespace detail

// Single fetch under policy. Redirects are followed manually so the limit is
// enforced exactly; bodies larger than max_bytes are truncated and flagged,
// not failed.
inline RawDocument fetch_page(const std::string& url_str, const FetchPolicy& policy,
                              HostRateLimiter* limiter = nullptr) {
    std::string current = url_str;
    for (int hops = 0;; ++hops) {
        auto parsed = url::parse(current);
        if (!parsed || parsed->host.empty())
            throw Unreachable("invalid or non-absolute url: " + current);
        if (parsed->scheme != "http" && parsed->scheme != "https")
            throw Unreachable("unsupported scheme '" + parsed->scheme + "': " + current);
#ifndef WEBCRED_ENABLE_TLS
        if (parsed->scheme == "https")
            throw Unreachable("https support not built in: " + current);
#endif
        if (limiter) limiter->acquire(parsed->host);

        std::string origin = parsed->scheme + "://" + parsed->host;
        if (!parsed->port.empty()) origin += ":" + parsed->port;
        httplib::Client client(origin);
        client.set_follow_location(false);
        auto timeout = std::chrono::milliseconds(
            static_cast<long>(std::max(0.001, policy.timeout_secs) * 1000));
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
#ifdef WEBCRED_ENABLE_TLS
        client.enable_server_certificate_verification(false);
#endif

        RawDocument doc;
        doc.url = current;
        httplib::Headers headers = {{"User-Agent", policy.user_agent}};
        std::string body;
        bool truncated = false;
        int status_seen = 0;
        std::string ctype_seen;
        auto res = client.Get(
            parsed->path, headers,
            [&](const httplib::Response& r) {
                status_seen = r.status;
                ctype_seen = r.get_header_value("Content-Type");
                return true;
            },
            [&](const char* data, size_t len) {
                std::size_t room =
                    policy.max_bytes > body.size() ? policy.max_bytes - body.size() : 0;
                if (len <= room) {
                    body.append(data, len);
                    return true;
                }
                body.append(data, room);
                truncated = true;
                return false; // stop the transfer
            });

        if (!res) {
            if (truncated) {
                // transfer cancelled by us after hitting the cap
                doc.status = status_seen > 0 ? status_seen : 200;
                doc.content_type = ctype_seen;
            } else {
                throw Unreachable("fetch failed (" + httplib::to_string(res.error()) +
                                  "): " + current);
            }
        } else {
            doc.status = res->status;
            doc.content_type = res->get_header_value("Content-Type");
            if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
                if (hops >= policy.max_redirects) throw TooManyRedirects(url_str);
                current = detail::resolve_location(*parsed, res->get_header_value("Location"));
                if (current.empty()) throw Unreachable("redirect without location: " + doc.url);
                continue;
            }
        }
        doc.bytes = std::move(body);
        doc.truncated = truncated;
        doc.fetched_at = static_cast<std::int64_t>(std::time(nullptr));
        if (doc.status < 200 || doc.status >= 300) throw HttpError(doc.status, current);
        return doc;
    }
}

} // namespace webcred::ingest
