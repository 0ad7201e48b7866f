#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "webcred/text.hpp"

namespace webcred::url {

struct Url {
    std::string scheme;   // lowercase
    std::string host;     // lowercase, no port
    std::string port;     // may be empty
    std::string path;     // includes query, excludes fragment
    std::string fragment; // without '#'
};

inline std::optional<Url> parse(std::string_view s) {
    Url u;
    auto scheme_end = s.find("://");
    std::size_t host_start;
    if (scheme_end != std::string_view::npos) {
        u.scheme = text::to_lower(s.substr(0, scheme_end));
        host_start = scheme_end + 3;
    } else {
        auto colon = s.find(':');
        if (colon == std::string_view::npos || colon == 0) return std::nullopt;
        // non-hierarchical form, e.g. mailto:user@host
        u.scheme = text::to_lower(s.substr(0, colon));
        u.path = std::string(s.substr(colon + 1));
        return u;
    }
    if (u.scheme.empty()) return std::nullopt;
    auto rest = s.substr(host_start);
    auto path_start = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, path_start);
    std::string_view tail =
        path_start == std::string_view::npos ? std::string_view() : rest.substr(path_start);
    // strip userinfo
    auto at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    auto colon = authority.rfind(':');
    if (colon != std::string_view::npos &&
        authority.find(']') == std::string_view::npos) { // no IPv6 brackets
        u.host = text::to_lower(authority.substr(0, colon));
        u.port = std::string(authority.substr(colon + 1));
    } else {
        u.host = text::to_lower(authority);
    }
    if (u.host.empty()) return std::nullopt;
    auto frag = tail.find('#');
    if (frag != std::string_view::npos) {
        u.fragment = std::string(tail.substr(frag + 1));
        tail = tail.substr(0, frag);
    }
    u.path = tail.empty() ? "/" : std::string(tail);
    return u;
}

inline bool is_absolute(std::string_view s) {
    auto u = parse(s);
    return u.has_value();
}

// Bundled public-suffix snapshot. A trimmed copy of the common entries; avoids
// a network dependency at the cost of long-tail coverage (unknown TLDs fall
// back to the last label).
inline const std::unordered_set<std::string>& public_suffix_snapshot() {
    static const std::unordered_set<std::string> suffixes = {
        // generic
        "com", "org", "net", "edu", "gov", "mil", "int", "info", "biz", "name",
        "pro", "mobi", "app", "dev", "io", "ai", "co", "me", "tv", "cc", "ws",
        "xyz", "online", "site", "top", "club", "shop", "blog", "news", "wiki",
        // country code
        "us", "uk", "fr", "de", "jp", "cn", "ru", "br", "au", "ca", "nl", "se",
        "no", "es", "it", "pl", "ch", "at", "be", "dk", "fi", "pt", "cz", "gr",
        "hu", "ie", "il", "in", "id", "kr", "mx", "nz", "za", "tr", "ua", "ar",
        "cl", "my", "sg", "hk", "tw", "th", "vn", "ph", "ro", "sk", "si", "bg",
        "lt", "lv", "ee", "is", "eu",
        // common second-level registries
        "co.uk", "org.uk", "ac.uk", "gov.uk", "me.uk", "net.uk", "ltd.uk",
        "plc.uk", "sch.uk", "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp",
        "com.au", "net.au", "org.au", "edu.au", "gov.au", "id.au",
        "co.nz", "net.nz", "org.nz", "govt.nz", "ac.nz",
        "com.br", "net.br", "org.br", "gov.br", "edu.br",
        "co.in", "net.in", "org.in", "ac.in", "gov.in", "firm.in",
        "co.kr", "or.kr", "go.kr", "ac.kr", "co.za", "org.za", "web.za",
        "com.mx", "org.mx", "gob.mx", "com.ar", "com.cn", "net.cn", "org.cn",
        "gov.cn", "edu.cn", "com.tw", "org.tw", "com.hk", "com.sg", "com.my",
        "com.tr", "com.ua", "gov.ua", "com.pl", "net.pl", "org.pl",
        "co.il", "org.il", "ac.il", "co.id", "or.id", "com.ph", "com.vn",
        "com.ru", "org.ru", "net.ru", "co.th", "or.th", "ac.th",
    };
    return suffixes;
}

// Longest suffix present in the snapshot; unknown hosts fall back to the last
// dot-separated label. "example.org" -> "org", "news.bbc.co.uk" -> "co.uk".
inline std::string public_suffix(std::string_view host_in) {
    std::string host = text::to_lower(host_in);
    if (host.empty()) return "";
    std::vector<std::size_t> dots;
    for (std::size_t i = 0; i < host.size(); ++i)
        if (host[i] == '.') dots.push_back(i);
    if (dots.empty()) return host;
    const auto& snap = public_suffix_snapshot();
    // try the longest candidate first (at most 3 labels)
    for (std::size_t labels = std::min<std::size_t>(3, dots.size()); labels >= 1; --labels) {
        std::size_t start = dots[dots.size() - labels] + 1;
        std::string cand = host.substr(start);
        if (snap.count(cand) > 0) return cand;
        if (labels == 1) return cand; // unknown TLD: last label
    }
    return host.substr(dots.back() + 1);
}

// Public suffix plus one preceding label. A host that IS a suffix maps to
// itself.
inline std::string registrable_domain(std::string_view host_in) {
    std::string host = text::to_lower(host_in);
    if (host.empty()) return "";
    std::string suffix = public_suffix(host);
    if (suffix.size() >= host.size()) return host;
    std::string_view prefix(host.data(), host.size() - suffix.size() - 1);
    auto dot = prefix.rfind('.');
    std::string label =
        dot == std::string_view::npos ? std::string(prefix) : std::string(prefix.substr(dot + 1));
    if (label.empty()) return suffix;
    return label + "." + suffix;
}

inline std::string registrable_domain_of_url(std::string_view url_str) {
    auto u = parse(url_str);
    if (!u || u->host.empty()) return "";
    return registrable_domain(u->host);
}

// lowercase host, strip fragment, keep query
inline std::string normalize(std::string_view url_str) {
    auto u = parse(url_str);
    if (!u) return std::string(url_str);
    if (u->host.empty()) return u->scheme + ":" + u->path;
    std::string out = u->scheme + "://" + u->host;
    if (!u->port.empty()) out += ":" + u->port;
    out += u->path;
    return out;
}

} // namespace webcred::url
