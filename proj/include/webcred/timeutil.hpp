#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "webcred/errors.hpp"

namespace webcred::timeutil {

constexpr double kSecondsPerDay = 86400.0;

// Days since 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's days_from_civil).
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;                   // [0, 365]
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;        // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

// Seconds since epoch for "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS[Z]" or the CDX
// 14-digit form "YYYYMMDDHHMMSS".
inline std::optional<std::int64_t> parse_utc(std::string_view s) {
    auto digit = [&](std::size_t i) { return s[i] >= '0' && s[i] <= '9'; };
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
        return v;
    };
    int y, mo, d, h = 0, mi = 0, sec = 0;
    if (s.size() == 14) {
        for (std::size_t i = 0; i < 14; ++i)
            if (!digit(i)) return std::nullopt;
        y = num(0, 4); mo = num(4, 2); d = num(6, 2);
        h = num(8, 2); mi = num(10, 2); sec = num(12, 2);
    } else if (s.size() >= 10 && s[4] == '-' && s[7] == '-') {
        for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
            if (!digit(i)) return std::nullopt;
        y = num(0, 4); mo = num(5, 2); d = num(8, 2);
        if (s.size() >= 19 && (s[10] == 'T' || s[10] == ' ') && s[13] == ':' && s[16] == ':') {
            h = num(11, 2); mi = num(14, 2); sec = num(17, 2);
        } else if (s.size() != 10 && !(s.size() == 11 && s[10] == 'Z')) {
            return std::nullopt;
        }
    } else {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60)
        return std::nullopt;
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
}

inline std::string format_iso8601(std::int64_t epoch_secs) {
    std::int64_t days = epoch_secs / 86400;
    std::int64_t rem = epoch_secs % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

inline double days_since_epoch(std::int64_t epoch_secs) {
    return static_cast<double>(epoch_secs) / kSecondsPerDay;
}

inline std::int64_t parse_utc_or_throw(std::string_view s) {
    auto v = parse_utc(s);
    if (!v) throw TableFormatError("unparsable timestamp: " + std::string(s));
    return *v;
}

} // namespace webcred::timeutil
