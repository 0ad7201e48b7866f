#pragma once

#include <cstdint>
#include <string>

namespace webcred::ingest {

// One fetched-or-cached web document, body kept as raw octets.
struct RawDocument {
    std::string url;          // absolute
    std::int64_t fetched_at = 0; // epoch seconds UTC; 0 when unknown
    int status = 0;           // HTTP status, or 0 for cache-only markers
    std::string bytes;        // raw body
    std::string content_type; // media type, may be empty
    bool truncated = false;   // body cut at the fetch policy's max_bytes
};

} // namespace webcred::ingest
