#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/raw_document.hpp"
#include "webcred/sha256.hpp"
#include "webcred/timeutil.hpp"

namespace webcred::ingest {

// Content-addressed page cache. Layout:
//   <root>/manifest.txt                     url TAB hash TAB fetched_at TAB relpath
//   <root>/objects/<first2-of-hash>/<hash>  raw body bytes
// The manifest is append-only; the last record for a URL wins.
class SnapshotStore {
public:
    struct Entry {
        std::string hash;
        std::int64_t fetched_at = 0;
        std::string relpath;
    };

    explicit SnapshotStore(std::filesystem::path root) : root_(std::move(root)) {
        std::error_code ec;
        std::filesystem::create_directories(root_ / "objects", ec);
        if (ec) throw StoreError("cannot create snapshot root " + root_.string() + ": " + ec.message());
        load_manifest();
    }

    // Persists the body; idempotent for identical bytes under the same URL.
    std::string store(const RawDocument& doc) {
        std::lock_guard<std::mutex> lock(write_mu_);
        std::string hash = Sha256::hex(doc.bytes);
        auto it = index_.find(doc.url);
        if (it != index_.end() && it->second.hash == hash) return hash;

        std::string relpath = "objects/" + hash.substr(0, 2) + "/" + hash;
        std::filesystem::path obj = root_ / relpath;
        std::error_code ec;
        std::filesystem::create_directories(obj.parent_path(), ec);
        if (ec) throw StoreError("cannot create object dir: " + ec.message());
        if (!std::filesystem::exists(obj)) {
            std::ofstream out(obj, std::ios::binary | std::ios::trunc);
            if (!out) throw StoreError("cannot write object " + obj.string());
            out.write(doc.bytes.data(), static_cast<std::streamsize>(doc.bytes.size()));
            out.flush();
            if (!out) throw StoreError("short write on object " + obj.string());
        }
        std::ofstream manifest(root_ / "manifest.txt", std::ios::app);
        if (!manifest) throw StoreError("cannot append manifest in " + root_.string());
        manifest << doc.url << '\t' << hash << '\t' << timeutil::format_iso8601(doc.fetched_at)
                 << '\t' << relpath << '\n';
        manifest.flush();
        if (!manifest) throw StoreError("short write on manifest");
        index_[doc.url] = Entry{hash, doc.fetched_at, relpath};
        return hash;
    }

    bool contains(const std::string& url) const { return index_.count(url) > 0; }

    RawDocument load(const std::string& url) const {
        auto it = index_.find(url);
        if (it == index_.end()) throw NotCached(url);
        std::filesystem::path obj = root_ / it->second.relpath;
        std::ifstream in(obj, std::ios::binary);
        if (!in) throw IntegrityError("missing object for " + url + ": " + obj.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string bytes = buf.str();
        if (Sha256::hex(bytes) != it->second.hash)
            throw IntegrityError("content hash mismatch for " + url);
        RawDocument doc;
        doc.url = url;
        doc.fetched_at = it->second.fetched_at;
        doc.status = 200; // cache marker: only successful fetches are stored
        doc.bytes = std::move(bytes);
        return doc;
    }

    // URLs in deterministic (lexicographic) order.
    std::vector<std::string> urls() const {
        std::vector<std::string> out;
        out.reserve(index_.size());
        for (const auto& [url, entry] : index_) out.push_back(url);
        return out;
    }

    std::size_t size() const { return index_.size(); }
    const std::filesystem::path& root() const { return root_; }

private:
    void load_manifest() {
        std::ifstream in(root_ / "manifest.txt");
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::size_t pos = 0;
            while (true) {
                auto tab = line.find('\t', pos);
                fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
                if (tab == std::string::npos) break;
                pos = tab + 1;
            }
            if (fields.size() != 4) continue; // tolerate foreign lines
            auto ts = timeutil::parse_utc(fields[2]);
            index_[fields[0]] = Entry{fields[1], ts ? *ts : 0, fields[3]};
        }
    }

    std::filesystem::path root_;
    std::map<std::string, Entry> index_;
    std::mutex write_mu_;
};

} // namespace webcred::ingest
