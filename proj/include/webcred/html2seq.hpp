#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/html.hpp"

namespace webcred::html2seq {

// Tag-name vocabulary. Ids 0 (pad) and 1 (unknown) are reserved; opening and
// closing forms ("a" vs "/a") are distinct entries.
struct TagVocab {
    static constexpr int kPadId = 0;
    static constexpr int kUnknownId = 1;

    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names_by_id; // [0]="<pad>", [1]="<unk>"

    int lookup(const std::string& tag) const {
        auto it = ids.find(tag);
        return it == ids.end() ? kUnknownId : it->second;
    }

    std::size_t size() const { return names_by_id.size(); }
};

// Ids assigned by descending corpus frequency, ties broken lexicographically.
inline TagVocab build_vocab(const std::vector<std::vector<std::string>>& tag_streams) {
    if (tag_streams.empty()) throw EmptyCorpus();
    std::map<std::string, std::size_t> freq;
    for (const auto& stream : tag_streams)
        for (const auto& tag : stream) ++freq[tag];

    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    TagVocab vocab;
    vocab.names_by_id = {"<pad>", "<unk>"};
    for (const auto& [tag, count] : ranked) {
        vocab.ids[tag] = static_cast<int>(vocab.names_by_id.size());
        vocab.names_by_id.push_back(tag);
    }
    return vocab;
}

// Leading window of encoded tag ids, zero-padded to exactly `pad` entries.
struct TagSequence {
    std::vector<int> ids;
    std::size_t pad = 0;
    std::size_t source_len = 0;
};

inline TagSequence encode_window(const std::vector<std::string>& tags, const TagVocab& vocab,
                                 std::size_t pad) {
    TagSequence seq;
    seq.pad = pad;
    seq.source_len = tags.size();
    seq.ids.assign(pad, TagVocab::kPadId);
    const std::size_t take = std::min(pad, tags.size());
    for (std::size_t i = 0; i < take; ++i) seq.ids[i] = vocab.lookup(tags[i]);
    return seq;
}

// Bag-of-tags counts over the window, indexed by id; the pad id never counts.
inline std::vector<double> window_to_counts(const TagSequence& seq, const TagVocab& vocab) {
    std::vector<double> counts(vocab.size(), 0.0);
    const std::size_t filled = std::min(seq.pad, seq.source_len);
    for (std::size_t i = 0; i < filled && i < seq.ids.size(); ++i) {
        int id = seq.ids[i];
        if (id == TagVocab::kPadId) continue;
        if (id >= 0 && static_cast<std::size_t>(id) < counts.size())
            counts[static_cast<std::size_t>(id)] += 1.0;
    }
    return counts;
}

// Default sweep grid: log-spaced from 25 to 10000, including the pads that
// tend to win on real corpora (100, 175).
inline const std::vector<std::size_t>& default_padding_grid() {
    static const std::vector<std::size_t> grid = {25,  50,   100,  175,  250,
                                                  500, 1000, 2500, 5000, 10000};
    return grid;
}

// One window dump row: url TAB pad TAB comma-joined ids.
inline std::string dump_window_row(const std::string& url, const TagSequence& seq) {
    std::string out = url;
    out += '\t';
    out += std::to_string(seq.pad);
    out += '\t';
    for (std::size_t i = 0; i < seq.ids.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(seq.ids[i]);
    }
    return out;
}

inline void save_vocab(const TagVocab& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw StoreError("cannot write vocab file: " + path);
    for (std::size_t id = 2; id < vocab.names_by_id.size(); ++id)
        out << vocab.names_by_id[id] << '\t' << id << '\n';
}

inline TagVocab load_vocab(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open vocab file: " + path);
    std::map<int, std::string> by_id;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw TableFormatError("vocab line " + std::to_string(lineno) +
                                   ": expected 'tag TAB id'");
        int id;
        try {
            id = std::stoi(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw TableFormatError("vocab line " + std::to_string(lineno) + ": bad id");
        }
        if (id < 2) throw TableFormatError("vocab line " + std::to_string(lineno) +
                                           ": ids below 2 are reserved");
        by_id[id] = line.substr(0, tab);
    }
    TagVocab vocab;
    vocab.names_by_id = {"<pad>", "<unk>"};
    for (const auto& [id, tag] : by_id) {
        if (static_cast<std::size_t>(id) != vocab.names_by_id.size())
            throw TableFormatError("vocab file has non-dense ids near id " + std::to_string(id));
        vocab.ids[tag] = id;
        vocab.names_by_id.push_back(tag);
    }
    return vocab;
}

} // namespace webcred::html2seq
