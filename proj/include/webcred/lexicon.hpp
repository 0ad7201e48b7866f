#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/text.hpp"
#include "webcred/url.hpp"

namespace webcred::feat {

// Category-membership lexicon (General Inquirer style). File format:
//   # categories: Cat1,Cat2,...     (optional; fixes the order)
//   token TAB category[,category...]
// Without the header the order is the sorted set of categories seen.
struct LexiconTable {
    std::string name;
    std::vector<std::string> category_order;
    std::unordered_map<std::string, std::vector<int>> entries; // token -> category ids

    int category_index(const std::string& cat) const {
        auto it = std::find(category_order.begin(), category_order.end(), cat);
        return it == category_order.end() ? -1 : static_cast<int>(it - category_order.begin());
    }
};

inline LexiconTable load_category_lexicon(const std::string& path, const std::string& name = "") {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open lexicon: " + path);
    LexiconTable table;
    table.name = name.empty() ? path : name;
    std::unordered_map<std::string, int> cat_ids;
    std::vector<std::pair<std::string, std::vector<std::string>>> raw;
    std::string line;
    std::size_t lineno = 0;
    bool header_order = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("categories:");
            if (pos != std::string::npos) {
                header_order = true;
                std::string rest = line.substr(pos + 11);
                std::size_t start = 0;
                while (start <= rest.size()) {
                    auto comma = rest.find(',', start);
                    std::string cat = text::trim(
                        rest.substr(start, comma == std::string::npos ? comma : comma - start));
                    if (!cat.empty()) {
                        cat_ids[cat] = static_cast<int>(table.category_order.size());
                        table.category_order.push_back(cat);
                    }
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
            }
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw TableFormatError(table.name + " line " + std::to_string(lineno) +
                                   ": expected 'token TAB categories'");
        std::string token = text::to_lower(text::trim(line.substr(0, tab)));
        std::vector<std::string> cats;
        std::string rest = line.substr(tab + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            std::string cat =
                text::trim(rest.substr(start, comma == std::string::npos ? comma : comma - start));
            if (!cat.empty()) cats.push_back(cat);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (token.empty() || cats.empty())
            throw TableFormatError(table.name + " line " + std::to_string(lineno) +
                                   ": empty token or category list");
        raw.emplace_back(token, std::move(cats));
    }
    if (!header_order) {
        std::set<std::string> seen;
        for (const auto& [token, cats] : raw) seen.insert(cats.begin(), cats.end());
        for (const auto& cat : seen) {
            cat_ids[cat] = static_cast<int>(table.category_order.size());
            table.category_order.push_back(cat);
        }
    }
    for (auto& [token, cats] : raw) {
        auto& ids = table.entries[token];
        for (const auto& cat : cats) {
            auto it = cat_ids.find(cat);
            if (it == cat_ids.end()) {
                if (header_order)
                    throw TableFormatError(table.name + ": token '" + token +
                                           "' uses undeclared category '" + cat + "'");
                continue;
            }
            if (std::find(ids.begin(), ids.end(), it->second) == ids.end())
                ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
    }
    return table;
}

// token -> real valence score; "token TAB valence" lines.
struct ValenceTable {
    std::string name;
    std::unordered_map<std::string, double> scores;

    std::optional<double> lookup(const std::string& token) const {
        auto it = scores.find(text::to_lower(token));
        if (it == scores.end()) return std::nullopt;
        return it->second;
    }
};

inline ValenceTable load_valence_table(const std::string& path, const std::string& name = "") {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open valence table: " + path);
    ValenceTable table;
    table.name = name.empty() ? path : name;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw TableFormatError(table.name + " line " + std::to_string(lineno) +
                                   ": expected 'token TAB valence'");
        std::string token = text::to_lower(text::trim(line.substr(0, tab)));
        try {
            table.scores[token] = std::stod(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw TableFormatError(table.name + " line " + std::to_string(lineno) +
                                   ": bad valence value");
        }
    }
    return table;
}

// One registrable domain per line, '#' comments allowed.
inline std::unordered_set<std::string> load_domain_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open domain list: " + path);
    std::unordered_set<std::string> domains;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string domain = text::to_lower(text::trim(line));
        if (!domain.empty()) domains.insert(domain);
    }
    return domains;
}

// Host-level rank values ("host TAB value"). A "#reversed" header marks hosts
// stored label-reversed (org.example); they are normalized on load.
struct RankTable {
    std::unordered_map<std::string, double> by_host;

    // exact host first, registrable domain second
    std::pair<double, bool> lookup(const std::string& host) const {
        std::string h = text::to_lower(host);
        auto it = by_host.find(h);
        if (it != by_host.end()) return {it->second, true};
        std::string domain = url::registrable_domain(h);
        it = by_host.find(domain);
        if (it != by_host.end()) return {it->second, true};
        return {0.0, false};
    }
};

inline std::string reverse_host_labels(const std::string& host) {
    std::vector<std::string> labels;
    std::size_t start = 0;
    while (start <= host.size()) {
        auto dot = host.find('.', start);
        labels.push_back(host.substr(start, dot == std::string::npos ? dot : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    std::string out;
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
        if (!out.empty()) out += '.';
        out += *it;
    }
    return out;
}

inline RankTable load_rank_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open rank table: " + path);
    RankTable table;
    bool reversed = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("reversed") != std::string::npos) reversed = true;
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw TableFormatError("rank table line " + std::to_string(lineno) +
                                   ": expected 'host TAB value'");
        std::string host = text::to_lower(text::trim(line.substr(0, tab)));
        double value;
        try {
            value = std::stod(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw TableFormatError("rank table line " + std::to_string(lineno) +
                                   ": bad rank value");
        }
        if (host.empty())
            throw TableFormatError("rank table line " + std::to_string(lineno) + ": empty host");
        table.by_host[reversed ? reverse_host_labels(host) : host] = value;
    }
    return table;
}

} // namespace webcred::feat
