#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace webcred::text {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

// Lowercased word tokens: maximal runs of alnum/apostrophe, apostrophes trimmed
// from the ends.
inline std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_word_char(s[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && is_word_char(s[j])) ++j;
        std::size_t a = i, b = j;
        while (a < b && s[a] == '\'') ++a;
        while (b > a && s[b - 1] == '\'') --b;
        if (b > a) tokens.push_back(to_lower(s.substr(a, b - a)));
        i = j;
    }
    return tokens;
}

inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true; // swallow leading whitespace
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_ws) out.push_back(' ');
            in_ws = true;
        } else {
            out.push_back(c);
            in_ws = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// English abbreviations that do not terminate a sentence. Periods stripped,
// lowercase.
inline const std::unordered_set<std::string>& abbreviation_guard() {
    static const std::unordered_set<std::string> abbrevs = {
        "mr",   "mrs",  "ms",   "dr",   "prof", "rev",  "sr",   "jr",
        "st",   "etc",  "vs",   "fig",  "figs", "no",   "nos",  "inc",
        "ltd",  "co",   "corp", "dept", "univ", "assn", "bros", "est",
        "jan",  "feb",  "mar",  "apr",  "jun",  "jul",  "aug",  "sep",
        "sept", "oct",  "nov",  "dec",  "mon",  "tue",  "wed",  "thu",
        "fri",  "sat",  "sun",  "gen",  "col",  "sgt",  "capt", "lt",
        "cmdr", "adm",  "maj",  "gov",  "sen",  "rep",  "hon",  "approx",
        "appt", "min",  "max",  "misc", "ave",  "blvd", "rd",
        "e.g",  "i.e",  "u.s",  "u.k",  "ph.d", "m.d",  "b.a",  "m.a",
        "a.m",  "p.m",
    };
    return abbrevs;
}

// Deterministic rule-based sentence segmentation. Splits after . ! ? when the
// break is not guarded by a known abbreviation; never emits empty sentences.
inline std::vector<std::string> split_sentences(std::string_view input) {
    std::vector<std::string> sentences;
    const std::string s = collapse_whitespace(input);
    if (s.empty()) return sentences;

    auto last_word_before = [&](std::size_t pos) -> std::string {
        // Word immediately preceding s[pos], keeping interior periods so that
        // multi-part abbreviations like "e.g" survive.
        std::size_t end = pos;
        std::size_t start = end;
        while (start > 0) {
            char c = s[start - 1];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '\'') {
                --start;
            } else {
                break;
            }
        }
        std::string w = to_lower(std::string_view(s).substr(start, end - start));
        while (!w.empty() && w.front() == '.') w.erase(w.begin());
        while (!w.empty() && w.back() == '.') w.pop_back();
        return w;
    };

    std::size_t begin = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c != '.' && c != '!' && c != '?') continue;
        // absorb runs of terminal punctuation and closing quotes/brackets
        std::size_t end = i + 1;
        while (end < s.size() &&
               (s[end] == '.' || s[end] == '!' || s[end] == '?' ||
                s[end] == '"' || s[end] == '\'' || s[end] == ')'))
            ++end;
        bool at_eot = end >= s.size();
        bool followed_by_space = !at_eot && s[end] == ' ';
        if (!at_eot && !followed_by_space) {
            i = end - 1;
            continue;
        }
        if (c == '.') {
            std::string w = last_word_before(i);
            if (abbreviation_guard().count(w) > 0) {
                i = end - 1;
                continue;
            }
        }
        std::string sentence = trim(std::string_view(s).substr(begin, end - begin));
        if (!sentence.empty()) sentences.push_back(sentence);
        begin = end;
        i = end - 1;
    }
    std::string tail = trim(std::string_view(s).substr(begin));
    if (!tail.empty()) sentences.push_back(tail);
    return sentences;
}

// FNV-1a, used for schema fingerprints and seed derivation.
inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace webcred::text
