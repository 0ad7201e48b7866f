#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "webcred/text.hpp"

namespace webcred::feat {

// Deterministic vowel-group syllable counter: one syllable per maximal vowel
// run (y counts as a vowel), minus a silent final 'e', floor of one.
inline int count_syllables(std::string_view word) {
    auto is_vowel = [](char c) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    int groups = 0;
    bool in_group = false;
    bool has_letter = false;
    for (char c : word) {
        if (std::isalpha(static_cast<unsigned char>(c))) has_letter = true;
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if (!has_letter) return 0;
    if (word.size() >= 3) {
        char last = static_cast<char>(std::tolower(static_cast<unsigned char>(word.back())));
        char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(word[word.size() - 2])));
        // consonant+"le" endings keep their e (ta-ble, cy-cle)
        bool consonant_le = prev == 'l' && word.size() >= 3 &&
                            !is_vowel(static_cast<char>(
                                std::tolower(static_cast<unsigned char>(word[word.size() - 3]))));
        if (last == 'e' && !is_vowel(prev) && groups > 1 && !consonant_le) --groups;
    }
    return std::max(groups, 1);
}

// Trimmed familiar-word snapshot standing in for the Dale-Chall list. Words
// are additionally considered familiar when short (<= 4 letters), which keeps
// the difficult-word share meaningful at this list size.
inline const std::unordered_set<std::string>& familiar_words() {
    static const std::unordered_set<std::string> words = {
        "about", "after", "again", "almost", "along", "always", "animal", "another",
        "answer", "around", "because", "before", "began", "begin", "being", "below",
        "better", "between", "black", "bring", "brother", "brought", "called", "carry",
        "change", "children", "close", "country", "course", "didn't", "different",
        "does", "don't", "early", "earth", "enough", "every", "example", "family",
        "father", "first", "follow", "found", "friend", "front", "great", "green",
        "group", "happy", "heard", "house", "large", "learn", "leave", "letter",
        "light", "little", "living", "making", "might", "money", "morning", "mother",
        "never", "night", "number", "often", "other", "paper", "people", "picture",
        "place", "plant", "point", "question", "quite", "right", "river", "school",
        "second", "sentence", "should", "simple", "small", "something", "sometimes",
        "sound", "spell", "start", "still", "story", "study", "their", "there",
        "these", "thing", "think", "those", "thought", "three", "through", "together",
        "today", "under", "until", "water", "where", "which", "while", "white",
        "without", "world", "would", "write", "young",
    };
    return words;
}

struct TextStats {
    std::size_t sentences = 0;
    std::size_t words = 0;
    std::size_t syllables = 0;
    std::size_t letters = 0;        // alphabetic characters in words
    std::size_t characters = 0;     // alphanumeric characters in words
    std::size_t polysyllables = 0;  // words with >= 3 syllables
    std::size_t long_words = 0;     // words with > 6 characters
    std::size_t difficult_words = 0;

    bool empty() const { return words == 0; }
};

inline TextStats text_stats(std::string_view input) {
    TextStats st;
    st.sentences = text::split_sentences(input).size();
    auto tokens = text::tokenize(input);
    st.words = tokens.size();
    for (const auto& w : tokens) {
        int syl = count_syllables(w);
        st.syllables += static_cast<std::size_t>(syl);
        if (syl >= 3) ++st.polysyllables;
        std::size_t letters = 0, chars = 0;
        for (char c : w) {
            if (std::isalpha(static_cast<unsigned char>(c))) ++letters;
            if (std::isalnum(static_cast<unsigned char>(c))) ++chars;
        }
        st.letters += letters;
        st.characters += chars;
        if (chars > 6) ++st.long_words;
        if (!(w.size() <= 4 || familiar_words().count(w) > 0)) ++st.difficult_words;
    }
    if (st.words > 0 && st.sentences == 0) st.sentences = 1;
    return st;
}

inline const std::array<std::string, 8>& readability_metric_names() {
    static const std::array<std::string, 8> names = {
        "flesch_reading_ease", "flesch_kincaid_grade", "smog", "coleman_liau",
        "ari", "gunning_fog", "lix", "dale_chall"};
    return names;
}

// The 8 metrics in fixed order; all zeros for empty text.
inline std::array<double, 8> readability_vector(std::string_view input) {
    std::array<double, 8> out{};
    TextStats st = text_stats(input);
    if (st.empty()) return out;

    const double words = static_cast<double>(st.words);
    const double sentences = static_cast<double>(st.sentences);
    const double syllables = static_cast<double>(st.syllables);
    const double wps = words / sentences; // words per sentence
    const double spw = syllables / words; // syllables per word

    out[0] = 206.835 - 1.015 * wps - 84.6 * spw;                    // Flesch reading ease
    out[1] = 0.39 * wps + 11.8 * spw - 15.59;                       // Flesch-Kincaid grade
    out[2] = 1.0430 * std::sqrt(static_cast<double>(st.polysyllables) * 30.0 / sentences) +
             3.1291;                                                // SMOG
    double l = static_cast<double>(st.letters) / words * 100.0;
    double s_per_100 = sentences / words * 100.0;
    out[3] = 0.0588 * l - 0.296 * s_per_100 - 15.8;                 // Coleman-Liau
    out[4] = 4.71 * static_cast<double>(st.characters) / words + 0.5 * wps - 21.43; // ARI
    out[5] = 0.4 * (wps + 100.0 * static_cast<double>(st.polysyllables) / words);   // Gunning fog
    out[6] = wps + 100.0 * static_cast<double>(st.long_words) / words;              // LIX
    double difficult_pct = static_cast<double>(st.difficult_words) / words * 100.0;
    out[7] = 0.1579 * difficult_pct + 0.0496 * wps;                 // Dale-Chall
    if (difficult_pct > 5.0) out[7] += 3.6365;
    return out;
}

} // namespace webcred::feat
