#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "webcred/archive.hpp"
#include "webcred/html.hpp"
#include "webcred/lexicon.hpp"
#include "webcred/readability.hpp"
#include "webcred/summarize.hpp"
#include "webcred/text.hpp"
#include "webcred/topics.hpp"
#include "webcred/url.hpp"

namespace webcred::feat {

// Fixed-order numeric vector plus its feature-name schema.
struct FeatureVector {
    std::vector<double> values;
    std::vector<std::string> schema;

    std::string schema_fingerprint() const {
        std::string joined;
        for (const auto& name : schema) {
            joined += name;
            joined += '\n';
        }
        return text::fnv1a64_hex(joined);
    }
};

// Corpus-built vocabulary over public suffixes; id 0 reserved for unknown.
struct DomainVocab {
    std::map<std::string, int> ids;

    static DomainVocab build(const std::vector<std::string>& urls) {
        DomainVocab v;
        std::set<std::string> suffixes;
        for (const auto& u : urls) {
            auto parsed = url::parse(u);
            if (parsed && !parsed->host.empty()) suffixes.insert(url::public_suffix(parsed->host));
        }
        int next = 1;
        for (const auto& s : suffixes) v.ids[s] = next++;
        return v;
    }

    int lookup(const std::string& suffix) const {
        auto it = ids.find(suffix);
        return it == ids.end() ? 0 : it->second;
    }
};

// feature 2: encoded public suffix of the page URL; unknown -> 0
inline int encode_domain(const std::string& url_str, const DomainVocab& vocab) {
    auto parsed = url::parse(url_str);
    if (!parsed || parsed->host.empty()) return 0;
    return vocab.lookup(url::public_suffix(parsed->host));
}

inline const std::array<std::string, 5>& authority_signal_names() {
    static const std::array<std::string, 5> names = {"mailto", "contact", "address", "copyright",
                                                     "about"};
    return names;
}

// feature 3: counts/flags of authority cues in the markup
//   [mailto links, contact anchors, postal-address hits, copyright, about link]
inline std::array<double, 5> authority_signals(const html::ParsedPage& page) {
    std::array<double, 5> out{};
    for (const auto& link : page.links) {
        if (link.protocol == "mailto") out[0] += 1.0;
        std::string target = text::to_lower(link.target);
        if (target.find("contact") != std::string::npos) out[1] += 1.0;
        if (target.find("/about") != std::string::npos || target == "about") out[4] = 1.0;
    }
    std::string lower_html = text::to_lower(page.html);
    // anchor text like "Contact us" without a contact href
    std::string lower_body = text::to_lower(page.body_text);
    if (out[1] == 0.0 && lower_body.find("contact") != std::string::npos) out[1] += 1.0;

    // postal cues: a street keyword with a house number within the preceding
    // three tokens ("221 Baker Street"), or PO boxes
    auto tokens = text::tokenize(lower_body);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& w = tokens[i];
        bool street_word = w == "street" || w == "st" || w == "avenue" || w == "ave" ||
                           w == "road" || w == "rd" || w == "boulevard" || w == "blvd" ||
                           w == "suite" || w == "lane";
        if (!street_word) continue;
        for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
            const std::string& prev = tokens[i - back];
            if (!prev.empty() && std::isdigit(static_cast<unsigned char>(prev[0]))) {
                out[2] += 1.0;
                break;
            }
        }
    }
    if (lower_body.find("p.o. box") != std::string::npos ||
        lower_body.find("po box") != std::string::npos)
        out[2] += 1.0;

    if (lower_html.find("\xc2\xa9") != std::string::npos ||
        lower_html.find("&copy;") != std::string::npos ||
        lower_body.find("copyright") != std::string::npos ||
        lower_body.find("(c)") != std::string::npos)
        out[3] = 1.0;
    if (out[4] == 0.0) {
        for (const auto& s : {std::string("about us"), std::string("about this site")})
            if (lower_body.find(s) != std::string::npos) out[4] = 1.0;
    }
    return out;
}

inline const std::array<std::string, 5>& link_protocol_names() {
    static const std::array<std::string, 5> names = {"http", "https", "ftp", "mailto", "other"};
    return names;
}

// feature 4: distinct outbound link targets per protocol. Outbound means the
// target's registrable domain differs from the page's; mailto and other
// non-host protocols always count as outbound.
inline std::array<double, 5> outbound_link_counts(const html::ParsedPage& page) {
    std::array<std::set<std::string>, 5> distinct;
    for (const auto& link : page.links) {
        if (link.protocol.empty()) continue; // relative: same site
        std::size_t slot;
        if (link.protocol == "http") slot = 0;
        else if (link.protocol == "https") slot = 1;
        else if (link.protocol == "ftp") slot = 2;
        else if (link.protocol == "mailto") slot = 3;
        else slot = 4;
        if (slot <= 2) {
            std::string target_domain = url::registrable_domain_of_url(link.target);
            if (!target_domain.empty() && target_domain == page.domain) continue; // internal
        }
        distinct[slot].insert(link.target);
    }
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) out[i] = static_cast<double>(distinct[i].size());
    return out;
}

// feature 5: per-category probabilities, mean over sentences, then the title.
// No sentences (or no title) fall back to the uninformative 0.5.
inline std::array<double, 12> category_vector(const html::ParsedPage& page,
                                              const CategoryModelSet& models) {
    std::array<double, 12> out{};
    if (page.sentences.empty()) {
        for (std::size_t c = 0; c < 6; ++c) out[c] = 0.5;
    } else {
        for (const auto& sentence : page.sentences) {
            auto probs = models.probabilities(sentence);
            for (std::size_t c = 0; c < 6; ++c) out[c] += probs[c];
        }
        for (std::size_t c = 0; c < 6; ++c) out[c] /= static_cast<double>(page.sentences.size());
    }
    if (page.title.empty()) {
        for (std::size_t c = 0; c < 6; ++c) out[6 + c] = 0.5;
    } else {
        auto probs = models.probabilities(page.title);
        for (std::size_t c = 0; c < 6; ++c) out[6 + c] = probs[c];
    }
    return out;
}

enum class Summarizer { LexRank, Lsa };

// features 6-7: category vector over only the top-N summary sentences.
inline std::array<double, 12> category_vector_summarized(const html::ParsedPage& page,
                                                         const CategoryModelSet& models,
                                                         Summarizer summarizer, std::size_t n) {
    std::array<double, 12> out{};
    std::vector<std::size_t> picked;
    if (!page.sentences.empty())
        picked = summarizer == Summarizer::LexRank ? lexrank_top(page.sentences, n)
                                                   : lsa_top(page.sentences, n);
    if (picked.empty()) {
        for (std::size_t c = 0; c < 6; ++c) out[c] = 0.5;
    } else {
        for (std::size_t idx : picked) {
            auto probs = models.probabilities(page.sentences[idx]);
            for (std::size_t c = 0; c < 6; ++c) out[c] += probs[c];
        }
        for (std::size_t c = 0; c < 6; ++c) out[c] /= static_cast<double>(picked.size());
    }
    if (page.title.empty()) {
        for (std::size_t c = 0; c < 6; ++c) out[6 + c] = 0.5;
    } else {
        auto probs = models.probabilities(page.title);
        for (std::size_t c = 0; c < 6; ++c) out[6 + c] = probs[c];
    }
    return out;
}

// feature 9: [P(spam|body), P(spam|title)]
inline std::array<double, 2> spam_flags(const html::ParsedPage& page, const SpamModel& model) {
    return {page.body_text.empty() ? 0.5 : model.spam_probability(page.body_text),
            page.title.empty() ? 0.5 : model.spam_probability(page.title)};
}

inline const std::vector<std::string>& default_social_markers() {
    static const std::vector<std::string> markers = {"facebook",  "twitter",  "share", "like",
                                                     "follow",    "tweet",    "instagram",
                                                     "whatsapp"};
    return markers;
}

// feature 10: case-insensitive token frequency per marker, marker order fixed
inline std::vector<double> social_tag_counts(const std::string& body_text,
                                             const std::vector<std::string>& markers) {
    std::unordered_map<std::string, double> freq;
    for (const auto& tok : text::tokenize(body_text)) freq[tok] += 1.0;
    std::vector<double> out;
    out.reserve(markers.size());
    for (const auto& marker : markers) {
        auto it = freq.find(text::to_lower(marker));
        out.push_back(it == freq.end() ? 0.0 : it->second);
    }
    return out;
}

// feature 11: registrable-domain membership in the questionable-source list
inline double opensources_flag(const std::string& domain,
                               const std::unordered_set<std::string>& list) {
    return list.count(url::registrable_domain(domain)) > 0 ? 1.0 : 0.0;
}

// feature 12: (rank value, presence flag)
inline std::pair<double, double> pagerank_cc(const std::string& host, const RankTable& table) {
    auto [value, present] = table.lookup(host);
    return {value, present ? 1.0 : 0.0};
}

// feature 13: per-category token shares over the whole token count
inline std::vector<double> gi_vector(const std::string& body_text, const LexiconTable& table) {
    std::vector<double> out(table.category_order.size(), 0.0);
    auto tokens = text::tokenize(body_text);
    if (tokens.empty()) return out;
    for (const auto& tok : tokens) {
        auto it = table.entries.find(tok);
        if (it == table.entries.end()) continue;
        for (int cat : it->second) out[static_cast<std::size_t>(cat)] += 1.0;
    }
    for (double& v : out) v /= static_cast<double>(tokens.size());
    return out;
}

inline const std::array<std::string, 4>& sentiment_component_names() {
    static const std::array<std::string, 4> names = {"pos", "neg", "neu", "valence"};
    return names;
}

// feature 14: [pos share, neg share, neutral share, mean valence] over tokens
// found in the lexicon; no hits -> [0,0,1,0]
inline std::array<double, 4> sentiment_vector(const std::string& body_text,
                                              const ValenceTable& table) {
    double pos = 0, neg = 0, neu = 0, total = 0, sum = 0;
    for (const auto& tok : text::tokenize(body_text)) {
        auto v = table.lookup(tok);
        if (!v) continue;
        total += 1.0;
        sum += *v;
        if (*v > 0) pos += 1.0;
        else if (*v < 0) neg += 1.0;
        else neu += 1.0;
    }
    if (total == 0.0) return {0.0, 0.0, 1.0, 0.0};
    return {pos / total, neg / total, neu / total, sum / total};
}

// Shared immutable context for a corpus run: trained text models, lexicon
// tables and the run's configuration.
struct FeatureContext {
    const CategoryModelSet* categories = nullptr;
    const SpamModel* spam = nullptr;
    const LexiconTable* gi = nullptr;
    const ValenceTable* valence = nullptr;
    const std::unordered_set<std::string>* opensources = nullptr;
    const RankTable* rank = nullptr;
    const DomainVocab* domain_vocab = nullptr;
    std::vector<std::string> social_markers = default_social_markers();
    std::size_t summary_n = 5;
    double gamma_fallback = 0.5;
};

struct AssembledFeatures {
    FeatureVector vector;
    std::vector<std::string> provenance; // fallback notes, never errors
};

// features 1-14 concatenated in schema order. Missing external data encodes
// as its defined fallback plus a provenance note.
inline AssembledFeatures assemble_features(const html::ParsedPage& page,
                                           const ArchiveTimeline& timeline,
                                           const FeatureContext& ctx) {
    AssembledFeatures out;
    auto& values = out.vector.values;
    auto& schema = out.vector.schema;
    auto push = [&](const std::string& name, double value) {
        schema.push_back(name);
        values.push_back(std::isfinite(value) ? value : 0.0);
    };

    // 1. web archive
    if (timeline.unavailable) out.provenance.push_back("archive: unavailable, scored 0");
    else if (timeline.snapshot_days.empty()) out.provenance.push_back("archive: no captures");
    else if (timeline.source == ArchiveTimeline::Source::DomainFallback)
        out.provenance.push_back("archive: domain fallback");
    push("arc_score", timeline.unavailable ? 0.0 : score_archive(timeline, ctx.gamma_fallback));

    // 2. encoded domain suffix
    int domain_id = 0;
    if (ctx.domain_vocab) domain_id = encode_domain(page.url, *ctx.domain_vocab);
    else out.provenance.push_back("domain vocab: absent, id 0");
    push("domain_id", static_cast<double>(domain_id));

    // 3. authority cues
    auto auth = authority_signals(page);
    for (std::size_t i = 0; i < auth.size(); ++i)
        push("auth_" + authority_signal_names()[i], auth[i]);

    // 4. outbound links per protocol
    auto out_links = outbound_link_counts(page);
    for (std::size_t i = 0; i < out_links.size(); ++i)
        push("out_" + link_protocol_names()[i], out_links[i]);

    // 5-7. category probabilities (full, lexrank-top-N, lsa-top-N)
    auto push12 = [&](const std::string& prefix, const std::array<double, 12>& v) {
        for (std::size_t c = 0; c < 6; ++c)
            push(prefix + "_" + CategoryModelSet::categories()[c] + "_body", v[c]);
        for (std::size_t c = 0; c < 6; ++c)
            push(prefix + "_" + CategoryModelSet::categories()[c] + "_title", v[6 + c]);
    };
    if (ctx.categories) {
        push12("cat", category_vector(page, *ctx.categories));
        push12("cat_lexrank", category_vector_summarized(page, *ctx.categories,
                                                         Summarizer::LexRank, ctx.summary_n));
        push12("cat_lsa", category_vector_summarized(page, *ctx.categories, Summarizer::Lsa,
                                                     ctx.summary_n));
    } else {
        out.provenance.push_back("category models: absent, all 0.5");
        std::array<double, 12> half;
        half.fill(0.5);
        push12("cat", half);
        push12("cat_lexrank", half);
        push12("cat_lsa", half);
    }

    // 8. readability metrics
    auto read = readability_vector(page.body_text);
    for (std::size_t i = 0; i < read.size(); ++i)
        push("read_" + readability_metric_names()[i], read[i]);

    // 9. spam probabilities
    if (ctx.spam) {
        auto spam = spam_flags(page, *ctx.spam);
        push("spam_body", spam[0]);
        push("spam_title", spam[1]);
    } else {
        out.provenance.push_back("spam model: absent, 0.5");
        push("spam_body", 0.5);
        push("spam_title", 0.5);
    }

    // 10. social tag frequencies
    auto social = social_tag_counts(page.body_text, ctx.social_markers);
    for (std::size_t i = 0; i < social.size(); ++i)
        push("social_" + text::to_lower(ctx.social_markers[i]), social[i]);

    // 11. opensources membership
    double open_flag = 0.0;
    if (ctx.opensources) open_flag = opensources_flag(page.domain, *ctx.opensources);
    else out.provenance.push_back("opensources list: absent, 0");
    push("opensources", open_flag);

    // 12. commoncrawl pagerank
    double rank_value = 0.0, rank_present = 0.0;
    if (ctx.rank) {
        auto parsed = url::parse(page.url);
        if (parsed && !parsed->host.empty())
            std::tie(rank_value, rank_present) = pagerank_cc(parsed->host, *ctx.rank);
    } else {
        out.provenance.push_back("rank table: absent, (0, 0)");
    }
    push("pagerank_cc", rank_value);
    push("pagerank_cc_present", rank_present);

    // 13. general inquirer shares (the full table carries 182 categories)
    if (ctx.gi) {
        if (ctx.gi->category_order.size() != 182)
            out.provenance.push_back("gi lexicon: " +
                                     std::to_string(ctx.gi->category_order.size()) +
                                     " categories (full table has 182)");
        auto gi = gi_vector(page.body_text, *ctx.gi);
        for (std::size_t c = 0; c < ctx.gi->category_order.size(); ++c)
            push("gi_" + ctx.gi->category_order[c], gi[c]);
    } else {
        out.provenance.push_back("gi lexicon: absent, omitted");
    }

    // 14. valence sentiment
    if (ctx.valence) {
        auto sent = sentiment_vector(page.body_text, *ctx.valence);
        for (std::size_t i = 0; i < sent.size(); ++i)
            push("sent_" + sentiment_component_names()[i], sent[i]);
    } else {
        out.provenance.push_back("valence lexicon: absent, neutral");
        push("sent_pos", 0.0);
        push("sent_neg", 0.0);
        push("sent_neu", 1.0);
        push("sent_valence", 0.0);
    }
    return out;
}

} // namespace webcred::feat
