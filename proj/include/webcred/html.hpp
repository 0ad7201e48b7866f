#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/raw_document.hpp"
#include "webcred/text.hpp"
#include "webcred/url.hpp"

namespace webcred::html {

struct Attribute {
    std::string name;  // lowercase
    std::string value;
};

struct TagEvent {
    std::string name; // lowercase, closing tags prefixed "/"
    std::vector<Attribute> attrs;
    bool closing = false;
};

struct Link {
    std::string protocol; // lowercase scheme; empty for relative targets
    std::string target;
};

struct ParsedPage {
    std::string url;
    std::string domain; // registrable domain
    std::string title;
    std::string body_text;
    std::vector<std::string> sentences;
    std::vector<std::string> tag_stream; // "a", "/a", document order
    std::vector<Link> links;
    std::string html; // decoded markup
};

namespace detail {

inline bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == ':' || c == '_';
}

// script/style content is raw text: '<' inside is literal until the matching
// close tag. title keeps its text but allows no nested markup either.
inline bool is_raw_text_element(std::string_view name) {
    return name == "script" || name == "style" || name == "textarea" || name == "title";
}

inline void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x110000) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out += "\xEF\xBF\xBD";
    }
}

inline std::string decode_entities(std::string_view s) {
    static const std::unordered_map<std::string, const char*> named = {
        {"amp", "&"},   {"lt", "<"},     {"gt", ">"},      {"quot", "\""},
        {"apos", "'"},  {"nbsp", " "},   {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"},
        {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"}, {"hellip", "..."},
        {"rsquo", "'"}, {"lsquo", "'"},  {"rdquo", "\""},  {"ldquo", "\""},
        {"trade", "\xE2\x84\xA2"},
    };
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            unsigned long cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (std::size_t k = 2; k < body.size() && ok; ++k) {
                    char c = body[k];
                    ok = std::isxdigit(static_cast<unsigned char>(c)) != 0;
                    if (ok)
                        cp = cp * 16 + static_cast<unsigned long>(
                                           std::isdigit(static_cast<unsigned char>(c))
                                               ? c - '0'
                                               : std::tolower(c) - 'a' + 10);
                }
            } else {
                for (std::size_t k = 1; k < body.size() && ok; ++k) {
                    ok = std::isdigit(static_cast<unsigned char>(body[k])) != 0;
                    if (ok) cp = cp * 10 + static_cast<unsigned long>(body[k] - '0');
                }
            }
            if (ok && cp > 0) {
                append_utf8(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            auto it = named.find(std::string(body));
            if (it != named.end()) {
                out += it->second;
                i = semi + 1;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    return out;
}

} // namespace detail

// Error-tolerant streaming tag scanner. Calls on_tag for every markup tag in
// document order and on_text for intervening character data (raw-text element
// bodies included, flagged with the enclosing element's name).
template <typename TagFn, typename TextFn>
void scan(std::string_view htm, TagFn&& on_tag, TextFn&& on_text) {
    std::size_t i = 0;
    const std::size_t n = htm.size();
    std::string raw_container; // nonempty while inside <script>/<style>/...
    std::string pending_text;

    auto flush_text = [&](const std::string& container) {
        if (!pending_text.empty()) {
            on_text(pending_text, container);
            pending_text.clear();
        }
    };

    while (i < n) {
        if (!raw_container.empty()) {
            // look for the matching close tag only
            std::size_t close = i;
            bool found = false;
            while ((close = htm.find("</", close)) != std::string_view::npos) {
                std::size_t p = close + 2;
                std::size_t q = p;
                while (q < n && detail::is_name_char(htm[q])) ++q;
                if (text::to_lower(htm.substr(p, q - p)) == raw_container) {
                    found = true;
                    break;
                }
                close += 2;
            }
            std::size_t text_end = found ? close : n;
            pending_text.append(htm.substr(i, text_end - i));
            flush_text(raw_container);
            if (!found) break;
            std::size_t gt = htm.find('>', close);
            TagEvent ev;
            ev.name = "/" + raw_container;
            ev.closing = true;
            on_tag(ev);
            raw_container.clear();
            i = gt == std::string_view::npos ? n : gt + 1;
            continue;
        }

        char c = htm[i];
        if (c != '<') {
            pending_text.push_back(c);
            ++i;
            continue;
        }
        if (i + 1 >= n) {
            pending_text.push_back(c);
            break;
        }
        char next = htm[i + 1];
        if (next == '!') {
            flush_text("");
            if (htm.compare(i, 4, "<!--") == 0) {
                std::size_t end = htm.find("-->", i + 4);
                i = end == std::string_view::npos ? n : end + 3;
            } else {
                std::size_t end = htm.find('>', i);
                i = end == std::string_view::npos ? n : end + 1;
            }
            continue;
        }
        if (next == '?') {
            flush_text("");
            std::size_t end = htm.find('>', i);
            i = end == std::string_view::npos ? n : end + 1;
            continue;
        }
        bool closing = next == '/';
        std::size_t name_start = i + (closing ? 2 : 1);
        if (name_start >= n || !detail::is_name_start(htm[name_start])) {
            // literal '<'
            pending_text.push_back(c);
            ++i;
            continue;
        }
        std::size_t p = name_start;
        while (p < n && detail::is_name_char(htm[p])) ++p;
        std::string name = text::to_lower(htm.substr(name_start, p - name_start));

        TagEvent ev;
        ev.closing = closing;
        ev.name = closing ? "/" + name : name;

        // attributes up to '>', honoring quotes
        while (p < n && htm[p] != '>') {
            while (p < n && (std::isspace(static_cast<unsigned char>(htm[p])) || htm[p] == '/'))
                ++p;
            if (p >= n || htm[p] == '>') break;
            std::size_t a = p;
            while (p < n && htm[p] != '=' && htm[p] != '>' && htm[p] != '/' &&
                   !std::isspace(static_cast<unsigned char>(htm[p])))
                ++p;
            std::string attr_name = text::to_lower(htm.substr(a, p - a));
            std::string attr_value;
            while (p < n && std::isspace(static_cast<unsigned char>(htm[p]))) ++p;
            if (p < n && htm[p] == '=') {
                ++p;
                while (p < n && std::isspace(static_cast<unsigned char>(htm[p]))) ++p;
                if (p < n && (htm[p] == '"' || htm[p] == '\'')) {
                    char quote = htm[p++];
                    std::size_t v = p;
                    while (p < n && htm[p] != quote) ++p;
                    attr_value = std::string(htm.substr(v, p - v));
                    if (p < n) ++p;
                } else {
                    std::size_t v = p;
                    while (p < n && htm[p] != '>' &&
                           !std::isspace(static_cast<unsigned char>(htm[p])))
                        ++p;
                    attr_value = std::string(htm.substr(v, p - v));
                }
            }
            if (!attr_name.empty()) ev.attrs.push_back({attr_name, attr_value});
        }
        flush_text("");
        on_tag(ev);
        if (!closing && detail::is_raw_text_element(name)) raw_container = name;
        i = p < n ? p + 1 : n;
    }
    flush_text(raw_container);
}

// Just the ordered tag-name stream ("a", "/a", ...). Attributes, text and
// comments are discarded; self-closing and void tags emit one opening token.
inline std::vector<std::string> tokenize_tags(std::string_view htm) {
    std::vector<std::string> out;
    scan(
        htm, [&](const TagEvent& ev) { out.push_back(ev.name); },
        [](const std::string&, const std::string&) {});
    return out;
}

// Charset detection: HTTP content-type parameter first, then a <meta charset>
// scan of the head, then UTF-8 with replacement.
inline std::string sniff_charset(std::string_view bytes, std::string_view content_type) {
    auto find_charset = [](std::string_view s) -> std::string {
        std::string lower = text::to_lower(s);
        auto pos = lower.find("charset=");
        if (pos == std::string::npos) return "";
        pos += 8;
        std::size_t end = pos;
        while (end < lower.size() &&
               (std::isalnum(static_cast<unsigned char>(lower[end])) || lower[end] == '-' ||
                lower[end] == '_'))
            ++end;
        std::string cs = lower.substr(pos, end - pos);
        while (!cs.empty() && (cs.front() == '"' || cs.front() == '\'')) cs.erase(cs.begin());
        return cs;
    };
    std::string cs = find_charset(content_type);
    if (!cs.empty()) return cs;
    std::string head(bytes.substr(0, std::min<std::size_t>(bytes.size(), 4096)));
    cs = find_charset(head);
    if (!cs.empty()) return cs;
    return "utf-8";
}

// Decode to UTF-8. Latin-1 / windows-1252 bytes map through their code
// points; anything else is treated as UTF-8 with invalid sequences replaced.
inline std::string decode_to_utf8(std::string_view bytes, std::string_view charset) {
    std::string cs = text::to_lower(charset);
    if (cs == "iso-8859-1" || cs == "latin-1" || cs == "latin1" || cs == "windows-1252" ||
        cs == "cp1252") {
        std::string out;
        out.reserve(bytes.size());
        for (unsigned char b : bytes) {
            if (b < 0x80)
                out.push_back(static_cast<char>(b));
            else
                detail::append_utf8(out, b);
        }
        return out;
    }
    // UTF-8 validation with U+FFFD replacement
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        unsigned char b = static_cast<unsigned char>(bytes[i]);
        std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
        bool ok = len > 0 && i + len <= bytes.size();
        for (std::size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            out += "\xEF\xBF\xBD";
            ++i;
        }
    }
    return out;
}

inline std::string extract_protocol(std::string_view target) {
    auto u = url::parse(target);
    if (!u) return "";
    return u->scheme;
}

// Full parse of a raw document: title, visible text (script/style/noscript
// and comments dropped, whitespace normalized), ordered tag stream, links
// from href/src attributes.
inline ParsedPage parse_html(const ingest::RawDocument& doc) {
    // binary sniff: NUL bytes mean this is not text at all
    if (doc.bytes.find('\0') != std::string::npos)
        throw ParseError("undecodable (binary) content: " + doc.url);

    ParsedPage page;
    page.url = doc.url;
    page.domain = url::registrable_domain_of_url(doc.url);
    page.html = decode_to_utf8(doc.bytes, sniff_charset(doc.bytes, doc.content_type));

    std::string body_raw;
    std::string title_raw;
    bool title_seen = false;
    int noscript_depth = 0;

    scan(
        page.html,
        [&](const TagEvent& ev) {
            page.tag_stream.push_back(ev.name);
            if (ev.name == "noscript") ++noscript_depth;
            if (ev.name == "/noscript" && noscript_depth > 0) --noscript_depth;
            if (ev.name == "/title") title_seen = true;
            for (const auto& attr : ev.attrs) {
                if (attr.name == "href" || attr.name == "src") {
                    if (attr.value.empty()) continue;
                    page.links.push_back({extract_protocol(attr.value), attr.value});
                }
            }
            // tag boundaries become whitespace so words don't fuse
            body_raw.push_back(' ');
        },
        [&](const std::string& txt, const std::string& container) {
            if (container == "script" || container == "style" || container == "textarea")
                return;
            if (container == "title") {
                if (!title_seen) title_raw += txt; // first <title> wins
                return;
            }
            if (noscript_depth > 0) return;
            body_raw += txt;
        });

    page.title = text::collapse_whitespace(detail::decode_entities(title_raw));
    page.body_text = text::collapse_whitespace(detail::decode_entities(body_raw));
    page.sentences = text::split_sentences(page.body_text);
    return page;
}

inline ParsedPage parse_html(std::string_view htm, std::string_view page_url = "") {
    ingest::RawDocument doc;
    doc.url = std::string(page_url);
    doc.bytes = std::string(htm);
    doc.content_type = "text/html; charset=utf-8";
    return parse_html(doc);
}

} // namespace webcred::html
