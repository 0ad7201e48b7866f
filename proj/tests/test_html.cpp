#include "doctest.h"

#include "webcred/html.hpp"

using namespace webcred;

TEST_CASE("parse_html spec fixture: title, tag stream, links") {
    auto page = html::parse_html(
        "<html><title>T</title><body><a href='https://x'>t</a></body></html>", "https://host.org/");
    CHECK(page.title == "T");
    std::vector<std::string> want = {"html", "title", "/title", "body", "a", "/a", "/body",
                                     "/html"};
    CHECK(page.tag_stream == want);
    REQUIRE(page.links.size() == 1);
    CHECK(page.links[0].protocol == "https");
    CHECK(page.links[0].target == "https://x");
    CHECK(page.body_text == "t");
}

TEST_CASE("parse_html empty body") {
    auto page = html::parse_html("", "https://host.org/");
    CHECK(page.title.empty());
    CHECK(page.body_text.empty());
    CHECK(page.tag_stream.empty());
    CHECK(page.links.empty());
    CHECK(page.sentences.empty());
}

TEST_CASE("parse_html visible text extraction") {
    auto page = html::parse_html("<p>Hi <b>there</b></p>");
    CHECK(page.body_text == "Hi there");
}

TEST_CASE("first title wins when several are present") {
    auto page = html::parse_html("<title>First</title><title>Second</title>");
    CHECK(page.title == "First");
}

TEST_CASE("script and style content is dropped, comments too") {
    auto page = html::parse_html(
        "<body><script>var x = '<p>not text</p>';</script><style>p{}</style>"
        "<!-- hidden -->visible<noscript>fallback</noscript></body>");
    CHECK(page.body_text == "visible");
    // script/style still contribute tag tokens
    std::vector<std::string> want = {"body", "script", "/script", "style",     "/style",
                                     "noscript", "/noscript", "/body"};
    CHECK(page.tag_stream == want);
}

TEST_CASE("void and self-closing tags emit one token") {
    CHECK(html::tokenize_tags("<br>") == std::vector<std::string>{"br"});
    CHECK(html::tokenize_tags("<img src='x'/>") == std::vector<std::string>{"img"});
    CHECK(html::tokenize_tags("<a href='x'>t</a>") == std::vector<std::string>{"a", "/a"});
}

TEST_CASE("tokenize_tags hand-traced fixture") {
    std::string fixture = "<div id=1><p>a</p><br><span>b</span></div>";
    std::vector<std::string> want = {"div", "p", "/p", "br", "span", "/span", "/div"};
    CHECK(html::tokenize_tags(fixture) == want);
}

TEST_CASE("malformed html never errors") {
    CHECK_NOTHROW(html::parse_html("</b></b><p <p>>>x<"));
    CHECK_NOTHROW(html::parse_html("<a href='unterminated"));
    CHECK_NOTHROW(html::parse_html("<!doctype html><<<"));
    // closing tokens may lead; tokenizer stays order-faithful
    auto tags = html::tokenize_tags("</b><i>x</i>");
    std::vector<std::string> want = {"/b", "i", "/i"};
    CHECK(tags == want);
}

TEST_CASE("binary bytes raise ParseError") {
    ingest::RawDocument doc;
    doc.url = "https://host.org/file.pdf";
    doc.bytes = std::string("%PDF-1.4\x00\x01\x02", 11);
    CHECK_THROWS_AS(html::parse_html(doc), ParseError);
}

TEST_CASE("charset sniffing from meta and content-type") {
    CHECK(html::sniff_charset("", "text/html; charset=ISO-8859-1") == "iso-8859-1");
    CHECK(html::sniff_charset("<meta charset=\"utf-8\">", "text/html") == "utf-8");
    CHECK(html::sniff_charset("plain", "") == "utf-8");
}

TEST_CASE("latin-1 decoding maps high bytes") {
    std::string latin1 = "caf\xe9"; // cafe with e-acute in latin-1
    std::string utf8 = html::decode_to_utf8(latin1, "iso-8859-1");
    CHECK(utf8 == "caf\xc3\xa9");
}

TEST_CASE("invalid utf-8 is replaced, not fatal") {
    std::string junk = "ok\xff\xfe then";
    std::string out = html::decode_to_utf8(junk, "utf-8");
    CHECK(out.find("ok") == 0);
    CHECK(out.find("then") != std::string::npos);
}

TEST_CASE("entities decode in text") {
    auto page = html::parse_html("<p>a &amp; b &#65; &copy;</p>");
    CHECK(page.body_text == "a & b A \xc2\xa9");
}

TEST_CASE("links from src attributes and relative targets") {
    auto page = html::parse_html(
        "<img src='/local.png'><a href='ftp://files.example.com/x'>f</a>", "https://host.org/");
    REQUIRE(page.links.size() == 2);
    CHECK(page.links[0].protocol == ""); // relative
    CHECK(page.links[1].protocol == "ftp");
}

TEST_CASE("parse determinism over repeated runs") {
    std::string fixture = "<html><title>T</title><body><p>Some text. More!</p></body></html>";
    auto a = html::parse_html(fixture, "https://host.org/");
    auto b = html::parse_html(fixture, "https://host.org/");
    CHECK(a.tag_stream == b.tag_stream);
    CHECK(a.body_text == b.body_text);
    CHECK(a.sentences == b.sentences);
}
