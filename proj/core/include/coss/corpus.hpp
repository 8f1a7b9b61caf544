#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coss/time.hpp"
#include "coss/types.hpp"

namespace coss {

/// Unit of alignment. `text` is trimmed; `span_begin/span_end` locate it in
/// the owning article's body, so body.substr(begin, end-begin) == text.
struct Paragraph {
    std::string article_id;
    int index = 0;
    std::string text;
    std::size_t span_begin = 0;
    std::size_t span_end = 0;

    friend bool operator==(const Paragraph&, const Paragraph&) = default;

    ParagraphRef ref() const { return {article_id, index}; }
};

struct Article {
    std::string id;
    std::string outlet;
    std::optional<std::string> url;
    std::string title;
    Timestamp published_at = 0;
    std::string body;
    std::vector<Paragraph> paragraphs;
    std::optional<Polarity> outlet_polarity;

    friend bool operator==(const Article&, const Article&) = default;
};

/// A set of event-related articles, sorted by (published_at, id).
struct EventCollection {
    std::vector<Article> articles;
    std::map<std::string, std::string> meta;  // event name, query, window; not serialized

    friend bool operator==(const EventCollection&, const EventCollection&) = default;

    const Article* find_article(const std::string& id) const;
    std::size_t paragraph_count() const;
};

/// A paragraph-sized block of text located within a larger body.
struct TextBlock {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const TextBlock&, const TextBlock&) = default;
};

/// Splits a body on runs of blank lines (lines containing only whitespace).
/// Block text is trimmed at the edges; spans index into the original body.
/// Every non-whitespace character of the body lands in exactly one block.
std::vector<TextBlock> segment_paragraphs(std::string_view body);

struct ParseIssue {
    std::size_t line = 0;  // 1-based line number in the JSONL input
    std::string message;
};

struct ParseResult {
    EventCollection collection;
    std::vector<ParseIssue> issues;  // one per skipped line
};

/// Reads a UTF-8 JSONL corpus, one article per line. Required keys: id,
/// outlet, title, published_at, and body or paragraphs. Bad lines are skipped
/// and reported in `issues`; with strict=true the first bad line throws
/// InputError instead. The result is sorted by (published_at, id).
ParseResult parse_corpus(std::istream& in, bool strict = false);
ParseResult parse_corpus(const std::string& text, bool strict = false);
ParseResult parse_corpus_file(const std::string& path, bool strict = false);

/// Canonical JSONL form: articles in sorted order, fixed key order, explicit
/// paragraph lists, canonical UTC timestamps. parse(serialize(c)) == c for
/// any c already in canonical form.
std::string serialize_corpus(const EventCollection& collection);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::size_t n_articles = 0;
    std::size_t n_paragraphs = 0;
    Timestamp time_start = 0;
    Timestamp time_end = 0;

    bool ok() const { return errors.empty(); }
};

/// Checks collection invariants. Returns findings, never throws.
ValidationReport validate(const EventCollection& collection);

}  // namespace coss
