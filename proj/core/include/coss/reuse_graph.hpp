#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coss/alignment.hpp"
#include "coss/corpus.hpp"
#include "coss/polarity.hpp"
#include "coss/types.hpp"

namespace coss {

struct ArticleNode {
    std::string id;
    std::string outlet;
    Timestamp published_at = 0;
    Polarity outlet_polarity = Polarity::Center;
    Polarity content_polarity = Polarity::Center;
    int n_paragraphs = 0;

    friend bool operator==(const ArticleNode&, const ArticleNode&) = default;
};

struct ParagraphNode {
    ParagraphRef ref;
    std::string text_hash;  // paragraph text stays in the corpus file
    std::size_t span_begin = 0;
    std::size_t span_end = 0;
    Polarity content_polarity = Polarity::Center;
    bool reused = false;

    friend bool operator==(const ParagraphNode&, const ParagraphNode&) = default;
};

/// Everything needed to reproduce a graph from the same corpus.
struct ConfigSnapshot {
    ScorerConfig scorer;
    std::string lexicon_digest;

    friend bool operator==(const ConfigSnapshot&, const ConfigSnapshot&) = default;
};

/// Directed graph of text reuse: articles and paragraphs in canonical
/// (published_at, id) order, plus scored edges that always point forward in
/// time. Immutable once built; queries are safe from any thread.
struct ReuseGraph {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    ConfigSnapshot config;
    std::string corpus_digest;
    std::vector<ArticleNode> articles;
    std::vector<ParagraphNode> paragraphs;
    std::vector<ReuseEdge> edges;

    const ArticleNode* find_article(const std::string& id) const;
    const ParagraphNode* find_paragraph(const ParagraphRef& ref) const;
    std::size_t article_pos(const std::string& id) const;  // throws InputError

    /// Recomputes the lookup tables after the vectors change.
    void rebuild_index();

    friend bool operator==(const ReuseGraph& a, const ReuseGraph& b) {
        return a.schema_version == b.schema_version && a.config == b.config &&
               a.corpus_digest == b.corpus_digest && a.articles == b.articles &&
               a.paragraphs == b.paragraphs && a.edges == b.edges;
    }

private:
    std::unordered_map<std::string, std::size_t> article_index_;
    std::map<ParagraphRef, std::size_t> paragraph_index_;
};

/// Assembles and validates the graph from upstream results. Throws
/// IntegrityError when edges reference unknown paragraphs, run backward in
/// time, or polarity assignments do not cover the collection.
ReuseGraph build_graph(const EventCollection& collection, std::vector<ReuseEdge> edges,
                       const PolarityAssignments& assignments, const ConfigSnapshot& snapshot);

/// Checks every structural invariant; throws IntegrityError on violation.
void validate_graph(const ReuseGraph& graph);

/// Canonical JSON: fixed key order, floats canonicalized to 9 significant
/// digits, timestamps in UTC. Byte-deterministic for equal graphs. The first
/// pass may shave edge-score precision to the 9-digit grid; after that the
/// form is a fixpoint: serialize(deserialize(s)) == s for any canonical s.
std::string serialize_graph(const ReuseGraph& graph);

/// Parses and validates. Throws IntegrityError on schema mismatch or any
/// invariant violation, InputError on malformed JSON.
ReuseGraph deserialize_graph(const std::string& json_text);

/// Incoming edges of a paragraph, sorted by (score desc, source order).
/// Throws InputError for unknown refs.
std::vector<ReuseEdge> sources_of(const ReuseGraph& graph, const ParagraphRef& ref);

/// Outgoing edges of a paragraph, sorted by (score desc, target order).
std::vector<ReuseEdge> reuses_of(const ReuseGraph& graph, const ParagraphRef& ref);

}  // namespace coss
