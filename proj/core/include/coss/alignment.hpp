#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coss/corpus.hpp"
#include "coss/similarity.hpp"
#include "coss/tokenize.hpp"
#include "coss/types.hpp"

namespace coss {

/// Maps text to a fixed-length unit vector. Implementations plug in sentence
/// embeddings or any other paraphrase model; the core ships none.
class SemanticBackend {
public:
    virtual ~SemanticBackend() = default;
    virtual std::vector<double> embed(std::string_view text) const = 0;
};

/// Weights and thresholds of the paragraph-pair scorer. Weights must sum to 1
/// (within 1e-9); tau is the minimum score an edge needs to be kept.
struct ScorerConfig {
    int shingle_n = 3;
    double w_lex = 0.4;
    double w_tfidf = 0.6;
    double w_sem = 0.0;
    double tau = 0.5;
    std::optional<StopwordSet> stopwords;

    friend bool operator==(const ScorerConfig&, const ScorerConfig&) = default;
};

/// Throws ConfigError on invalid weights/threshold, or when w_sem > 0 and no
/// backend is supplied. Called once at pipeline start, not per pair.
void validate_scorer_config(const ScorerConfig& cfg, bool has_semantic_backend);

struct ScoreComponents {
    double lexical = 0.0;
    double tfidf = 0.0;
    double semantic = 0.0;

    friend bool operator==(const ScoreComponents&, const ScoreComponents&) = default;
};

/// Directed reuse relation from an earlier paragraph to a later one.
/// Invariant: the source article precedes the target article in
/// (published_at, id) order, and score >= tau.
struct ReuseEdge {
    ParagraphRef source;
    ParagraphRef target;
    double score = 0.0;
    ScoreComponents components;
    bool is_primary = false;

    friend bool operator==(const ReuseEdge&, const ReuseEdge&) = default;
};

/// Pairwise paragraph scorer over one collection. Tokenization, shingle sets,
/// TF-IDF vectors (IDF over all paragraphs, document = paragraph) and
/// semantic embeddings are precomputed once; score() is then pure and cheap.
class PairScorer {
public:
    PairScorer(const EventCollection& collection, const ScorerConfig& cfg,
               const SemanticBackend* semantic = nullptr);

    /// Hybrid score w_lex*jaccard + w_tfidf*cosine + w_sem*sem_cosine,
    /// clamped to [0,1]. Symmetric in its arguments.
    double score(const ParagraphRef& a, const ParagraphRef& b, ScoreComponents* out = nullptr) const;

    const IdfTable& idf() const { return idf_; }
    const ScorerConfig& config() const { return cfg_; }

private:
    struct ParagraphData {
        TokenList tokens;
        std::vector<std::string> unigrams;  // sorted unique
        std::vector<std::string> ngrams;    // sorted unique
        SparseVector tfidf;
        std::vector<double> embedding;
    };

    size_t index_of(const ParagraphRef& ref) const;

    ScorerConfig cfg_;
    IdfTable idf_;
    std::vector<ParagraphData> paragraphs_;
    std::vector<std::pair<ParagraphRef, size_t>> ref_index_;  // sorted by ref
};

/// One-off hybrid score for a pair of texts under an explicit IDF table.
/// Produces exactly the numbers PairScorer computes for the same inputs.
double hybrid_score(std::string_view text_a, std::string_view text_b, const ScorerConfig& cfg,
                    const IdfTable& idf, const SemanticBackend* semantic = nullptr,
                    ScoreComponents* out = nullptr);

/// Scores every ordered paragraph pair whose source article strictly precedes
/// the target article in (published_at, id) order, keeps pairs with
/// score >= tau, and marks one primary edge per target paragraph (highest
/// score; ties: earliest source timestamp, then lowest source article id,
/// then lowest paragraph index). Edges come back in canonical order: target
/// paragraph first, then source paragraph, both in collection order.
/// `threads` caps worker threads; the result is identical for any value.
std::vector<ReuseEdge> align_collection(const EventCollection& collection,
                                        const ScorerConfig& cfg,
                                        const SemanticBackend* semantic = nullptr,
                                        unsigned threads = 1);

/// Original-vs-reused verdict for one paragraph given the aligned edges.
struct Classification {
    bool reused = false;
    std::optional<ParagraphRef> primary_source;
};

Classification classify_paragraph(const ParagraphRef& paragraph,
                                  std::span<const ReuseEdge> edges);

}  // namespace coss
