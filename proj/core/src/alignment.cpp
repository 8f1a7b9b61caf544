#include "coss/alignment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "coss/errors.hpp"

namespace coss {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double combine(const ScorerConfig& cfg, double lex, double tfidf, double sem,
               ScoreComponents* out) {
    if (out != nullptr) {
        out->lexical = lex;
        out->tfidf = tfidf;
        out->semantic = sem;
    }
    return clamp01(cfg.w_lex * lex + cfg.w_tfidf * tfidf + cfg.w_sem * sem);
}

double embedding_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0.0;
    for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return clamp01(dot);  // backend contract: unit vectors
}

}  // namespace

void validate_scorer_config(const ScorerConfig& cfg, bool has_semantic_backend) {
    if (cfg.shingle_n < 1) throw ConfigError("scorer: shingle_n must be >= 1");
    for (const auto& [name, w] : {std::pair<const char*, double>{"w_lex", cfg.w_lex},
                                  {"w_tfidf", cfg.w_tfidf},
                                  {"w_sem", cfg.w_sem}}) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ConfigError(std::string("scorer: ") + name + " must lie in [0,1]");
        }
    }
    if (std::abs(cfg.w_lex + cfg.w_tfidf + cfg.w_sem - 1.0) > 1e-9) {
        throw ConfigError("scorer: weights must sum to 1");
    }
    if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) throw ConfigError("scorer: tau must lie in (0,1]");
    if (cfg.w_sem > 0.0 && !has_semantic_backend) {
        throw ConfigError("scorer: w_sem > 0 but no semantic backend supplied");
    }
}

PairScorer::PairScorer(const EventCollection& collection, const ScorerConfig& cfg,
                       const SemanticBackend* semantic)
    : cfg_(cfg) {
    validate_scorer_config(cfg, semantic != nullptr);
    const StopwordSet* stop = cfg_.stopwords ? &*cfg_.stopwords : nullptr;

    std::vector<TokenList> docs;
    for (const auto& a : collection.articles) {
        for (const auto& p : a.paragraphs) {
            docs.push_back(tokenize(p.text, stop));
        }
    }
    idf_ = IdfTable::build(docs);

    size_t g = 0;
    size_t embed_dim = 0;
    for (const auto& a : collection.articles) {
        for (const auto& p : a.paragraphs) {
            ParagraphData data;
            data.tokens = std::move(docs[g]);
            data.unigrams = word_shingles(data.tokens, 1);
            data.ngrams = word_shingles(data.tokens, cfg_.shingle_n);
            data.tfidf = tfidf_vector(data.tokens, idf_);
            if (semantic != nullptr && cfg_.w_sem > 0.0) {
                data.embedding = semantic->embed(p.text);
                if (embed_dim == 0) {
                    embed_dim = data.embedding.size();
                } else if (data.embedding.size() != embed_dim) {
                    throw ConfigError("semantic backend returned vectors of differing length");
                }
            }
            ref_index_.emplace_back(p.ref(), paragraphs_.size());
            paragraphs_.push_back(std::move(data));
            ++g;
        }
    }
    std::sort(ref_index_.begin(), ref_index_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

size_t PairScorer::index_of(const ParagraphRef& ref) const {
    const auto it = std::lower_bound(
        ref_index_.begin(), ref_index_.end(), ref,
        [](const auto& entry, const ParagraphRef& r) { return entry.first < r; });
    if (it == ref_index_.end() || it->first != ref) {
        throw InputError("unknown paragraph " + to_string(ref));
    }
    return it->second;
}

double PairScorer::score(const ParagraphRef& a, const ParagraphRef& b,
                         ScoreComponents* out) const {
    const ParagraphData& pa = paragraphs_[index_of(a)];
    const ParagraphData& pb = paragraphs_[index_of(b)];
    const bool fallback = pa.tokens.size() < static_cast<size_t>(cfg_.shingle_n) ||
                          pb.tokens.size() < static_cast<size_t>(cfg_.shingle_n);
    const double lex = fallback ? set_jaccard(pa.unigrams, pb.unigrams)
                                : set_jaccard(pa.ngrams, pb.ngrams);
    const double cos = cosine(pa.tfidf, pb.tfidf);
    const double sem = cfg_.w_sem > 0.0 ? embedding_cosine(pa.embedding, pb.embedding) : 0.0;
    return combine(cfg_, lex, cos, sem, out);
}

double hybrid_score(std::string_view text_a, std::string_view text_b, const ScorerConfig& cfg,
                    const IdfTable& idf, const SemanticBackend* semantic, ScoreComponents* out) {
    validate_scorer_config(cfg, semantic != nullptr);
    const StopwordSet* stop = cfg.stopwords ? &*cfg.stopwords : nullptr;
    const TokenList ta = tokenize(text_a, stop);
    const TokenList tb = tokenize(text_b, stop);
    const double lex = shingle_jaccard(ta, tb, cfg.shingle_n);
    const double cos = tfidf_cosine(ta, tb, idf);
    double sem = 0.0;
    if (cfg.w_sem > 0.0) {
        sem = embedding_cosine(semantic->embed(text_a), semantic->embed(text_b));
    }
    return combine(cfg, lex, cos, sem, out);
}

std::vector<ReuseEdge> align_collection(const EventCollection& collection,
                                        const ScorerConfig& cfg, const SemanticBackend* semantic,
                                        unsigned threads) {
    const PairScorer scorer(collection, cfg, semantic);

    // Flattened paragraph list in canonical order; article_pos encodes the
    // strict (published_at, id) precedence between articles.
    struct Slot {
        ParagraphRef ref;
        size_t article_pos;
    };
    std::vector<Slot> slots;
    for (size_t ai = 0; ai < collection.articles.size(); ++ai) {
        for (const auto& p : collection.articles[ai].paragraphs) {
            slots.push_back({p.ref(), ai});
        }
    }

    const size_t n = slots.size();
    std::vector<std::vector<ReuseEdge>> per_target(n);

    auto align_target = [&](size_t t) {
        auto& edges = per_target[t];
        double best = -1.0;
        size_t best_pos = 0;
        for (size_t s = 0; s < n && slots[s].article_pos < slots[t].article_pos; ++s) {
            ScoreComponents comps;
            const double sc = scorer.score(slots[s].ref, slots[t].ref, &comps);
            if (sc < cfg.tau) continue;
            edges.push_back({slots[s].ref, slots[t].ref, sc, comps, false});
            // Sources arrive in (timestamp, id, index) order, so the first
            // strict maximum is the tie-broken primary.
            if (sc > best) {
                best = sc;
                best_pos = edges.size() - 1;
            }
        }
        if (!edges.empty()) edges[best_pos].is_primary = true;
    };

    const unsigned workers = std::max(1u, threads);
    if (workers == 1 || n < 2) {
        for (size_t t = 0; t < n; ++t) align_target(t);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t t = next.fetch_add(1); t < n; t = next.fetch_add(1)) align_target(t);
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<ReuseEdge> edges;
    for (auto& group : per_target) {
        edges.insert(edges.end(), group.begin(), group.end());
    }
    return edges;
}

Classification classify_paragraph(const ParagraphRef& paragraph,
                                  std::span<const ReuseEdge> edges) {
    Classification c;
    for (const auto& e : edges) {
        if (e.target != paragraph) continue;
        c.reused = true;
        if (e.is_primary) c.primary_source = e.source;
    }
    return c;
}

}  // namespace coss
