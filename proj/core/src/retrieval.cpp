#include "coss/retrieval.hpp"

#include <algorithm>

#include "coss/errors.hpp"
#include "coss/similarity.hpp"
#include "coss/tokenize.hpp"
#include "json_util.hpp"

namespace coss {

namespace {

TokenList article_tokens(const Article& a) {
    return tokenize(a.title + "\n" + a.body);
}

std::vector<RankedCandidate> rank(const EventCollection& collection, const TokenList& probe,
                                  const TimeWindow& window, int k,
                                  const std::string& exclude_id) {
    std::vector<TokenList> docs;
    docs.reserve(collection.articles.size());
    for (const auto& a : collection.articles) docs.push_back(article_tokens(a));
    const IdfTable idf = IdfTable::build(docs);
    const SparseVector probe_vec = tfidf_vector(probe, idf);

    std::vector<std::pair<RankedCandidate, Timestamp>> scored;
    for (size_t i = 0; i < collection.articles.size(); ++i) {
        const Article& a = collection.articles[i];
        if (a.id == exclude_id) continue;
        if (!window.contains(a.published_at)) continue;
        const double score = cosine(probe_vec, tfidf_vector(docs[i], idf));
        if (score <= 0.0) continue;
        scored.push_back({{a.id, score}, a.published_at});
    }
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
        if (x.first.score != y.first.score) return x.first.score > y.first.score;
        return std::tie(x.second, x.first.article_id) < std::tie(y.second, y.first.article_id);
    });
    if (k >= 0 && scored.size() > static_cast<size_t>(k)) scored.resize(k);

    std::vector<RankedCandidate> out;
    out.reserve(scored.size());
    for (auto& [cand, ts] : scored) out.push_back(std::move(cand));
    return out;
}

}  // namespace

std::vector<RankedCandidate> retrieve_by_query(const EventCollection& collection,
                                               const std::vector<std::string>& query,
                                               const TimeWindow& window, int k) {
    TokenList terms;
    for (const auto& q : query) {
        for (auto& t : tokenize(q)) terms.push_back(std::move(t));
    }
    if (terms.empty()) throw InputError("retrieval query is empty after tokenization");
    return rank(collection, terms, window, k, /*exclude_id=*/"");
}

std::vector<RankedCandidate> retrieve_by_seed(const EventCollection& collection,
                                              const Article& seed, const TimeWindow& window,
                                              int k) {
    if (seed.paragraphs.empty()) {
        throw InputError("seed article \"" + seed.id + "\" has no paragraphs");
    }
    return rank(collection, article_tokens(seed), window, k, seed.id);
}

std::string serialize_candidates(const std::vector<RankedCandidate>& candidates) {
    auto arr = detail::ojson::array();
    for (const auto& c : candidates) {
        detail::ojson j;
        j["article_id"] = c.article_id;
        j["score"] = detail::round9(c.score);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace coss
