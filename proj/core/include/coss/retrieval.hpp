#pragma once

#include <string>
#include <vector>

#include "coss/corpus.hpp"
#include "coss/time.hpp"

namespace coss {

struct RankedCandidate {
    std::string article_id;
    double score = 0.0;

    friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

/// Ranks in-window articles by TF-IDF cosine between the query terms and the
/// article text (title + body). The IDF corpus is the whole collection, so a
/// window never changes an article's score, only its eligibility. Zero-score
/// articles are omitted; at most k results, sorted by
/// (score desc, published_at asc, id asc).
/// Throws InputError when the query is empty after tokenization.
std::vector<RankedCandidate> retrieve_by_query(const EventCollection& collection,
                                               const std::vector<std::string>& query,
                                               const TimeWindow& window, int k = 50);

/// Same ranking contract, scoring each in-window article against the seed's
/// full text. The seed itself (matched by id) is excluded; an external seed is
/// allowed. Throws InputError when the seed has no paragraphs.
std::vector<RankedCandidate> retrieve_by_seed(const EventCollection& collection,
                                              const Article& seed, const TimeWindow& window,
                                              int k = 50);

/// JSON array of {article_id, score} in ranking order, canonical floats.
std::string serialize_candidates(const std::vector<RankedCandidate>& candidates);

}  // namespace coss
