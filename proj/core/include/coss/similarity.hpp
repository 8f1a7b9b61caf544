#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coss {

using TokenList = std::vector<std::string>;

/// Sorted, deduplicated word n-grams (tokens joined with an unprintable
/// separator). With fewer than n tokens the result is empty.
std::vector<std::string> word_shingles(std::span<const std::string> tokens, int n);

/// Jaccard similarity of two sorted, deduplicated string sets. Two empty sets
/// count as identical (1.0).
double set_jaccard(std::span<const std::string> sorted_a, std::span<const std::string> sorted_b);

/// Jaccard similarity of the n-gram sets of two token lists. If either list
/// has fewer than n tokens, both sides fall back to unigram sets. Two empty
/// lists count as identical (1.0).
double shingle_jaccard(std::span<const std::string> a, std::span<const std::string> b, int n);

/// Smoothed inverse document frequency over a corpus of token lists:
/// idf(t) = ln(1 + N/df(t)). Terms never seen get weight 0.
class IdfTable {
public:
    IdfTable() = default;

    /// `docs` is one token list per document.
    static IdfTable build(const std::vector<TokenList>& docs);

    double idf(const std::string& term) const;
    std::size_t doc_count() const { return n_docs_; }

private:
    std::unordered_map<std::string, double> idf_;
    std::size_t n_docs_ = 0;
};

/// Sparse TF-IDF vector, sorted by term. Fixed iteration order keeps every
/// dot product and norm summation deterministic.
using SparseVector = std::vector<std::pair<std::string, double>>;

/// Builds tf(t)*idf(t) entries for all terms with nonzero weight, term-sorted.
SparseVector tfidf_vector(std::span<const std::string> tokens, const IdfTable& idf);

/// Cosine of two term-sorted sparse vectors; 0 when either is zero. Result
/// clamped to [0, 1].
double cosine(const SparseVector& a, const SparseVector& b);

/// Cosine of the TF-IDF vectors of two token lists under the given IDF table.
double tfidf_cosine(std::span<const std::string> a, std::span<const std::string> b,
                    const IdfTable& idf);

}  // namespace coss
