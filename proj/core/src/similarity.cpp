#include "coss/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace coss {

namespace {

constexpr char kShingleSep = '\x1f';

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

double set_jaccard(std::span<const std::string> sorted_a, std::span<const std::string> sorted_b) {
    if (sorted_a.empty() && sorted_b.empty()) return 1.0;
    size_t i = 0, j = 0, inter = 0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        const int c = sorted_a[i].compare(sorted_b[j]);
        if (c == 0) {
            ++inter;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    const size_t uni = sorted_a.size() + sorted_b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::string> word_shingles(std::span<const std::string> tokens, int n) {
    std::vector<std::string> shingles;
    if (n < 1 || tokens.size() < static_cast<size_t>(n)) return shingles;
    shingles.reserve(tokens.size() - n + 1);
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string s = tokens[i];
        for (int k = 1; k < n; ++k) {
            s += kShingleSep;
            s += tokens[i + k];
        }
        shingles.push_back(std::move(s));
    }
    return sorted_unique(std::move(shingles));
}

double shingle_jaccard(std::span<const std::string> a, std::span<const std::string> b, int n) {
    const bool fallback =
        a.size() < static_cast<size_t>(n) || b.size() < static_cast<size_t>(n);
    const int gram = fallback ? 1 : n;
    const auto sa = word_shingles(a, gram);
    const auto sb = word_shingles(b, gram);
    return set_jaccard(sa, sb);
}

IdfTable IdfTable::build(const std::vector<TokenList>& docs) {
    IdfTable table;
    table.n_docs_ = docs.size();
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::vector<std::string> uniq(doc.begin(), doc.end());
        uniq = sorted_unique(std::move(uniq));
        for (auto& term : uniq) ++df[std::move(term)];
    }
    table.idf_.reserve(df.size());
    const double n = static_cast<double>(table.n_docs_);
    for (const auto& [term, count] : df) {
        table.idf_.emplace(term, std::log(1.0 + n / static_cast<double>(count)));
    }
    return table;
}

double IdfTable::idf(const std::string& term) const {
    const auto it = idf_.find(term);
    return it == idf_.end() ? 0.0 : it->second;
}

SparseVector tfidf_vector(std::span<const std::string> tokens, const IdfTable& idf) {
    std::map<std::string, int> counts;
    for (const auto& t : tokens) ++counts[t];
    SparseVector vec;
    vec.reserve(counts.size());
    for (const auto& [term, count] : counts) {
        const double w = static_cast<double>(count) * idf.idf(term);
        if (w != 0.0) vec.emplace_back(term, w);
    }
    return vec;  // std::map iteration is term-sorted already
}

double cosine(const SparseVector& a, const SparseVector& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = a[i].first.compare(b[j].first);
        if (c == 0) {
            dot += a[i].second * b[j].second;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    for (const auto& [term, w] : a) na += w * w;
    for (const auto& [term, w] : b) nb += w * w;
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double v = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(v, 0.0, 1.0);
}

double tfidf_cosine(std::span<const std::string> a, std::span<const std::string> b,
                    const IdfTable& idf) {
    return cosine(tfidf_vector(a, idf), tfidf_vector(b, idf));
}

}  // namespace coss
