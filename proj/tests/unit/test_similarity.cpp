#include <doctest.h>

#include <cmath>
#include <vector>

#include "coss/similarity.hpp"

using namespace coss;

namespace {
const std::vector<std::string> kAbcd = {"a", "b", "c", "d"};
const std::vector<std::string> kBcde = {"b", "c", "d", "e"};
}  // namespace

TEST_CASE("word_shingles builds sorted unique n-grams") {
    CHECK(word_shingles(kAbcd, 3).size() == 2);  // abc, bcd
    CHECK(word_shingles(kAbcd, 1) == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(word_shingles(std::vector<std::string>{"a", "a", "a", "a"}, 3).size() == 1);
    CHECK(word_shingles(std::vector<std::string>{"a", "b"}, 3).empty());
    CHECK(word_shingles(std::vector<std::string>{}, 2).empty());
}

TEST_CASE("set_jaccard on sorted sets") {
    const std::vector<std::string> x = {"x"};
    const std::vector<std::string> y = {"y"};
    const std::vector<std::string> xy = {"x", "y"};
    const std::vector<std::string> yz = {"y", "z"};
    const std::vector<std::string> none;
    CHECK(set_jaccard(x, x) == 1.0);
    CHECK(set_jaccard(x, y) == 0.0);
    CHECK(set_jaccard(xy, yz) == 1.0 / 3.0);
    CHECK(set_jaccard(none, none) == 1.0);  // two empty sets count as identical
    CHECK(set_jaccard(none, x) == 0.0);
}

TEST_CASE("shingle_jaccard: hand-enumerated 3-gram case equals 1/3") {
    // {abc, bcd} vs {bcd, cde}: intersection 1, union 3.
    CHECK(shingle_jaccard(kAbcd, kBcde, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("shingle_jaccard identity and disjoint cases are exact") {
    CHECK(shingle_jaccard(kAbcd, kAbcd, 3) == 1.0);
    const std::vector<std::string> other = {"p", "q", "r", "s"};
    CHECK(shingle_jaccard(kAbcd, other, 3) == 0.0);
    // Two empty token lists count as identical.
    CHECK(shingle_jaccard(std::vector<std::string>{}, std::vector<std::string>{}, 3) == 1.0);
}

TEST_CASE("shingle_jaccard falls back to unigrams when either side is short") {
    const std::vector<std::string> ab = {"a", "b"};
    // Unigram sets {a,b} vs {a,b,c,d}: 2/4.
    CHECK(shingle_jaccard(ab, kAbcd, 3) == 0.5);
    // Both sides fall back together, even the longer one.
    CHECK(shingle_jaccard(kAbcd, ab, 3) == 0.5);
}

TEST_CASE("smoothed idf over a 3-paragraph toy corpus") {
    const std::vector<TokenList> docs = {
        {"apple", "banana", "apple"}, {"banana", "cherry"}, {"cherry", "date"}};
    const IdfTable idf = IdfTable::build(docs);
    CHECK(idf.doc_count() == 3);
    CHECK(std::abs(idf.idf("apple") - std::log(4.0)) < 1e-12);   // ln(1 + 3/1)
    CHECK(std::abs(idf.idf("banana") - std::log(2.5)) < 1e-12);  // ln(1 + 3/2)
    CHECK(std::abs(idf.idf("cherry") - std::log(2.5)) < 1e-12);
    CHECK(std::abs(idf.idf("date") - std::log(4.0)) < 1e-12);
    CHECK(idf.idf("unseen") == 0.0);
}

TEST_CASE("tfidf vectors use raw term counts and drop zero-weight terms") {
    const std::vector<TokenList> docs = {
        {"apple", "banana", "apple"}, {"banana", "cherry"}, {"cherry", "date"}};
    const IdfTable idf = IdfTable::build(docs);

    const SparseVector v = tfidf_vector(docs[0], idf);
    REQUIRE(v.size() == 2);
    CHECK(v[0].first == "apple");
    CHECK(std::abs(v[0].second - 2.0 * std::log(4.0)) < 1e-12);
    CHECK(v[1].first == "banana");
    CHECK(std::abs(v[1].second - std::log(2.5)) < 1e-12);

    // A term absent from the table has weight 0 and is omitted entirely.
    CHECK(tfidf_vector(std::vector<std::string>{"zzz"}, idf).empty());
}

TEST_CASE("tfidf cosine matches hand computation within 1e-9") {
    const std::vector<TokenList> docs = {
        {"apple", "banana", "apple"}, {"banana", "cherry"}, {"cherry", "date"}};
    const IdfTable idf = IdfTable::build(docs);
    const double l4 = std::log(4.0);
    const double l25 = std::log(2.5);

    // d1 vs d2 share only "banana".
    const double expected12 =
        (l25 * l25) /
        (std::sqrt((2.0 * l4) * (2.0 * l4) + l25 * l25) * std::sqrt(2.0 * l25 * l25));
    CHECK(std::abs(tfidf_cosine(docs[0], docs[1], idf) - expected12) < 1e-9);

    // d2 vs d3 share only "cherry".
    const double expected23 =
        (l25 * l25) / (std::sqrt(2.0 * l25 * l25) * std::sqrt(l25 * l25 + l4 * l4));
    CHECK(std::abs(tfidf_cosine(docs[1], docs[2], idf) - expected23) < 1e-9);

    // No shared terms: exactly zero.
    CHECK(tfidf_cosine(docs[0], docs[2], idf) == 0.0);
    // Identity within 1e-9 of 1 (bounded above by the clamp).
    const double self = tfidf_cosine(docs[0], docs[0], idf);
    CHECK(std::abs(self - 1.0) < 1e-9);
    CHECK(self <= 1.0);
    // Zero vector on either side: zero, not NaN.
    CHECK(tfidf_cosine(std::vector<std::string>{}, docs[0], idf) == 0.0);
}

TEST_CASE("cosine is symmetric and bounded") {
    const std::vector<TokenList> docs = {
        {"apple", "banana", "apple"}, {"banana", "cherry"}, {"cherry", "date"}};
    const IdfTable idf = IdfTable::build(docs);
    for (const auto& a : docs) {
        for (const auto& b : docs) {
            const double ab = tfidf_cosine(a, b, idf);
            CHECK(ab == tfidf_cosine(b, a, idf));
            CHECK(ab >= 0.0);
            CHECK(ab <= 1.0);
        }
    }
}
