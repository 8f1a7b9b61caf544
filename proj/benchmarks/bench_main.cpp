// Microbenchmarks for the hot paths: tokenization, shingle overlap, TF-IDF
// cosine, pairwise scoring, whole-collection alignment, and HTML rendering.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "coss/alignment.hpp"
#include "coss/corpus.hpp"
#include "coss/polarity.hpp"
#include "coss/render.hpp"
#include "coss/reuse_graph.hpp"
#include "coss/similarity.hpp"
#include "coss/time.hpp"
#include "coss/tokenize.hpp"

namespace {

// Deterministic word soup with a small vocabulary so pairs overlap.
std::string make_text(std::mt19937& rng, int n_words) {
    static const std::vector<std::string> vocab = {
        "council",  "budget",   "transit",   "harbor",   "vote",    "measure",
        "subsidy",  "teachers", "contract",  "strike",   "mayor",   "audit",
        "report",   "figures",  "quarter",   "deficit",  "funding", "program",
        "shelter",  "zoning",   "hearing",   "approves", "delays",  "residents",
        "downtown", "bridge",   "repairs",   "schools",  "library", "tax",
    };
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::string out;
    for (int i = 0; i < n_words; ++i) {
        if (!out.empty()) out += ' ';
        out += vocab[pick(rng)];
    }
    return out;
}

coss::EventCollection make_collection(int n_articles, int paragraphs_each) {
    std::mt19937 rng(12345);
    std::vector<std::string> pool;  // earlier paragraphs, reworked later
    std::string jsonl;
    for (int a = 0; a < n_articles; ++a) {
        nlohmann::json j;
        j["id"] = "B" + std::to_string(100 + a);
        j["outlet"] = "Bench Outlet";
        j["title"] = make_text(rng, 6);
        j["published_at"] = coss::format_rfc3339(1614556800 + a * 3600);
        auto paragraphs = nlohmann::json::array();
        std::uniform_int_distribution<int> coin(0, 1);
        for (int p = 0; p < paragraphs_each; ++p) {
            // Half the paragraphs rework an earlier one so the aligner finds
            // real edges instead of scoring pure noise.
            std::string text;
            if (!pool.empty() && coin(rng) == 1) {
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                text = pool[pick(rng)] + " " + make_text(rng, 6);
            } else {
                text = make_text(rng, 40);
            }
            paragraphs.push_back(text);
            pool.push_back(std::move(text));
        }
        j["paragraphs"] = std::move(paragraphs);
        jsonl += j.dump() + "\n";
    }
    return coss::parse_corpus(jsonl, /*strict=*/true).collection;
}

void BM_Tokenize(benchmark::State& state) {
    std::mt19937 rng(1);
    const std::string text = make_text(rng, 200);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coss::tokenize(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize);

void BM_ShingleJaccard(benchmark::State& state) {
    std::mt19937 rng(2);
    const auto a = coss::tokenize(make_text(rng, 60));
    const auto b = coss::tokenize(make_text(rng, 60));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coss::shingle_jaccard(a, b, 3));
    }
}
BENCHMARK(BM_ShingleJaccard);

void BM_TfidfCosine(benchmark::State& state) {
    std::mt19937 rng(3);
    std::vector<coss::TokenList> docs;
    docs.reserve(100);
    for (int i = 0; i < 100; ++i) docs.push_back(coss::tokenize(make_text(rng, 40)));
    const auto idf = coss::IdfTable::build(docs);
    const auto va = coss::tfidf_vector(docs[0], idf);
    const auto vb = coss::tfidf_vector(docs[1], idf);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coss::cosine(va, vb));
    }
}
BENCHMARK(BM_TfidfCosine);

void BM_PairScore(benchmark::State& state) {
    const auto collection = make_collection(8, 6);
    const coss::ScorerConfig cfg;
    const coss::PairScorer scorer(collection, cfg);
    const coss::ParagraphRef a{collection.articles.front().id, 0};
    const coss::ParagraphRef b{collection.articles.back().id, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(scorer.score(a, b));
    }
}
BENCHMARK(BM_PairScore);

void BM_AlignCollection(benchmark::State& state) {
    const auto collection =
        make_collection(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const coss::ScorerConfig cfg;
    const auto threads = static_cast<unsigned>(state.range(2));
    std::size_t paragraphs = 0;
    for (const auto& a : collection.articles) paragraphs += a.paragraphs.size();
    for (auto _ : state) {
        benchmark::DoNotOptimize(coss::align_collection(collection, cfg, nullptr, threads));
    }
    state.counters["paragraphs"] = static_cast<double>(paragraphs);
}
BENCHMARK(BM_AlignCollection)
    ->Args({8, 6, 1})
    ->Args({8, 6, 4})
    ->Args({20, 10, 1})
    ->Args({20, 10, 4})
    ->Unit(benchmark::kMillisecond);

void BM_RenderHtml(benchmark::State& state) {
    auto collection = make_collection(10, 8);
    coss::assign_outlet_polarities(collection, coss::OutletMap{});
    const auto assignments = coss::relabel_collection(collection, coss::PolarityLexicon{});
    auto edges = coss::align_collection(collection, coss::ScorerConfig{});
    const auto graph =
        coss::build_graph(collection, std::move(edges), assignments, coss::ConfigSnapshot{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(coss::render_html(graph));
    }
    state.SetLabel(std::to_string(graph.edges.size()) + " edges");
}
BENCHMARK(BM_RenderHtml);

}  // namespace

BENCHMARK_MAIN();
