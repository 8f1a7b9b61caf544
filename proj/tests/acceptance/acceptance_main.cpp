// Acceptance gate: one check per release criterion, one PASS/FAIL line each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "coss/alignment.hpp"
#include "coss/corpus.hpp"
#include "coss/errors.hpp"
#include "coss/patterns.hpp"
#include "coss/pipeline.hpp"
#include "coss/polarity.hpp"
#include "coss/render.hpp"
#include "coss/reuse_graph.hpp"
#include "coss/similarity.hpp"
#include "coss/tokenize.hpp"
#include "support/fileio.hpp"
#include "support/oracles.hpp"
#include "support/random_corpus.hpp"
#include "support/recount.hpp"
#include "support/temp_dir.hpp"

using namespace coss;
using namespace coss::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& detail) {
    if (!cond) throw Failure(detail);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: the bundled scenario reproduces byte-for-byte ------------

void scenario_reproduction() {
    const auto start = Clock::now();

    PipelineConfig config = load_pipeline_config(data_file("scenario_config.json"));
    TempDir dir_a("accept-scenario-a");
    config.out_dir = dir_a.path().string();
    const PipelineResult run_a = run_pipeline(config);

    require(slurp(run_a.graph_path) == slurp(data_file("scenario_graph.json")),
            "graph file differs from the frozen scenario graph");

    const ReuseGraph g = deserialize_graph(slurp(run_a.graph_path));

    // The late paraphrase is recognized: its primary source is the second
    // paragraph of the first article, and the wording shift flips polarity.
    const ReuseEdge* late = nullptr;
    for (const auto& e : g.edges)
        if (e.target == ParagraphRef{"A6", 3}) late = &e;
    require(late != nullptr, "no edge into A6:3");
    require(late->is_primary && late->source == ParagraphRef{"A1", 1},
            "A6:3 should be reused from A1:1 via a primary edge");
    require(g.find_paragraph({"A1", 1})->content_polarity == Polarity::Center,
            "A1:1 should read as center");
    require(g.find_paragraph({"A6", 3})->content_polarity == Polarity::Left,
            "A6:3 should read as left after the rewrite");

    const std::string html = slurp(run_a.html_path);
    require(html.find("polarity C&#8594;L") != std::string::npos,
            "timeline should label the polarity change on the A1:1 -> A6:3 edge");
    require(html.find("marker-end") != std::string::npos,
            "primary edges should carry arrowheads");
    require(html.find("stroke-dasharray") != std::string::npos,
            "the non-primary edge should render dashed");

    // A second run into a fresh directory produces identical bytes.
    TempDir dir_b("accept-scenario-b");
    config.out_dir = dir_b.path().string();
    const PipelineResult run_b = run_pipeline(config);
    require(slurp(run_b.graph_path) == slurp(run_a.graph_path), "graph bytes changed on rerun");
    require(slurp(run_b.patterns_path) == slurp(run_a.patterns_path),
            "pattern bytes changed on rerun");
    require(slurp(run_b.html_path) == slurp(run_a.html_path), "HTML bytes changed on rerun");

    const double elapsed = seconds_since(start);
    require(elapsed < 5.0, "scenario run took " + std::to_string(elapsed) + "s, budget is 5s");
}

// --- criterion 2: batch aligner agrees with a brute-force reference --------

void alignment_matches_reference() {
    const auto start = Clock::now();
    const ScorerConfig cfg;  // defaults

    for (unsigned seed = 1; seed <= 100; ++seed) {
        std::mt19937 rng(seed);
        const EventCollection collection = random_collection(rng);
        const unsigned threads = (seed % 2 == 0) ? 3u : 1u;
        const std::vector<ReuseEdge> got = align_collection(collection, cfg, nullptr, threads);
        const std::vector<ReuseEdge> want = reference_align(collection, cfg);
        if (got != want) {
            throw Failure("seed " + std::to_string(seed) + ": aligner disagrees\n  batch:\n" +
                          describe_edges(got) + "  reference:\n" + describe_edges(want));
        }
    }

    const double elapsed = seconds_since(start);
    require(elapsed < 60.0,
            "100 comparisons took " + std::to_string(elapsed) + "s, budget is 60s");
}

// --- criterion 3: scorer reproduces hand-computed values -------------------

void scorer_hand_values() {
    // Trigram overlap computed by hand: 2 shared shingles of 4 distinct.
    {
        const auto a = word_shingles(tokenize("the quick brown fox jumps"), 3);
        const auto b = word_shingles(tokenize("the quick brown fox runs"), 3);
        const double j = set_jaccard(a, b);
        require(std::fabs(j - 0.5) <= 1e-9, "trigram overlap should be 2/4");
    }
    // Identical nonempty input scores exactly 1, disjoint input exactly 0.
    {
        const auto a = word_shingles(tokenize("alpha beta gamma delta"), 3);
        const auto b = word_shingles(tokenize("epsilon zeta eta theta"), 3);
        require(set_jaccard(a, a) == 1.0, "self-overlap must be exactly 1");
        require(set_jaccard(a, b) == 0.0, "disjoint overlap must be exactly 0");
    }
    // TF-IDF weights and cosine against a four-document toy collection.
    {
        const std::vector<TokenList> docs = {
            tokenize("transit budget vote"),
            tokenize("transit strike looms"),
            tokenize("budget hearing today"),
            tokenize("weather stays mild"),
        };
        const IdfTable idf = IdfTable::build(docs);
        // "transit" appears in 2 of 4 documents, "weather" in 1 of 4.
        require(std::fabs(idf.idf("transit") - std::log(1.0 + 4.0 / 2.0)) <= 1e-9,
                "idf(transit) should be ln(3)");
        require(std::fabs(idf.idf("weather") - std::log(1.0 + 4.0 / 1.0)) <= 1e-9,
                "idf(weather) should be ln(5)");
        require(idf.idf("unseen") == 0.0, "unseen terms carry zero weight");

        const SparseVector va = tfidf_vector(tokenize("transit budget vote"), idf);
        const SparseVector vb = tfidf_vector(tokenize("transit budget hearing"), idf);
        // transit and budget sit in two documents (weight ln 3); vote and
        // hearing in one each (weight ln 5). All term frequencies are 1.
        const double w2 = std::log(1.0 + 4.0 / 2.0);
        const double w1 = std::log(1.0 + 4.0 / 1.0);
        const double num = 2.0 * w2 * w2;
        const double norm = std::sqrt(2.0 * w2 * w2 + w1 * w1);
        require(std::fabs(cosine(va, vb) - num / (norm * norm)) <= 1e-9,
                "cosine differs from the hand-computed toy value");
        require(std::fabs(cosine(va, va) - 1.0) <= 1e-9, "self-cosine should be 1 within 1e-9");
    }
    // The hybrid score is the clamped weighted sum of its own components.
    {
        const std::string ta = "council approves the harbor transit subsidy package";
        const std::string tb = "council approves the harbor transit subsidy deal";
        const IdfTable idf = IdfTable::build({tokenize(ta), tokenize(tb)});
        const ScorerConfig cfg;
        ScoreComponents c;
        const double s = hybrid_score(ta, tb, cfg, idf, nullptr, &c);
        const double recomposed =
            std::clamp(cfg.w_lex * c.lexical + cfg.w_tfidf * c.tfidf + cfg.w_sem * c.semantic,
                       0.0, 1.0);
        require(s == recomposed, "score must equal the weighted sum of its components");
        const double identity = hybrid_score(ta, ta, cfg, idf);
        require(std::fabs(identity - 1.0) <= 1e-9, "identical text should score 1 within 1e-9");
    }
}

// --- criterion 4: graphs are temporal DAGs and loaders reject violations ---

void temporal_order_enforcement() {
    for (unsigned seed = 200; seed < 230; ++seed) {
        std::mt19937 rng(seed);
        const ReuseGraph g = random_graph(rng);
        require(is_temporal_dag(g),
                "seed " + std::to_string(seed) + ": built graph violates temporal order");
    }

    const ReuseGraph golden = deserialize_graph(slurp(data_file("scenario_graph.json")));
    require(is_temporal_dag(golden), "frozen scenario graph violates temporal order");

    // Structure level: reversing any edge must fail validation.
    for (std::size_t i = 0; i < golden.edges.size(); ++i) {
        ReuseGraph bad = golden;
        std::swap(bad.edges[i].source, bad.edges[i].target);
        bool rejected = false;
        try {
            validate_graph(bad);
        } catch (const IntegrityError&) {
            rejected = true;
        }
        require(rejected, "validate accepted reversed edge " + std::to_string(i));
    }

    // File level: the loader must reject every corrupted variant.
    const std::string text = slurp(data_file("scenario_graph.json"));
    const auto base = nlohmann::ordered_json::parse(text);
    const std::size_t n_edges = base["edges"].size();
    std::size_t attempts = 0;
    std::size_t rejections = 0;
    auto expect_rejection = [&](const nlohmann::ordered_json& doc) {
        ++attempts;
        try {
            deserialize_graph(doc.dump(2) + "\n");
        } catch (const IntegrityError&) {
            ++rejections;
        }
    };
    for (std::size_t i = 0; i < n_edges; ++i) {
        auto doc = base;
        std::swap(doc["edges"][i]["source"], doc["edges"][i]["target"]);
        expect_rejection(doc);
    }
    for (std::size_t i = 0; i < n_edges; ++i) {
        auto doc = base;
        const std::string src_id = doc["edges"][i]["source"]["article_id"].get<std::string>();
        for (auto& a : doc["articles"])
            if (a["id"] == src_id) a["published_at"] = "2031-01-01T00:00:00Z";
        expect_rejection(doc);
    }
    require(attempts == 2 * n_edges && rejections == attempts,
            "loader rejected " + std::to_string(rejections) + " of " +
                std::to_string(attempts) + " corrupted graphs");
}

// --- criterion 5: pattern statistics survive an independent recount --------

void pattern_recount() {
    RandomCorpusOptions opts;
    opts.max_articles = 10;
    opts.max_paragraphs_per_article = 12;
    opts.max_total_paragraphs = 100;

    for (unsigned seed = 300; seed < 350; ++seed) {
        std::mt19937 rng(seed);
        const ReuseGraph g = random_graph(rng, opts);
        const PatternReport report = build_pattern_report(g);
        const std::string tag = "seed " + std::to_string(seed) + ": ";

        require(report.n_articles == g.articles.size(), tag + "article count drifted");
        require(report.n_paragraphs == g.paragraphs.size(), tag + "paragraph count drifted");
        require(report.n_edges == g.edges.size(), tag + "edge count drifted");

        require(report.profiles.size() == g.articles.size(), tag + "missing origin profiles");
        for (const auto& profile : report.profiles) {
            require(profile == recount_origin(g, profile.article_id),
                    tag + "origin profile recount differs for " + profile.article_id);
        }

        const CommissionStats commission = recount_commission(g);
        require(report.commission == commission, tag + "commission recount differs");
        // The published rate must be the exact quotient, not an approximation.
        if (!g.edges.empty()) {
            int changed = 0;
            for (const auto& e : g.edges) {
                const auto* s = g.find_paragraph(e.source);
                const auto* t = g.find_paragraph(e.target);
                if (s->content_polarity != t->content_polarity) ++changed;
            }
            require(report.commission.polarity_change_rate ==
                        static_cast<double>(changed) / static_cast<double>(g.edges.size()),
                    tag + "change rate is not the exact quotient");
        }

        require(report.omissions == recount_omissions(g), tag + "omission recount differs");
        for (const auto& om : report.omissions) {
            const auto* src = g.find_article(om.source_article_id);
            require(om.omission_rate ==
                        static_cast<double>(om.omitted.size()) /
                            static_cast<double>(src->n_paragraphs),
                    tag + "omission rate is not the exact quotient");
        }

        require(report.never_reused == recount_never_reused(g),
                tag + "never-reused recount differs");
    }
}

// --- criterion 6: byte-identical artifacts for any thread count ------------

void thread_count_determinism() {
    TempDir work("accept-threads");
    std::mt19937 rng(424242);
    RandomCorpusOptions opts;
    opts.min_articles = 8;
    opts.max_articles = 12;
    opts.max_paragraphs_per_article = 8;
    opts.max_total_paragraphs = 80;
    spit(work.file("corpus.jsonl"), random_corpus_jsonl(rng, opts));

    PipelineConfig config;
    config.corpus_path = work.file("corpus.jsonl");
    config.lexicon = test_lexicon();
    config.outlets = test_outlets();
    config.out_dir = (work.path() / "run1").string();
    config.threads = 1;
    const PipelineResult first = run_pipeline(config);
    const std::string graph = slurp(first.graph_path);
    const std::string patterns = slurp(first.patterns_path);
    const std::string html = slurp(first.html_path);
    const std::string manifest = slurp(first.manifest_path);

    config.out_dir = (work.path() / "run4").string();
    config.threads = 4;
    const PipelineResult threaded = run_pipeline(config);
    require(slurp(threaded.graph_path) == graph, "graph bytes depend on thread count");
    require(slurp(threaded.patterns_path) == patterns, "pattern bytes depend on thread count");
    require(slurp(threaded.html_path) == html, "HTML bytes depend on thread count");

    // Identical configuration reruns reproduce everything, manifest included.
    config.out_dir = (work.path() / "run1").string();
    config.threads = 1;
    const PipelineResult again = run_pipeline(config);
    require(slurp(again.graph_path) == graph, "graph bytes changed on rerun");
    require(slurp(again.patterns_path) == patterns, "pattern bytes changed on rerun");
    require(slurp(again.html_path) == html, "HTML bytes changed on rerun");
    require(slurp(again.manifest_path) == manifest, "manifest bytes changed on rerun");
}

// --- criterion 7: mirrored lexicons negate the score on any text -----------

void polarity_antisymmetry() {
    const PolarityLexicon lexicon = test_lexicon();
    const PolarityLexicon mirrored = lexicon.mirrored();
    std::mt19937 rng(777);

    for (int i = 0; i < 1000; ++i) {
        const std::string text = random_cue_text(rng);
        PolarityScore forward;
        PolarityScore reversed;
        try {
            forward = classify_text(text, lexicon);
            reversed = classify_text(text, mirrored);
        } catch (const std::exception& e) {
            throw Failure("classifier threw on sample " + std::to_string(i) + ": " + e.what());
        }
        require(reversed.score == -forward.score,
                "sample " + std::to_string(i) + ": score did not negate exactly");
        const Polarity want = forward.label == Polarity::Left    ? Polarity::Right
                              : forward.label == Polarity::Right ? Polarity::Left
                                                                 : Polarity::Center;
        require(reversed.label == want,
                "sample " + std::to_string(i) + ": label did not mirror");
    }
}

// --- criterion 8: serialize/deserialize is byte-stable ---------------------

void serialization_round_trip() {
    auto round_trip = [](const ReuseGraph& g, const std::string& tag) {
        const std::string once = serialize_graph(g);
        const ReuseGraph back = deserialize_graph(once);
        require(serialize_graph(back) == once, tag + ": second serialization changed bytes");
        require(deserialize_graph(serialize_graph(back)) == back,
                tag + ": canonical form is not a fixpoint");
        require(back.articles == g.articles && back.paragraphs == g.paragraphs,
                tag + ": reloaded nodes differ from the original");
        require(back.edges.size() == g.edges.size(), tag + ": reloaded edge count differs");
    };

    round_trip(deserialize_graph(slurp(data_file("scenario_graph.json"))), "scenario graph");
    for (unsigned seed = 500; seed < 525; ++seed) {
        std::mt19937 rng(seed);
        round_trip(random_graph(rng), "seed " + std::to_string(seed));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"scenario-reproduction", scenario_reproduction},
        {"alignment-matches-reference", alignment_matches_reference},
        {"scorer-hand-values", scorer_hand_values},
        {"temporal-order-enforcement", temporal_order_enforcement},
        {"pattern-recount", pattern_recount},
        {"thread-count-determinism", thread_count_determinism},
        {"polarity-antisymmetry", polarity_antisymmetry},
        {"serialization-round-trip", serialization_round_trip},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = Clock::now();
        try {
            check();
            std::printf("PASS %s (%.2fs)\n", name.c_str(), seconds_since(start));
        } catch (const std::exception& e) {
            ++failed;
            std::printf("FAIL %s: %s\n", name.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    if (failed != 0) {
        std::printf("%d of %zu criteria failed\n", failed, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
