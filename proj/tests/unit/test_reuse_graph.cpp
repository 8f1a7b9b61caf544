#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "coss/digest.hpp"
#include "coss/errors.hpp"
#include "coss/reuse_graph.hpp"
#include "support/fileio.hpp"
#include "support/oracles.hpp"
#include "support/random_corpus.hpp"

using namespace coss;
using coss::testing::data_file;
using coss::testing::random_graph;
using coss::testing::slurp;

namespace {

// Two articles, the later one copying the earlier's first paragraph.
ReuseGraph small_graph() {
    const std::string jsonl =
        R"({"id":"src","outlet":"Wire One","title":"first","published_at":"2021-03-01T09:00:00Z","paragraphs":["The committee approved the river crossing toll increase.","Gardening contest filler text."]})"
        "\n"
        R"({"id":"dst","outlet":"Post Three","title":"later","published_at":"2021-03-01T12:00:00Z","paragraphs":["The committee approved the river crossing toll increase."]})"
        "\n";
    auto c = parse_corpus(jsonl, true).collection;
    assign_outlet_polarities(c, coss::testing::test_outlets());
    const ScorerConfig cfg;
    auto edges = align_collection(c, cfg);
    const auto assignments = relabel_collection(c, coss::testing::test_lexicon());
    return build_graph(c, std::move(edges), assignments,
                       ConfigSnapshot{cfg, lexicon_digest(coss::testing::test_lexicon())});
}

}  // namespace

TEST_CASE("build_graph assembles canonical nodes with hashes and flags") {
    const auto g = small_graph();
    REQUIRE(g.articles.size() == 2);
    CHECK(g.articles[0].id == "src");
    CHECK(g.articles[1].id == "dst");
    CHECK(g.articles[0].outlet_polarity == Polarity::Center);  // Wire One
    CHECK(g.articles[1].outlet_polarity == Polarity::Right);   // Post Three
    CHECK(g.articles[0].n_paragraphs == 2);

    REQUIRE(g.paragraphs.size() == 3);
    CHECK(g.paragraphs[0].text_hash ==
          digest_hex("The committee approved the river crossing toll increase."));
    CHECK(g.paragraphs[2].reused);
    CHECK_FALSE(g.paragraphs[0].reused);
    CHECK_FALSE(g.paragraphs[1].reused);

    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].is_primary);
    CHECK(g.corpus_digest.size() == 16);

    CHECK(g.find_article("src") != nullptr);
    CHECK(g.find_article("missing") == nullptr);
    CHECK(g.find_paragraph({"dst", 0}) != nullptr);
    CHECK(g.find_paragraph({"dst", 9}) == nullptr);
    CHECK(g.article_pos("dst") == 1);
    CHECK_THROWS_AS(g.article_pos("missing"), InputError);
}

TEST_CASE("build_graph refuses incomplete polarity assignments") {
    const std::string jsonl =
        R"({"id":"a","outlet":"O","title":"t","published_at":"2021-03-01T09:00:00Z","paragraphs":["x."]})"
        "\n";
    const auto c = parse_corpus(jsonl, true).collection;
    const PolarityAssignments empty_assignments;
    CHECK_THROWS_AS(build_graph(c, {}, empty_assignments, ConfigSnapshot{}), IntegrityError);
}

TEST_CASE("validate_graph rejects each structural violation") {
    const auto base = small_graph();

    SUBCASE("intact graph passes") { CHECK_NOTHROW(validate_graph(base)); }
    SUBCASE("wrong schema version") {
        auto g = base;
        g.schema_version = 99;
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("schema_version"),
                             IntegrityError);
    }
    SUBCASE("articles out of canonical order") {
        auto g = base;
        std::swap(g.articles[0], g.articles[1]);
        g.rebuild_index();
        CHECK_THROWS_AS(validate_graph(g), IntegrityError);
    }
    SUBCASE("dangling edge source") {
        auto g = base;
        g.edges[0].source = {"ghost", 0};
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("unknown paragraph"),
                             IntegrityError);
    }
    SUBCASE("edge pointing backward in time") {
        auto g = base;
        std::swap(g.edges[0].source, g.edges[0].target);
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("forward in time"),
                             IntegrityError);
    }
    SUBCASE("score above 1") {
        auto g = base;
        g.edges[0].score = 1.5;
        CHECK_THROWS_AS(validate_graph(g), IntegrityError);
    }
    SUBCASE("score below tau") {
        auto g = base;
        g.edges[0].score = g.config.scorer.tau / 2;
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("below threshold"),
                             IntegrityError);
    }
    SUBCASE("no primary edge") {
        auto g = base;
        g.edges[0].is_primary = false;
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("exactly one primary"),
                             IntegrityError);
    }
    SUBCASE("duplicated primary edge") {
        auto g = base;
        g.edges.push_back(g.edges[0]);  // second identical primary
        CHECK_THROWS_AS(validate_graph(g), IntegrityError);
    }
    SUBCASE("reused flag cleared on a target") {
        auto g = base;
        for (auto& p : g.paragraphs) p.reused = false;
        CHECK_THROWS_WITH_AS(validate_graph(g), doctest::Contains("not marked reused"),
                             IntegrityError);
    }
    SUBCASE("reused flag set without edges") {
        auto g = base;
        g.edges.clear();
        CHECK_THROWS_WITH_AS(validate_graph(g),
                             doctest::Contains("reused without incoming edges"), IntegrityError);
    }
    SUBCASE("paragraph count mismatch") {
        auto g = base;
        g.articles[0].n_paragraphs = 7;
        CHECK_THROWS_AS(validate_graph(g), IntegrityError);
    }
    SUBCASE("paragraph index gap") {
        auto g = base;
        g.paragraphs[1].ref.index = 5;
        g.rebuild_index();
        CHECK_THROWS_AS(validate_graph(g), IntegrityError);
    }
}

TEST_CASE("serialize-deserialize round-trip is byte-stable") {
    // Serialization canonicalizes floats to 9 significant digits, so the
    // first pass may shave score precision; after that single canonicalizing
    // step the file format is a fixpoint both in bytes and in memory.
    std::mt19937 rng(41);
    for (int i = 0; i < 10; ++i) {
        const auto g = random_graph(rng);
        const std::string s1 = serialize_graph(g);
        const ReuseGraph g2 = deserialize_graph(s1);
        const std::string s2 = serialize_graph(g2);
        CHECK(s2 == s1);
        CHECK(deserialize_graph(s2) == g2);
        // Only edge scores may move, and by less than the print granularity.
        REQUIRE(g2.edges.size() == g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            CHECK(g2.edges[e].source == g.edges[e].source);
            CHECK(g2.edges[e].target == g.edges[e].target);
            CHECK(g2.edges[e].is_primary == g.edges[e].is_primary);
            CHECK(std::fabs(g2.edges[e].score - g.edges[e].score) < 1e-8);
        }
        CHECK(g2.articles == g.articles);
        CHECK(g2.paragraphs == g.paragraphs);
    }
}

TEST_CASE("edge-free graph round-trips byte-identically") {
    const std::string jsonl =
        R"({"id":"solo","outlet":"Wire One","title":"t","published_at":"2021-03-01T09:00:00Z","paragraphs":["Nothing to reuse yet."]})"
        "\n";
    auto c = parse_corpus(jsonl, true).collection;
    assign_outlet_polarities(c, coss::testing::test_outlets());
    const auto assignments = relabel_collection(c, coss::testing::test_lexicon());
    const auto g = build_graph(c, {}, assignments, ConfigSnapshot{});
    CHECK(g.edges.empty());
    const std::string s1 = serialize_graph(g);
    CHECK(serialize_graph(deserialize_graph(s1)) == s1);
}

TEST_CASE("stored reference graph loads, validates, and re-serializes byte-identically") {
    const std::string bytes = slurp(data_file("scenario_graph.json"));
    const ReuseGraph g = deserialize_graph(bytes);
    CHECK(serialize_graph(g) == bytes);
    CHECK(g.articles.size() == 6);
    CHECK(g.paragraphs.size() == 19);
    CHECK(g.edges.size() == 7);
    int primaries = 0;
    for (const auto& e : g.edges) primaries += e.is_primary ? 1 : 0;
    CHECK(primaries == 6);
    CHECK(coss::testing::is_temporal_dag(g));
}

TEST_CASE("deserialize rejects malformed JSON as input error") {
    CHECK_THROWS_AS(deserialize_graph("{ not json"), InputError);
    CHECK_THROWS_AS(deserialize_graph(""), InputError);
}

TEST_CASE("deserialize rejects schema and key damage as integrity errors") {
    const std::string bytes = slurp(data_file("scenario_graph.json"));

    SUBCASE("wrong schema version") {
        auto j = nlohmann::ordered_json::parse(bytes);
        j["schema_version"] = 2;
        CHECK_THROWS_WITH_AS(deserialize_graph(j.dump()), doctest::Contains("schema_version"),
                             IntegrityError);
    }
    SUBCASE("missing required key") {
        auto j = nlohmann::ordered_json::parse(bytes);
        j.erase("edges");
        CHECK_THROWS_AS(deserialize_graph(j.dump()), IntegrityError);
    }
    SUBCASE("edge endpoints swapped point backward") {
        auto j = nlohmann::ordered_json::parse(bytes);
        auto& e = j["edges"][0];
        std::swap(e["source"], e["target"]);
        CHECK_THROWS_AS(deserialize_graph(j.dump()), IntegrityError);
    }
    SUBCASE("bad polarity letter") {
        auto j = nlohmann::ordered_json::parse(bytes);
        j["articles"][0]["outlet_polarity"] = "X";
        CHECK_THROWS_AS(deserialize_graph(j.dump()), IntegrityError);
    }
    SUBCASE("non-array char_span") {
        auto j = nlohmann::ordered_json::parse(bytes);
        j["paragraphs"][0]["char_span"] = 12;
        CHECK_THROWS_AS(deserialize_graph(j.dump()), IntegrityError);
    }
    SUBCASE("top-level array instead of object") {
        CHECK_THROWS_AS(deserialize_graph("[]"), IntegrityError);
    }
}

TEST_CASE("sources_of and reuses_of sort by score then canonical position") {
    const std::string bytes = slurp(data_file("scenario_graph.json"));
    const ReuseGraph g = deserialize_graph(bytes);

    // A4:2 has two incoming edges with equal scores (A1:0 and A2:0); the
    // earlier source must come first.
    const auto sources = sources_of(g, {"A4", 2});
    REQUIRE(sources.size() == 2);
    CHECK(sources[0].source.article_id == "A1");
    CHECK(sources[1].source.article_id == "A2");
    CHECK(sources[0].score == sources[1].score);

    // A1:0 feeds two later paragraphs; the verbatim copy (score 1.0) first.
    const auto reuses = reuses_of(g, {"A1", 0});
    REQUIRE(reuses.size() == 2);
    CHECK(reuses[0].target == ParagraphRef{"A2", 0});
    CHECK(reuses[0].score == 1.0);
    CHECK(reuses[1].target == ParagraphRef{"A4", 2});
    CHECK(reuses[1].score < 1.0);

    // Paragraph with no incoming edges: empty, not an error.
    CHECK(sources_of(g, {"A1", 0}).empty());
    CHECK(reuses_of(g, {"A4", 2}).empty());

    CHECK_THROWS_AS(sources_of(g, {"nope", 0}), InputError);
    CHECK_THROWS_AS(reuses_of(g, {"nope", 0}), InputError);
}
