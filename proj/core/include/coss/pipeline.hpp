#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coss/alignment.hpp"
#include "coss/corpus.hpp"
#include "coss/polarity.hpp"
#include "coss/render.hpp"
#include "coss/reuse_graph.hpp"
#include "coss/time.hpp"
#include "coss/types.hpp"

namespace coss {

enum class PipelineMode { Collection, Seed };

/// Candidate-retrieval window and depth, used in seed mode. An unset bound
/// defaults to the corpus's first/last publication time.
struct RetrievalSettings {
    std::optional<Timestamp> from;
    std::optional<Timestamp> to;
    int k = 50;
};

/// One run configuration with every default materialized. Paths are stored
/// resolved (relative entries in a config file resolve against the file's
/// directory); the lexicon and outlet map are already loaded.
struct PipelineConfig {
    std::string corpus_path;
    PipelineMode mode = PipelineMode::Collection;
    std::optional<std::string> seed_id;
    std::string out_dir = "out";
    int threads = 1;
    ScorerConfig scorer;
    PolarityLexicon lexicon;
    OutletMap outlets;
    RetrievalSettings retrieval;
    RenderOptions render;
};

/// Parses the JSON run configuration (see README for the schema). Rejects
/// unknown keys. Throws ConfigError on schema violations; loading a lexicon
/// or outlet file that cannot be read throws InputError.
PipelineConfig parse_pipeline_config(const std::string& json_text, const std::string& base_dir);
PipelineConfig load_pipeline_config(const std::string& path);

/// Everything up to the built graph: parse + validate the corpus, assign
/// outlet polarities, narrow to seed candidates in seed mode, align,
/// relabel, build. Errors rethrow with the failing stage's name prefixed.
struct GraphBuild {
    EventCollection collection;  // the aligned (possibly seed-narrowed) collection
    std::vector<ReuseEdge> edges;
    PolarityAssignments assignments;
    ReuseGraph graph;
    std::optional<TimeWindow> window;  // resolved retrieval window (seed mode)
    std::vector<std::string> warnings;
};

GraphBuild build_graph_from_config(const PipelineConfig& config);

struct PipelineResult {
    ReuseGraph graph;
    std::string graph_path;
    std::string patterns_path;
    std::string html_path;
    std::string manifest_path;
    std::vector<std::string> warnings;
};

/// Full run: build_graph_from_config, then pattern analysis and HTML
/// rendering. Writes graph.json, patterns.json, report.html and
/// manifest.json (tool version + materialized config echo + corpus digest)
/// into out_dir. Artifact bytes depend only on the inputs and the config.
PipelineResult run_pipeline(const PipelineConfig& config);

/// One compact JSON object per edge, in edge order.
std::string serialize_edges_jsonl(const std::vector<ReuseEdge>& edges);

/// Manifest document for a completed build (also used by the align
/// subcommand so staged runs stay auditable).
std::string serialize_manifest(const PipelineConfig& config, const GraphBuild& build);

}  // namespace coss
