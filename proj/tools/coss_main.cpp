// coss: detect paragraph-level text reuse across event-related news
// articles, build a time-directed reuse graph with polarity labels, and
// derive bias-pattern statistics and a static HTML timeline from it.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coss/corpus.hpp"
#include "coss/errors.hpp"
#include "coss/log.hpp"
#include "coss/patterns.hpp"
#include "coss/pipeline.hpp"
#include "coss/render.hpp"
#include "coss/retrieval.hpp"
#include "coss/reuse_graph.hpp"
#include "coss/time.hpp"
#include "coss/version.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw coss::InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw coss::InputError("cannot write file: " + path);
    out << content;
    if (!out) throw coss::InputError("write failed: " + path);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

/// A graph file that fails its invariants is bad input to this process, not
/// an internal bug, so integrity violations surface as input errors here.
coss::ReuseGraph load_graph_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return coss::deserialize_graph(text);
    } catch (const coss::IntegrityError& e) {
        throw coss::InputError(e.what());
    }
}

coss::Timestamp parse_time_flag(const std::string& value, const char* flag) {
    const auto ts = coss::parse_rfc3339(value);
    if (!ts) {
        throw coss::InputError(std::string(flag) + ": \"" + value +
                               "\" is not a valid RFC 3339 time");
    }
    return *ts;
}

struct IngestOptions {
    std::string corpus;
    std::string out;
    bool check = false;
};

void run_ingest(const IngestOptions& opts) {
    const coss::ParseResult parsed = coss::parse_corpus_file(opts.corpus, /*strict=*/false);
    for (const auto& issue : parsed.issues) {
        std::cout << "skipped line " << issue.line << ": " << issue.message << "\n";
    }
    const coss::ValidationReport report = coss::validate(parsed.collection);
    for (const auto& e : report.errors) std::cout << "error: " << e << "\n";
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "articles: " << report.n_articles << "\nparagraphs: " << report.n_paragraphs
              << "\n";
    if (report.n_articles > 0) {
        std::cout << "time range: " << coss::format_rfc3339(report.time_start) << " .. "
                  << coss::format_rfc3339(report.time_end) << "\n";
    }
    if (!parsed.issues.empty() || !report.ok()) {
        throw coss::InputError("corpus failed validation: " +
                               std::to_string(report.errors.size()) + " error(s), " +
                               std::to_string(parsed.issues.size()) + " skipped line(s)");
    }
    std::cout << "corpus is valid\n";
    if (!opts.check && !opts.out.empty()) {
        write_file(opts.out, coss::serialize_corpus(parsed.collection));
        std::cout << "canonical corpus written to " << opts.out << "\n";
    }
}

struct RetrieveOptions {
    std::string corpus;
    std::string query;
    std::string seed;
    std::string from;
    std::string to;
    int k = 50;
    std::string out;
};

void run_retrieve(const RetrieveOptions& opts) {
    const coss::ParseResult parsed = coss::parse_corpus_file(opts.corpus, /*strict=*/true);
    const coss::TimeWindow window{parse_time_flag(opts.from, "--from"),
                                  parse_time_flag(opts.to, "--to")};
    if (window.start > window.end) throw coss::InputError("--from is after --to");

    std::vector<coss::RankedCandidate> candidates;
    if (!opts.seed.empty()) {
        const coss::Article* seed = parsed.collection.find_article(opts.seed);
        if (seed == nullptr) {
            throw coss::InputError("seed article \"" + opts.seed + "\" not found in corpus");
        }
        candidates = coss::retrieve_by_seed(parsed.collection, *seed, window, opts.k);
    } else {
        candidates = coss::retrieve_by_query(parsed.collection, {opts.query}, window, opts.k);
    }
    write_output(opts.out, coss::serialize_candidates(candidates));
}

struct AlignOptions {
    std::string config;
    std::string corpus;
    std::string out_dir;
    std::string edges_out;
    std::string graph_out;
    int threads = 0;  // 0 = keep config value
};

void run_align(const AlignOptions& opts) {
    coss::PipelineConfig config = coss::load_pipeline_config(opts.config);
    if (!opts.corpus.empty()) config.corpus_path = opts.corpus;
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.threads > 0) config.threads = opts.threads;

    const coss::GraphBuild build = coss::build_graph_from_config(config);
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir.empty() ? "." : config.out_dir, ec);
    if (ec) {
        throw coss::InputError("cannot create output directory \"" + config.out_dir +
                               "\": " + ec.message());
    }
    const std::filesystem::path out(config.out_dir.empty() ? "." : config.out_dir);
    const std::string edges_path =
        opts.edges_out.empty() ? (out / "edges.jsonl").string() : opts.edges_out;
    const std::string graph_path =
        opts.graph_out.empty() ? (out / "graph.json").string() : opts.graph_out;
    write_file(edges_path, coss::serialize_edges_jsonl(build.edges));
    write_file(graph_path, coss::serialize_graph(build.graph));
    std::cout << "edges: " << build.edges.size() << " -> " << edges_path << "\n"
              << "graph: " << build.graph.paragraphs.size() << " paragraphs -> " << graph_path
              << "\n";
}

struct AnalyzeOptions {
    std::string graph;
    std::string article;
    std::string format = "json";
    std::string out;
};

void run_analyze(const AnalyzeOptions& opts) {
    const coss::ReuseGraph graph = load_graph_file(opts.graph);
    std::optional<std::string> article;
    if (!opts.article.empty()) article = opts.article;
    const coss::PatternReport report = coss::build_pattern_report(graph, article);
    if (opts.format == "table") {
        write_output(opts.out, coss::format_pattern_report_table(report));
    } else {
        write_output(opts.out, coss::serialize_pattern_report(report, graph));
    }
}

struct RenderOptionsCli {
    std::string graph;
    std::string out = "report.html";
    std::string title;
    bool show_scores = false;
};

void run_render(const RenderOptionsCli& opts) {
    const coss::ReuseGraph graph = load_graph_file(opts.graph);
    coss::RenderOptions options;
    options.show_scores = opts.show_scores;
    if (!opts.title.empty()) options.title = opts.title;
    write_file(opts.out, coss::render_html(graph, options));
    std::cout << "report: " << opts.out << "\n";
}

struct RunOptions {
    std::string config;
    std::string corpus;
    std::string mode;
    std::string seed;
    std::string out_dir;
    int threads = 0;
    bool show_scores = false;
};

void run_run(const RunOptions& opts) {
    coss::PipelineConfig config = coss::load_pipeline_config(opts.config);
    if (!opts.corpus.empty()) config.corpus_path = opts.corpus;
    if (!opts.mode.empty()) {
        config.mode = opts.mode == "seed" ? coss::PipelineMode::Seed
                                          : coss::PipelineMode::Collection;
    }
    if (!opts.seed.empty()) config.seed_id = opts.seed;
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.threads > 0) config.threads = opts.threads;
    if (opts.show_scores) config.render.show_scores = true;

    const coss::PipelineResult result = coss::run_pipeline(config);
    std::cout << "graph:    " << result.graph_path << "\n"
              << "patterns: " << result.patterns_path << "\n"
              << "report:   " << result.html_path << "\n"
              << "manifest: " << result.manifest_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paragraph-level text reuse and bias-pattern analysis over news corpora"};
    app.set_version_flag("--version", std::string("coss ") + coss::kVersion);
    app.require_subcommand(1);

    IngestOptions ingest_opts;
    auto* ingest = app.add_subcommand("ingest", "Parse and validate a corpus file");
    ingest->add_option("--corpus", ingest_opts.corpus, "corpus JSONL file")->required();
    ingest->add_flag("--check", ingest_opts.check, "validate only, never write");
    ingest->add_option("--out", ingest_opts.out, "write the canonical JSONL form here");
    ingest->callback([&] { run_ingest(ingest_opts); });

    RetrieveOptions retrieve_opts;
    auto* retrieve =
        app.add_subcommand("retrieve", "Rank event-related candidate articles in a time window");
    retrieve->add_option("--corpus", retrieve_opts.corpus, "corpus JSONL file")->required();
    auto* query_opt =
        retrieve->add_option("--query", retrieve_opts.query, "event-descriptive query text");
    auto* seed_opt =
        retrieve->add_option("--seed", retrieve_opts.seed, "seed article id to match against");
    query_opt->excludes(seed_opt);
    seed_opt->excludes(query_opt);
    retrieve->add_option("--from", retrieve_opts.from, "window start (RFC 3339)")->required();
    retrieve->add_option("--to", retrieve_opts.to, "window end (RFC 3339)")->required();
    retrieve->add_option("--k", retrieve_opts.k, "maximum number of results")
        ->check(CLI::PositiveNumber);
    retrieve->add_option("--out", retrieve_opts.out, "write JSON here instead of stdout");
    retrieve->callback([&] {
        if (retrieve_opts.query.empty() && retrieve_opts.seed.empty()) {
            throw CLI::RequiredError("--query or --seed");
        }
        run_retrieve(retrieve_opts);
    });

    AlignOptions align_opts;
    auto* align = app.add_subcommand(
        "align", "Detect paragraph reuse and write the edge list and reuse graph");
    align->add_option("--config", align_opts.config, "run configuration JSON")->required();
    align->add_option("--corpus", align_opts.corpus, "override the configured corpus path");
    align->add_option("--out", align_opts.out_dir, "override the configured output directory");
    align->add_option("--edges-out", align_opts.edges_out, "edge list path (default <out>/edges.jsonl)");
    align->add_option("--graph-out", align_opts.graph_out, "graph path (default <out>/graph.json)");
    align->add_option("--threads", align_opts.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
    align->callback([&] { run_align(align_opts); });

    AnalyzeOptions analyze_opts;
    auto* analyze =
        app.add_subcommand("analyze", "Derive reuse-pattern statistics from a graph file");
    analyze->add_option("--graph", analyze_opts.graph, "graph JSON file")->required();
    analyze->add_option("--article", analyze_opts.article, "restrict the report to one article");
    analyze->add_option("--format", analyze_opts.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    analyze->add_option("--out", analyze_opts.out, "write here instead of stdout");
    analyze->callback([&] { run_analyze(analyze_opts); });

    RenderOptionsCli render_opts;
    auto* render = app.add_subcommand("render", "Render a graph file as a static HTML timeline");
    render->add_option("--graph", render_opts.graph, "graph JSON file")->required();
    render->add_option("--out", render_opts.out, "output HTML path");
    render->add_option("--title", render_opts.title, "page title");
    render->add_flag("--show-scores", render_opts.show_scores,
                     "scale arrow stroke width by edge score");
    render->callback([&] { run_render(render_opts); });

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Run the whole pipeline from a configuration file");
    run->add_option("--config", run_opts.config, "run configuration JSON")->required();
    run->add_option("--corpus", run_opts.corpus, "override the configured corpus path");
    run->add_option("--mode", run_opts.mode, "collection or seed")
        ->check(CLI::IsMember({"collection", "seed"}));
    run->add_option("--seed", run_opts.seed, "seed article id (seed mode)");
    run->add_option("--out", run_opts.out_dir, "override the configured output directory");
    run->add_option("--threads", run_opts.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
    run->add_flag("--show-scores", run_opts.show_scores,
                  "scale arrow stroke width by edge score");
    run->callback([&] { run_run(run_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const coss::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const coss::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const coss::IntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
