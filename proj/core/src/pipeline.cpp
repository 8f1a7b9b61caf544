#include "coss/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coss/digest.hpp"
#include "coss/errors.hpp"
#include "coss/log.hpp"
#include "coss/patterns.hpp"
#include "coss/retrieval.hpp"
#include "coss/version.hpp"
#include "graph_json.hpp"
#include "json_util.hpp"

namespace coss {

namespace {

namespace fs = std::filesystem;

using detail::ojson;
using detail::round9;

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty()) return path;
    const fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(base_dir) / p).lexically_normal().string();
}

/// Runs one pipeline stage; errors rethrow with the stage name prefixed.
template <typename F>
auto stage(const char* name, F&& f) {
    log(LogLevel::Info, std::string("stage ") + name);
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(std::string(name) + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(name) + ": " + e.what());
    } catch (const IntegrityError& e) {
        throw IntegrityError(std::string(name) + ": " + e.what());
    }
}

void expect_keys(const ojson& obj, const char* context,
                 std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known) {
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + context);
        }
    }
}

Timestamp parse_config_time(const ojson& value, const char* key) {
    if (!value.is_string()) {
        throw ConfigError(std::string("config: \"") + key + "\" must be an RFC 3339 string");
    }
    const auto ts = parse_rfc3339(value.get<std::string>());
    if (!ts) {
        throw ConfigError(std::string("config: \"") + key + "\" is not a valid RFC 3339 time");
    }
    return *ts;
}

std::string require_color(const ojson& value, const char* key) {
    if (!value.is_string() || value.get<std::string>().empty()) {
        throw ConfigError(std::string("config: \"") + key + "\" must be a non-empty string");
    }
    return value.get<std::string>();
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& json_text, const std::string& base_dir) {
    ojson j = ojson::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config: malformed JSON");
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");

    expect_keys(j, "the top level",
                {"corpus", "mode", "seed", "out_dir", "threads", "scorer", "lexicon",
                 "lexicon_path", "outlets", "outlets_path", "retrieval", "render"});

    PipelineConfig cfg;
    try {
        if (!j.contains("corpus") || !j["corpus"].is_string() ||
            j["corpus"].get<std::string>().empty()) {
            throw ConfigError("config: \"corpus\" (string path) is required");
        }
        cfg.corpus_path = resolve_path(base_dir, j["corpus"].get<std::string>());

        if (j.contains("mode")) {
            const std::string mode = j["mode"].get<std::string>();
            if (mode == "collection") {
                cfg.mode = PipelineMode::Collection;
            } else if (mode == "seed") {
                cfg.mode = PipelineMode::Seed;
            } else {
                throw ConfigError("config: \"mode\" must be \"collection\" or \"seed\"");
            }
        }
        if (j.contains("seed")) cfg.seed_id = j["seed"].get<std::string>();
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
        cfg.out_dir = resolve_path(base_dir, cfg.out_dir);
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (cfg.threads < 1) throw ConfigError("config: \"threads\" must be >= 1");

        if (j.contains("scorer")) {
            const ojson& s = j["scorer"];
            if (!s.is_object()) throw ConfigError("config: \"scorer\" must be an object");
            expect_keys(s, "\"scorer\"",
                        {"shingle_n", "w_lex", "w_tfidf", "w_sem", "tau", "stopwords"});
            if (s.contains("shingle_n")) cfg.scorer.shingle_n = s["shingle_n"].get<int>();
            if (s.contains("w_lex")) cfg.scorer.w_lex = s["w_lex"].get<double>();
            if (s.contains("w_tfidf")) cfg.scorer.w_tfidf = s["w_tfidf"].get<double>();
            if (s.contains("w_sem")) cfg.scorer.w_sem = s["w_sem"].get<double>();
            if (s.contains("tau")) cfg.scorer.tau = s["tau"].get<double>();
            if (s.contains("stopwords")) {
                StopwordSet stop;
                for (const auto& el : s["stopwords"]) stop.insert(el.get<std::string>());
                if (!stop.empty()) cfg.scorer.stopwords = std::move(stop);
            }
        }
        validate_scorer_config(cfg.scorer, /*has_semantic_backend=*/false);

        if (j.contains("lexicon") && j.contains("lexicon_path")) {
            throw ConfigError("config: give \"lexicon\" inline or \"lexicon_path\", not both");
        }
        if (j.contains("lexicon")) {
            cfg.lexicon = parse_lexicon(j["lexicon"].dump());
        } else if (j.contains("lexicon_path")) {
            const std::string path = resolve_path(base_dir, j["lexicon_path"].get<std::string>());
            cfg.lexicon = parse_lexicon(detail::read_file(path));
        }

        if (j.contains("outlets") && j.contains("outlets_path")) {
            throw ConfigError("config: give \"outlets\" inline or \"outlets_path\", not both");
        }
        if (j.contains("outlets")) {
            cfg.outlets = parse_outlet_map(j["outlets"].dump());
        } else if (j.contains("outlets_path")) {
            const std::string path = resolve_path(base_dir, j["outlets_path"].get<std::string>());
            cfg.outlets = parse_outlet_map(detail::read_file(path));
        }

        if (j.contains("retrieval")) {
            const ojson& r = j["retrieval"];
            if (!r.is_object()) throw ConfigError("config: \"retrieval\" must be an object");
            expect_keys(r, "\"retrieval\"", {"from", "to", "k"});
            if (r.contains("from")) cfg.retrieval.from = parse_config_time(r["from"], "retrieval.from");
            if (r.contains("to")) cfg.retrieval.to = parse_config_time(r["to"], "retrieval.to");
            if (r.contains("k")) cfg.retrieval.k = r["k"].get<int>();
            if (cfg.retrieval.k < 1) throw ConfigError("config: \"retrieval.k\" must be >= 1");
            if (cfg.retrieval.from && cfg.retrieval.to &&
                *cfg.retrieval.from > *cfg.retrieval.to) {
                throw ConfigError("config: retrieval window start is after its end");
            }
        }

        if (j.contains("render")) {
            const ojson& r = j["render"];
            if (!r.is_object()) throw ConfigError("config: \"render\" must be an object");
            expect_keys(r, "\"render\"",
                        {"title", "show_scores", "color_left", "color_center", "color_right"});
            if (r.contains("title")) cfg.render.title = r["title"].get<std::string>();
            if (r.contains("show_scores")) cfg.render.show_scores = r["show_scores"].get<bool>();
            if (r.contains("color_left")) cfg.render.color_left = require_color(r["color_left"], "render.color_left");
            if (r.contains("color_center")) cfg.render.color_center = require_color(r["color_center"], "render.color_center");
            if (r.contains("color_right")) cfg.render.color_right = require_color(r["color_right"], "render.color_right");
        }
    } catch (const ojson::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (cfg.mode == PipelineMode::Seed && !cfg.seed_id) {
        throw ConfigError("config: seed mode requires \"seed\" (article id)");
    }
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    const std::string text = detail::read_file(path);
    return parse_pipeline_config(text, fs::path(path).parent_path().string());
}

GraphBuild build_graph_from_config(const PipelineConfig& config) {
    validate_scorer_config(config.scorer, /*has_semantic_backend=*/false);
    if (config.threads < 1) throw ConfigError("threads must be >= 1");
    if (config.mode == PipelineMode::Seed && !config.seed_id) {
        throw ConfigError("seed mode requires a seed article id");
    }

    GraphBuild build;
    build.collection = stage("parse", [&] {
        auto parsed = parse_corpus_file(config.corpus_path, /*strict=*/true);
        const ValidationReport report = validate(parsed.collection);
        if (!report.ok()) {
            std::string msg = "corpus validation failed: " + report.errors.front();
            if (report.errors.size() > 1) {
                msg += " (+" + std::to_string(report.errors.size() - 1) + " more)";
            }
            throw InputError(msg);
        }
        return std::move(parsed.collection);
    });
    log(LogLevel::Info,
        "parsed " + std::to_string(build.collection.articles.size()) + " articles, " +
            std::to_string(build.collection.paragraph_count()) + " paragraphs");

    const auto outlet_warnings = assign_outlet_polarities(build.collection, config.outlets);
    for (const auto& w : outlet_warnings) log(LogLevel::Warn, w);
    build.warnings.insert(build.warnings.end(), outlet_warnings.begin(), outlet_warnings.end());

    if (config.mode == PipelineMode::Seed) {
        stage("retrieve", [&] {
            const Article* seed = build.collection.find_article(*config.seed_id);
            if (seed == nullptr) {
                throw InputError("seed article \"" + *config.seed_id + "\" not found in corpus");
            }
            const TimeWindow window{
                config.retrieval.from.value_or(build.collection.articles.front().published_at),
                config.retrieval.to.value_or(build.collection.articles.back().published_at)};
            const auto candidates =
                retrieve_by_seed(build.collection, *seed, window, config.retrieval.k);
            std::set<std::string> keep{seed->id};
            for (const auto& c : candidates) keep.insert(c.article_id);
            std::erase_if(build.collection.articles,
                          [&](const Article& a) { return keep.count(a.id) == 0; });
            build.window = window;
            log(LogLevel::Info, "seed mode kept " +
                                    std::to_string(build.collection.articles.size()) +
                                    " articles");
        });
    }

    build.edges = stage("align", [&] {
        return align_collection(build.collection, config.scorer, nullptr,
                                static_cast<unsigned>(config.threads));
    });
    build.assignments =
        stage("relabel", [&] { return relabel_collection(build.collection, config.lexicon); });
    build.graph = stage("graph", [&] {
        const ConfigSnapshot snapshot{config.scorer, lexicon_digest(config.lexicon)};
        return build_graph(build.collection, build.edges, build.assignments, snapshot);
    });
    return build;
}

std::string serialize_edges_jsonl(const std::vector<ReuseEdge>& edges) {
    std::string out;
    for (const auto& e : edges) {
        ojson j;
        j["source"] = detail::ref_to_json(e.source);
        j["target"] = detail::ref_to_json(e.target);
        j["score"] = round9(e.score);
        ojson c;
        c["lexical"] = round9(e.components.lexical);
        c["tfidf"] = round9(e.components.tfidf);
        c["semantic"] = round9(e.components.semantic);
        j["components"] = std::move(c);
        j["is_primary"] = e.is_primary;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string serialize_manifest(const PipelineConfig& config, const GraphBuild& build) {
    ojson j;
    j["tool"] = "coss";
    j["tool_version"] = kVersion;

    ojson c;
    c["corpus"] = config.corpus_path;
    c["mode"] = config.mode == PipelineMode::Seed ? "seed" : "collection";
    c["seed"] = config.seed_id ? ojson(*config.seed_id) : ojson(nullptr);
    c["out_dir"] = config.out_dir;
    c["threads"] = config.threads;
    c["scorer"] = detail::scorer_to_json(config.scorer);

    ojson lex;
    std::vector<std::string> left(config.lexicon.left_cues.begin(), config.lexicon.left_cues.end());
    std::vector<std::string> right(config.lexicon.right_cues.begin(),
                                   config.lexicon.right_cues.end());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    lex["left"] = left;
    lex["right"] = right;
    lex["margin"] = round9(config.lexicon.margin);
    lex["digest"] = lexicon_digest(config.lexicon);
    c["lexicon"] = std::move(lex);

    ojson outlets = ojson::object();
    const std::map<std::string, Polarity> sorted_outlets(config.outlets.by_outlet.begin(),
                                                         config.outlets.by_outlet.end());
    for (const auto& [name, polarity] : sorted_outlets) outlets[name] = polarity_str(polarity);
    c["outlets"] = std::move(outlets);

    ojson r;
    if (build.window) {
        r["from"] = format_rfc3339(build.window->start);
        r["to"] = format_rfc3339(build.window->end);
    } else {
        r["from"] = config.retrieval.from ? ojson(format_rfc3339(*config.retrieval.from))
                                          : ojson(nullptr);
        r["to"] = config.retrieval.to ? ojson(format_rfc3339(*config.retrieval.to))
                                      : ojson(nullptr);
    }
    r["k"] = config.retrieval.k;
    c["retrieval"] = std::move(r);

    ojson rd;
    rd["title"] = config.render.title;
    rd["show_scores"] = config.render.show_scores;
    rd["color_left"] = config.render.color_left;
    rd["color_center"] = config.render.color_center;
    rd["color_right"] = config.render.color_right;
    c["render"] = std::move(rd);
    j["config"] = std::move(c);

    j["corpus_digest"] = build.graph.corpus_digest;
    ojson artifacts;
    artifacts["graph"] = "graph.json";
    artifacts["patterns"] = "patterns.json";
    artifacts["report"] = "report.html";
    j["artifacts"] = std::move(artifacts);
    j["warnings"] = build.warnings;
    return j.dump(2) + "\n";
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    GraphBuild build = build_graph_from_config(config);

    const std::string patterns_json = stage("analyze", [&] {
        return serialize_pattern_report(build_pattern_report(build.graph), build.graph);
    });
    const std::string html =
        stage("render", [&] { return render_html(build.graph, config.render); });
    const std::string graph_json = serialize_graph(build.graph);
    const std::string manifest = serialize_manifest(config, build);

    const fs::path out(config.out_dir.empty() ? "." : config.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        throw InputError("cannot create output directory \"" + out.string() +
                         "\": " + ec.message());
    }

    PipelineResult result;
    result.graph_path = (out / "graph.json").string();
    result.patterns_path = (out / "patterns.json").string();
    result.html_path = (out / "report.html").string();
    result.manifest_path = (out / "manifest.json").string();
    detail::write_file(result.graph_path, graph_json);
    detail::write_file(result.patterns_path, patterns_json);
    detail::write_file(result.html_path, html);
    detail::write_file(result.manifest_path, manifest);
    log(LogLevel::Info, "wrote artifacts to " + out.string());

    result.graph = std::move(build.graph);
    result.warnings = std::move(build.warnings);
    return result;
}

}  // namespace coss
