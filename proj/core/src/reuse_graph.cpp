#include "coss/reuse_graph.hpp"

#include <algorithm>
#include <set>

#include "coss/digest.hpp"
#include "coss/errors.hpp"
#include "coss/time.hpp"
#include "graph_json.hpp"
#include "json_util.hpp"

namespace coss {

namespace detail {

ojson scorer_to_json(const ScorerConfig& cfg) {
    ojson j;
    j["shingle_n"] = cfg.shingle_n;
    j["w_lex"] = round9(cfg.w_lex);
    j["w_tfidf"] = round9(cfg.w_tfidf);
    j["w_sem"] = round9(cfg.w_sem);
    j["tau"] = round9(cfg.tau);
    std::vector<std::string> stop;
    if (cfg.stopwords) stop.assign(cfg.stopwords->begin(), cfg.stopwords->end());
    std::sort(stop.begin(), stop.end());
    j["stopwords"] = stop;
    return j;
}

ojson snapshot_to_json(const ConfigSnapshot& snapshot) {
    ojson j;
    j["scorer"] = scorer_to_json(snapshot.scorer);
    j["lexicon_digest"] = snapshot.lexicon_digest;
    return j;
}

ojson ref_to_json(const ParagraphRef& ref) {
    ojson j;
    j["article_id"] = ref.article_id;
    j["index"] = ref.index;
    return j;
}

}  // namespace detail

namespace {

using detail::ojson;
using detail::round9;

ScorerConfig scorer_from_json(const ojson& j) {
    ScorerConfig cfg;
    cfg.shingle_n = j.at("shingle_n").get<int>();
    cfg.w_lex = j.at("w_lex").get<double>();
    cfg.w_tfidf = j.at("w_tfidf").get<double>();
    cfg.w_sem = j.at("w_sem").get<double>();
    cfg.tau = j.at("tau").get<double>();
    if (j.contains("stopwords") && !j.at("stopwords").empty()) {
        StopwordSet stop;
        for (const auto& el : j.at("stopwords")) stop.insert(el.get<std::string>());
        cfg.stopwords = std::move(stop);
    }
    return cfg;
}

ParagraphRef ref_from_json(const ojson& j) {
    return {j.at("article_id").get<std::string>(), j.at("index").get<int>()};
}

Polarity polarity_from_json(const ojson& j, const char* context) {
    Polarity p;
    if (!j.is_string() || !parse_polarity(j.get<std::string>(), p)) {
        throw IntegrityError(std::string("graph: ") + context + " is not one of \"L\",\"C\",\"R\"");
    }
    return p;
}

}  // namespace

const ArticleNode* ReuseGraph::find_article(const std::string& id) const {
    const auto it = article_index_.find(id);
    return it == article_index_.end() ? nullptr : &articles[it->second];
}

const ParagraphNode* ReuseGraph::find_paragraph(const ParagraphRef& ref) const {
    const auto it = paragraph_index_.find(ref);
    return it == paragraph_index_.end() ? nullptr : &paragraphs[it->second];
}

std::size_t ReuseGraph::article_pos(const std::string& id) const {
    const auto it = article_index_.find(id);
    if (it == article_index_.end()) throw InputError("unknown article \"" + id + "\"");
    return it->second;
}

void ReuseGraph::rebuild_index() {
    article_index_.clear();
    paragraph_index_.clear();
    for (std::size_t i = 0; i < articles.size(); ++i) article_index_[articles[i].id] = i;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) paragraph_index_[paragraphs[i].ref] = i;
}

ReuseGraph build_graph(const EventCollection& collection, std::vector<ReuseEdge> edges,
                       const PolarityAssignments& assignments, const ConfigSnapshot& snapshot) {
    ReuseGraph g;
    g.config = snapshot;
    g.corpus_digest = digest_hex(serialize_corpus(collection));

    std::set<ParagraphRef> reused_targets;
    for (const auto& e : edges) reused_targets.insert(e.target);

    for (const auto& a : collection.articles) {
        ArticleNode node;
        node.id = a.id;
        node.outlet = a.outlet;
        node.published_at = a.published_at;
        node.outlet_polarity = a.outlet_polarity.value_or(Polarity::Center);
        const auto content = assignments.article_content.find(a.id);
        if (content == assignments.article_content.end()) {
            throw IntegrityError("graph: no content polarity assigned to article \"" + a.id + "\"");
        }
        node.content_polarity = content->second;
        node.n_paragraphs = static_cast<int>(a.paragraphs.size());
        g.articles.push_back(std::move(node));

        for (const auto& p : a.paragraphs) {
            ParagraphNode pn;
            pn.ref = p.ref();
            pn.text_hash = digest_hex(p.text);
            pn.span_begin = p.span_begin;
            pn.span_end = p.span_end;
            const auto it = assignments.paragraph.find(pn.ref);
            if (it == assignments.paragraph.end()) {
                throw IntegrityError("graph: no content polarity assigned to paragraph " +
                                     to_string(pn.ref));
            }
            pn.content_polarity = it->second.label;
            pn.reused = reused_targets.count(pn.ref) != 0;
            g.paragraphs.push_back(std::move(pn));
        }
    }

    g.edges = std::move(edges);
    g.rebuild_index();
    validate_graph(g);
    return g;
}

void validate_graph(const ReuseGraph& graph) {
    if (graph.schema_version != ReuseGraph::kSchemaVersion) {
        throw IntegrityError("graph: unsupported schema_version " +
                             std::to_string(graph.schema_version));
    }

    std::set<std::string> ids;
    for (std::size_t i = 0; i < graph.articles.size(); ++i) {
        const ArticleNode& a = graph.articles[i];
        if (!ids.insert(a.id).second) {
            throw IntegrityError("graph: duplicate article id \"" + a.id + "\"");
        }
        if (i > 0) {
            const ArticleNode& prev = graph.articles[i - 1];
            if (std::tie(prev.published_at, prev.id) >= std::tie(a.published_at, a.id)) {
                throw IntegrityError("graph: articles not in (published_at, id) order at \"" +
                                     a.id + "\"");
            }
        }
    }

    std::map<std::string, int> para_counts;
    for (const auto& p : graph.paragraphs) {
        const ArticleNode* a = graph.find_article(p.ref.article_id);
        if (a == nullptr) {
            throw IntegrityError("graph: paragraph " + to_string(p.ref) +
                                 " references unknown article");
        }
        if (p.ref.index != para_counts[p.ref.article_id]) {
            throw IntegrityError("graph: paragraph indices of \"" + p.ref.article_id +
                                 "\" are not contiguous");
        }
        ++para_counts[p.ref.article_id];
        if (p.span_begin > p.span_end) {
            throw IntegrityError("graph: paragraph " + to_string(p.ref) + " has invalid span");
        }
    }
    for (const auto& a : graph.articles) {
        if (para_counts[a.id] != a.n_paragraphs) {
            throw IntegrityError("graph: article \"" + a.id + "\" declares " +
                                 std::to_string(a.n_paragraphs) + " paragraphs but carries " +
                                 std::to_string(para_counts[a.id]));
        }
    }

    std::map<ParagraphRef, int> primaries;
    std::set<ParagraphRef> targets;
    for (const auto& e : graph.edges) {
        if (graph.find_paragraph(e.source) == nullptr || graph.find_paragraph(e.target) == nullptr) {
            throw IntegrityError("graph: edge " + to_string(e.source) + " -> " +
                                 to_string(e.target) + " references an unknown paragraph");
        }
        const ArticleNode& src = *graph.find_article(e.source.article_id);
        const ArticleNode& tgt = *graph.find_article(e.target.article_id);
        if (std::tie(src.published_at, src.id) >= std::tie(tgt.published_at, tgt.id)) {
            throw IntegrityError("graph: edge " + to_string(e.source) + " -> " +
                                 to_string(e.target) + " does not go forward in time");
        }
        if (!(e.score >= 0.0 && e.score <= 1.0)) {
            throw IntegrityError("graph: edge score out of [0,1]");
        }
        if (e.score < graph.config.scorer.tau) {
            throw IntegrityError("graph: edge score below threshold tau");
        }
        targets.insert(e.target);
        if (e.is_primary) ++primaries[e.target];
        const ParagraphNode* tp = graph.find_paragraph(e.target);
        if (!tp->reused) {
            throw IntegrityError("graph: paragraph " + to_string(e.target) +
                                 " has incoming edges but is not marked reused");
        }
    }
    for (const auto& t : targets) {
        if (primaries[t] != 1) {
            throw IntegrityError("graph: paragraph " + to_string(t) +
                                 " must have exactly one primary edge");
        }
    }
    for (const auto& p : graph.paragraphs) {
        if (p.reused && targets.count(p.ref) == 0) {
            throw IntegrityError("graph: paragraph " + to_string(p.ref) +
                                 " marked reused without incoming edges");
        }
    }
}

std::string serialize_graph(const ReuseGraph& graph) {
    ojson j;
    j["schema_version"] = graph.schema_version;
    j["config_snapshot"] = detail::snapshot_to_json(graph.config);
    j["corpus_digest"] = graph.corpus_digest;

    auto articles = ojson::array();
    for (const auto& a : graph.articles) {
        ojson ja;
        ja["id"] = a.id;
        ja["outlet"] = a.outlet;
        ja["published_at"] = format_rfc3339(a.published_at);
        ja["outlet_polarity"] = polarity_str(a.outlet_polarity);
        ja["content_polarity"] = polarity_str(a.content_polarity);
        ja["n_paragraphs"] = a.n_paragraphs;
        articles.push_back(std::move(ja));
    }
    j["articles"] = std::move(articles);

    auto paragraphs = ojson::array();
    for (const auto& p : graph.paragraphs) {
        ojson jp;
        jp["article_id"] = p.ref.article_id;
        jp["index"] = p.ref.index;
        jp["text_hash"] = p.text_hash;
        jp["char_span"] = {p.span_begin, p.span_end};
        jp["content_polarity"] = polarity_str(p.content_polarity);
        jp["classification"] = p.reused ? "reused" : "original";
        paragraphs.push_back(std::move(jp));
    }
    j["paragraphs"] = std::move(paragraphs);

    auto edges = ojson::array();
    for (const auto& e : graph.edges) {
        ojson je;
        je["source"] = detail::ref_to_json(e.source);
        je["target"] = detail::ref_to_json(e.target);
        je["score"] = round9(e.score);
        ojson jc;
        jc["lexical"] = round9(e.components.lexical);
        jc["tfidf"] = round9(e.components.tfidf);
        jc["semantic"] = round9(e.components.semantic);
        je["components"] = std::move(jc);
        je["is_primary"] = e.is_primary;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);

    return j.dump(2) + "\n";
}

ReuseGraph deserialize_graph(const std::string& json_text) {
    const ojson j = detail::parse_json(json_text, "graph");
    if (!j.is_object()) throw IntegrityError("graph: expected a JSON object");
    ReuseGraph g;
    try {
        g.schema_version = j.at("schema_version").get<int>();
        if (g.schema_version != ReuseGraph::kSchemaVersion) {
            throw IntegrityError("graph: unsupported schema_version " +
                                 std::to_string(g.schema_version));
        }
        const auto& snap = j.at("config_snapshot");
        g.config.scorer = scorer_from_json(snap.at("scorer"));
        g.config.lexicon_digest = snap.at("lexicon_digest").get<std::string>();
        g.corpus_digest = j.at("corpus_digest").get<std::string>();

        for (const auto& ja : j.at("articles")) {
            ArticleNode a;
            a.id = ja.at("id").get<std::string>();
            a.outlet = ja.at("outlet").get<std::string>();
            const auto ts = parse_rfc3339(ja.at("published_at").get<std::string>());
            if (!ts) throw IntegrityError("graph: unparseable published_at for \"" + a.id + "\"");
            a.published_at = *ts;
            a.outlet_polarity = polarity_from_json(ja.at("outlet_polarity"), "outlet_polarity");
            a.content_polarity = polarity_from_json(ja.at("content_polarity"), "content_polarity");
            a.n_paragraphs = ja.at("n_paragraphs").get<int>();
            g.articles.push_back(std::move(a));
        }
        for (const auto& jp : j.at("paragraphs")) {
            ParagraphNode p;
            p.ref = {jp.at("article_id").get<std::string>(), jp.at("index").get<int>()};
            p.text_hash = jp.at("text_hash").get<std::string>();
            const auto& span = jp.at("char_span");
            if (!span.is_array() || span.size() != 2) {
                throw IntegrityError("graph: char_span must be [begin, end]");
            }
            p.span_begin = span[0].get<std::size_t>();
            p.span_end = span[1].get<std::size_t>();
            p.content_polarity = polarity_from_json(jp.at("content_polarity"), "content_polarity");
            const std::string cls = jp.at("classification").get<std::string>();
            if (cls != "original" && cls != "reused") {
                throw IntegrityError("graph: classification must be \"original\" or \"reused\"");
            }
            p.reused = cls == "reused";
            g.paragraphs.push_back(std::move(p));
        }
        for (const auto& je : j.at("edges")) {
            ReuseEdge e;
            e.source = ref_from_json(je.at("source"));
            e.target = ref_from_json(je.at("target"));
            e.score = je.at("score").get<double>();
            const auto& jc = je.at("components");
            e.components.lexical = jc.at("lexical").get<double>();
            e.components.tfidf = jc.at("tfidf").get<double>();
            e.components.semantic = jc.at("semantic").get<double>();
            e.is_primary = je.at("is_primary").get<bool>();
            g.edges.push_back(std::move(e));
        }
    } catch (const ojson::exception& e) {
        throw IntegrityError(std::string("graph: malformed document: ") + e.what());
    }
    g.rebuild_index();
    validate_graph(g);
    return g;
}

std::vector<ReuseEdge> sources_of(const ReuseGraph& graph, const ParagraphRef& ref) {
    if (graph.find_paragraph(ref) == nullptr) {
        throw InputError("unknown paragraph " + to_string(ref));
    }
    std::vector<ReuseEdge> out;
    for (const auto& e : graph.edges) {
        if (e.target == ref) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [&graph](const ReuseEdge& a, const ReuseEdge& b) {
        if (a.score != b.score) return a.score > b.score;
        const std::size_t pa = graph.article_pos(a.source.article_id);
        const std::size_t pb = graph.article_pos(b.source.article_id);
        return std::tie(pa, a.source.index) < std::tie(pb, b.source.index);
    });
    return out;
}

std::vector<ReuseEdge> reuses_of(const ReuseGraph& graph, const ParagraphRef& ref) {
    if (graph.find_paragraph(ref) == nullptr) {
        throw InputError("unknown paragraph " + to_string(ref));
    }
    std::vector<ReuseEdge> out;
    for (const auto& e : graph.edges) {
        if (e.source == ref) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [&graph](const ReuseEdge& a, const ReuseEdge& b) {
        if (a.score != b.score) return a.score > b.score;
        const std::size_t pa = graph.article_pos(a.target.article_id);
        const std::size_t pb = graph.article_pos(b.target.article_id);
        return std::tie(pa, a.target.index) < std::tie(pb, b.target.index);
    });
    return out;
}

}  // namespace coss
