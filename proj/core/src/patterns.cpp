#include "coss/patterns.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "coss/errors.hpp"
#include "graph_json.hpp"
#include "json_util.hpp"

namespace coss {

namespace {

using detail::ojson;
using detail::round9;

ojson counts_to_json(const PolarityCounts& c) {
    ojson j;
    j["L"] = c.left;
    j["C"] = c.center;
    j["R"] = c.right;
    return j;
}

// target ref -> its unique primary edge
std::map<ParagraphRef, const ReuseEdge*> primary_by_target(const ReuseGraph& graph) {
    std::map<ParagraphRef, const ReuseEdge*> out;
    for (const auto& e : graph.edges) {
        if (e.is_primary) out[e.target] = &e;
    }
    return out;
}

}  // namespace

int& PolarityCounts::by(Polarity p) {
    switch (p) {
        case Polarity::Left: return left;
        case Polarity::Right: return right;
        case Polarity::Center: break;
    }
    return center;
}

int PolarityCounts::by(Polarity p) const {
    switch (p) {
        case Polarity::Left: return left;
        case Polarity::Right: return right;
        case Polarity::Center: break;
    }
    return center;
}

OriginProfile origin_profile(const ReuseGraph& graph, const std::string& article_id) {
    const ArticleNode& article = graph.articles[graph.article_pos(article_id)];
    const auto primaries = primary_by_target(graph);

    OriginProfile profile;
    profile.article_id = article.id;
    profile.n_paragraphs = article.n_paragraphs;
    for (const auto& p : graph.paragraphs) {
        if (p.ref.article_id != article.id) continue;
        if (!p.reused) {
            ++profile.n_original;
            continue;
        }
        ++profile.n_reused;
        const ReuseEdge& primary = *primaries.at(p.ref);
        const ArticleNode* src = graph.find_article(primary.source.article_id);
        ++profile.source_polarity_histogram.by(src->outlet_polarity);
        ++profile.source_outlet_histogram[src->outlet];
    }
    return profile;
}

CommissionStats commission_stats(const ReuseGraph& graph) {
    CommissionStats stats;
    int changed = 0;
    std::map<ParagraphRef, std::int64_t> latest_reuse;  // source ref -> newest reusing publish time
    for (const auto& e : graph.edges) {
        const ParagraphNode* src = graph.find_paragraph(e.source);
        const ParagraphNode* tgt = graph.find_paragraph(e.target);
        if (e.is_primary) ++stats.reuse_count_by_source_polarity.by(src->content_polarity);
        if (src->content_polarity != tgt->content_polarity) ++changed;

        const Timestamp t = graph.find_article(e.target.article_id)->published_at;
        const auto [it, inserted] = latest_reuse.emplace(e.source, t);
        if (!inserted && t > it->second) it->second = t;
    }
    stats.polarity_change_rate =
        graph.edges.empty() ? 0.0 : static_cast<double>(changed) / graph.edges.size();

    for (const auto& [ref, latest] : latest_reuse) {
        const Timestamp born = graph.find_article(ref.article_id)->published_at;
        stats.reuse_lifetime.push_back({ref, latest - born});
    }
    std::sort(stats.reuse_lifetime.begin(), stats.reuse_lifetime.end(),
              [&graph](const LifetimeEntry& a, const LifetimeEntry& b) {
                  const std::size_t pa = graph.article_pos(a.source.article_id);
                  const std::size_t pb = graph.article_pos(b.source.article_id);
                  return std::tie(pa, a.source.index) < std::tie(pb, b.source.index);
              });
    return stats;
}

std::vector<OmissionReport> omission_reports(const ReuseGraph& graph) {
    // (source article, reusing article) -> source indices that were picked up
    std::map<std::pair<std::size_t, std::size_t>, std::set<int>> picked;
    for (const auto& e : graph.edges) {
        picked[{graph.article_pos(e.source.article_id), graph.article_pos(e.target.article_id)}]
            .insert(e.source.index);
    }

    std::vector<OmissionReport> reports;
    for (const auto& [pair, indices] : picked) {
        const ArticleNode& src = graph.articles[pair.first];
        const ArticleNode& reuser = graph.articles[pair.second];
        OmissionReport report;
        report.source_article_id = src.id;
        report.reusing_article_id = reuser.id;
        for (const auto& p : graph.paragraphs) {
            if (p.ref.article_id != src.id || indices.count(p.ref.index) != 0) continue;
            report.omitted.push_back(p.ref);
            ++report.omitted_by_polarity.by(p.content_polarity);
        }
        report.omission_rate =
            src.n_paragraphs == 0
                ? 0.0
                : static_cast<double>(report.omitted.size()) / src.n_paragraphs;
        reports.push_back(std::move(report));
    }
    return reports;  // map iteration already yields (source, reuser) canonical order
}

std::vector<ParagraphRef> never_reused(const ReuseGraph& graph) {
    std::vector<ParagraphRef> out;
    if (graph.articles.empty()) return out;
    std::set<ParagraphRef> sources;
    for (const auto& e : graph.edges) sources.insert(e.source);
    const std::string& newest = graph.articles.back().id;  // articles are (published_at, id) sorted
    for (const auto& p : graph.paragraphs) {
        if (p.ref.article_id == newest) continue;
        if (sources.count(p.ref) == 0) out.push_back(p.ref);
    }
    return out;
}

PatternReport build_pattern_report(const ReuseGraph& graph,
                                   const std::optional<std::string>& article_id) {
    if (article_id) graph.article_pos(*article_id);  // reject unknown ids up front

    PatternReport report;
    report.n_articles = graph.articles.size();
    report.n_paragraphs = graph.paragraphs.size();
    report.n_edges = graph.edges.size();

    for (const auto& a : graph.articles) {
        if (article_id && a.id != *article_id) continue;
        report.profiles.push_back(origin_profile(graph, a.id));
    }
    report.commission = commission_stats(graph);
    report.omissions = omission_reports(graph);
    report.never_reused = coss::never_reused(graph);
    if (article_id) {
        std::erase_if(report.omissions, [&](const OmissionReport& r) {
            return r.source_article_id != *article_id && r.reusing_article_id != *article_id;
        });
        std::erase_if(report.never_reused,
                      [&](const ParagraphRef& r) { return r.article_id != *article_id; });
    }
    return report;
}

std::string serialize_pattern_report(const PatternReport& report, const ReuseGraph& graph) {
    ojson j;
    j["config_snapshot"] = detail::snapshot_to_json(graph.config);
    j["corpus_digest"] = graph.corpus_digest;

    ojson summary;
    summary["n_articles"] = report.n_articles;
    summary["n_paragraphs"] = report.n_paragraphs;
    summary["n_edges"] = report.n_edges;
    j["summary"] = std::move(summary);

    auto profiles = ojson::array();
    for (const auto& p : report.profiles) {
        ojson jp;
        jp["article_id"] = p.article_id;
        jp["n_paragraphs"] = p.n_paragraphs;
        jp["n_original"] = p.n_original;
        jp["n_reused"] = p.n_reused;
        jp["source_polarity_histogram"] = counts_to_json(p.source_polarity_histogram);
        ojson outlets;
        for (const auto& [outlet, n] : p.source_outlet_histogram) outlets[outlet] = n;
        jp["source_outlet_histogram"] = std::move(outlets);
        profiles.push_back(std::move(jp));
    }
    j["profiles"] = std::move(profiles);

    ojson commission;
    commission["reuse_count_by_source_polarity"] =
        counts_to_json(report.commission.reuse_count_by_source_polarity);
    commission["polarity_change_rate"] = round9(report.commission.polarity_change_rate);
    auto lifetimes = ojson::array();
    for (const auto& entry : report.commission.reuse_lifetime) {
        ojson je;
        je["source"] = detail::ref_to_json(entry.source);
        je["seconds"] = entry.seconds;
        lifetimes.push_back(std::move(je));
    }
    commission["reuse_lifetime"] = std::move(lifetimes);
    j["commission"] = std::move(commission);

    auto omissions = ojson::array();
    for (const auto& o : report.omissions) {
        ojson jo;
        jo["source_article_id"] = o.source_article_id;
        jo["reusing_article_id"] = o.reusing_article_id;
        auto omitted = ojson::array();
        for (const auto& ref : o.omitted) omitted.push_back(detail::ref_to_json(ref));
        jo["omitted"] = std::move(omitted);
        jo["omitted_by_polarity"] = counts_to_json(o.omitted_by_polarity);
        jo["omission_rate"] = round9(o.omission_rate);
        omissions.push_back(std::move(jo));
    }
    j["omissions"] = std::move(omissions);

    auto never = ojson::array();
    for (const auto& ref : report.never_reused) never.push_back(detail::ref_to_json(ref));
    j["never_reused"] = std::move(never);

    return j.dump(2) + "\n";
}

std::string format_pattern_report_table(const PatternReport& report) {
    std::ostringstream out;
    char line[256];

    out << "articles: " << report.n_articles << "  paragraphs: " << report.n_paragraphs
        << "  edges: " << report.n_edges << "\n\n";

    out << "origin profiles\n";
    std::snprintf(line, sizeof(line), "  %-16s %10s %9s %7s  %s\n", "article", "paragraphs",
                  "original", "reused", "sources L/C/R");
    out << line;
    for (const auto& p : report.profiles) {
        const auto& h = p.source_polarity_histogram;
        std::snprintf(line, sizeof(line), "  %-16s %10d %9d %7d  %d/%d/%d\n", p.article_id.c_str(),
                      p.n_paragraphs, p.n_original, p.n_reused, h.left, h.center, h.right);
        out << line;
    }

    out << "\ncommission\n";
    const auto& c = report.commission.reuse_count_by_source_polarity;
    std::snprintf(line, sizeof(line), "  reuse by source polarity L/C/R: %d/%d/%d\n", c.left,
                  c.center, c.right);
    out << line;
    std::snprintf(line, sizeof(line), "  polarity change rate: %.4f\n",
                  report.commission.polarity_change_rate);
    out << line;
    out << "  reuse lifetime\n";
    for (const auto& entry : report.commission.reuse_lifetime) {
        std::snprintf(line, sizeof(line), "    %-16s %lld s\n", to_string(entry.source).c_str(),
                      static_cast<long long>(entry.seconds));
        out << line;
    }

    out << "\nomissions\n";
    for (const auto& o : report.omissions) {
        const auto& h = o.omitted_by_polarity;
        std::snprintf(line, sizeof(line), "  %s -> %s: %zu omitted (L/C/R %d/%d/%d), rate %.4f\n",
                      o.source_article_id.c_str(), o.reusing_article_id.c_str(), o.omitted.size(),
                      h.left, h.center, h.right, o.omission_rate);
        out << line;
    }

    out << "\nnever reused\n";
    for (const auto& ref : report.never_reused) out << "  " << to_string(ref) << "\n";
    return out.str();
}

}  // namespace coss
