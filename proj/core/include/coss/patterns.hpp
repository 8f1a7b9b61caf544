#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coss/reuse_graph.hpp"
#include "coss/types.hpp"

namespace coss {

/// Counts per polarity value; serialized as {"L": n, "C": n, "R": n}.
struct PolarityCounts {
    int left = 0;
    int center = 0;
    int right = 0;

    int& by(Polarity p);
    int by(Polarity p) const;
    int total() const { return left + center + right; }

    friend bool operator==(const PolarityCounts&, const PolarityCounts&) = default;
};

/// Where an article's content comes from: original vs reused paragraph
/// counts plus, over primary sources only, the outlet-polarity and outlet
/// histograms of those sources.
struct OriginProfile {
    std::string article_id;
    int n_paragraphs = 0;
    int n_original = 0;
    int n_reused = 0;
    PolarityCounts source_polarity_histogram;        // outlet polarity of primary source article
    std::map<std::string, int> source_outlet_histogram;

    friend bool operator==(const OriginProfile&, const OriginProfile&) = default;
};

/// How long a source paragraph keeps being reused after publication.
struct LifetimeEntry {
    ParagraphRef source;
    std::int64_t seconds = 0;  // source publish time to latest reusing publish time

    friend bool operator==(const LifetimeEntry&, const LifetimeEntry&) = default;
};

/// Collection-level reuse statistics: what gets reused (by content polarity
/// of the source paragraph, primary edges only), how often polarity changes
/// along edges (all edges), and for how long sources keep being reused.
struct CommissionStats {
    PolarityCounts reuse_count_by_source_polarity;
    double polarity_change_rate = 0.0;  // changed edges / total edges, 0 when no edges
    std::vector<LifetimeEntry> reuse_lifetime;  // canonical source order

    friend bool operator==(const CommissionStats&, const CommissionStats&) = default;
};

/// For one (source article, reusing article) pair connected by at least one
/// edge: which source paragraphs the reuser did not pick up.
struct OmissionReport {
    std::string source_article_id;
    std::string reusing_article_id;
    std::vector<ParagraphRef> omitted;   // source paragraphs with no edge into the reuser
    PolarityCounts omitted_by_polarity;  // content polarity of the omitted source paragraphs
    double omission_rate = 0.0;          // |omitted| / n_source_paragraphs

    friend bool operator==(const OmissionReport&, const OmissionReport&) = default;
};

OriginProfile origin_profile(const ReuseGraph& graph, const std::string& article_id);

CommissionStats commission_stats(const ReuseGraph& graph);

/// One report per connected (source, reuser) article pair, ordered by
/// (source, reuser) canonical article order.
std::vector<OmissionReport> omission_reports(const ReuseGraph& graph);

/// Paragraphs with zero outgoing edges whose article precedes the newest
/// article in (published_at, id) order. The newest article's paragraphs are
/// excluded: nothing later exists that could have reused them.
std::vector<ParagraphRef> never_reused(const ReuseGraph& graph);

/// Everything the analyze stage emits, per collection and per article.
struct PatternReport {
    std::vector<OriginProfile> profiles;
    CommissionStats commission;
    std::vector<OmissionReport> omissions;
    std::vector<ParagraphRef> never_reused;
    std::size_t n_articles = 0;
    std::size_t n_paragraphs = 0;
    std::size_t n_edges = 0;
};

/// Profiles every article, or only `article_id` when given.
PatternReport build_pattern_report(const ReuseGraph& graph,
                                   const std::optional<std::string>& article_id = std::nullopt);

/// Canonical JSON (same float/key conventions as the graph file), embedding
/// the graph's config snapshot and corpus digest.
std::string serialize_pattern_report(const PatternReport& report, const ReuseGraph& graph);

/// Plain-text rendering with aligned columns.
std::string format_pattern_report_table(const PatternReport& report);

}  // namespace coss
