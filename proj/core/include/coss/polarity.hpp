#pragma once

#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coss/alignment.hpp"
#include "coss/corpus.hpp"
#include "coss/types.hpp"

namespace coss {

/// Cue-word classifier configuration. Stand-in for a trained polarity model;
/// sits behind classify_text so a model-backed classifier can replace it.
struct PolarityLexicon {
    std::unordered_set<std::string> left_cues;
    std::unordered_set<std::string> right_cues;
    double margin = 0.0005;  // cues per token

    bool empty() const { return left_cues.empty() && right_cues.empty(); }

    /// Swapped-cue-set view; classify_text is antisymmetric under it.
    PolarityLexicon mirrored() const { return {right_cues, left_cues, margin}; }
};

/// Parses {"left": [...], "right": [...], "margin": n}. Cues are lowercased
/// and must be single tokens; the two sets must be disjoint.
/// Throws ConfigError on violations.
PolarityLexicon parse_lexicon(const std::string& json_text);

/// Digest over the canonical lexicon content, for graph config snapshots.
std::string lexicon_digest(const PolarityLexicon& lexicon);

/// Outlet name (case-folded) to polarity. Loaded from a JSON object
/// {"Outlet Name": "L|C|R", ...}.
struct OutletMap {
    std::unordered_map<std::string, Polarity> by_outlet;  // keys case-folded
};

OutletMap parse_outlet_map(const std::string& json_text);

/// Case-insensitive lookup; unmapped outlets default to Center.
/// `known` reports whether the outlet was actually in the map.
Polarity outlet_polarity(const std::string& outlet, const OutletMap& map, bool* known = nullptr);

/// Fills Article::outlet_polarity for every article that does not already
/// carry one from the corpus file. Returns one warning per unmapped outlet.
std::vector<std::string> assign_outlet_polarities(EventCollection& collection,
                                                  const OutletMap& map);

struct PolarityScore {
    Polarity label = Polarity::Center;
    double score = 0.0;  // (left cues - right cues) / tokens; positive = left

    friend bool operator==(const PolarityScore&, const PolarityScore&) = default;
};

/// score = (left cue count - right cue count) / token count over tokenize()
/// output; label L if score > margin, R if score < -margin, else C.
/// Empty or token-free text classifies as (C, 0).
PolarityScore classify_text(std::string_view text, const PolarityLexicon& lexicon);

/// Content polarity for every paragraph plus the per-article majority label
/// (ties resolve to Center). Outlet polarity is never touched.
struct PolarityAssignments {
    std::map<ParagraphRef, PolarityScore> paragraph;
    std::map<std::string, Polarity> article_content;
};

PolarityAssignments relabel_collection(const EventCollection& collection,
                                       const PolarityLexicon& lexicon);

/// Polarity comparison along one reuse edge.
struct DriftRecord {
    ParagraphRef source;
    ParagraphRef target;
    Polarity source_polarity = Polarity::Center;
    Polarity target_polarity = Polarity::Center;
    bool changed = false;

    friend bool operator==(const DriftRecord&, const DriftRecord&) = default;
};

/// One record per edge, in edge order. Throws IntegrityError when an edge
/// references a paragraph missing from the assignments.
std::vector<DriftRecord> polarity_drift(std::span<const ReuseEdge> edges,
                                        const PolarityAssignments& assignments);

}  // namespace coss
