#include "coss/polarity.hpp"

#include <algorithm>

#include "coss/digest.hpp"
#include "coss/errors.hpp"
#include "coss/tokenize.hpp"
#include "json_util.hpp"

namespace coss {

namespace {

std::unordered_set<std::string> parse_cue_set(const detail::ojson& j, const char* side) {
    std::unordered_set<std::string> cues;
    if (!j.is_array()) {
        throw ConfigError(std::string("lexicon: \"") + side + "\" must be an array of words");
    }
    for (const auto& el : j) {
        if (!el.is_string()) {
            throw ConfigError(std::string("lexicon: \"") + side + "\" must contain only strings");
        }
        const auto tokens = tokenize(el.get<std::string>());
        if (tokens.size() != 1) {
            throw ConfigError("lexicon: cue \"" + el.get<std::string>() +
                              "\" is not a single word token");
        }
        cues.insert(tokens[0]);
    }
    return cues;
}

}  // namespace

PolarityLexicon parse_lexicon(const std::string& json_text) {
    const auto j = detail::parse_json(json_text, "lexicon");
    if (!j.is_object()) throw ConfigError("lexicon: expected a JSON object");
    PolarityLexicon lex;
    if (j.contains("left")) lex.left_cues = parse_cue_set(j["left"], "left");
    if (j.contains("right")) lex.right_cues = parse_cue_set(j["right"], "right");
    if (j.contains("margin")) {
        if (!j["margin"].is_number()) throw ConfigError("lexicon: \"margin\" must be a number");
        lex.margin = j["margin"].get<double>();
        if (lex.margin < 0.0) throw ConfigError("lexicon: \"margin\" must be >= 0");
    }
    for (const auto& cue : lex.left_cues) {
        if (lex.right_cues.count(cue) != 0) {
            throw ConfigError("lexicon: cue \"" + cue + "\" appears in both sets");
        }
    }
    return lex;
}

std::string lexicon_digest(const PolarityLexicon& lexicon) {
    std::vector<std::string> left(lexicon.left_cues.begin(), lexicon.left_cues.end());
    std::vector<std::string> right(lexicon.right_cues.begin(), lexicon.right_cues.end());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    detail::ojson j;
    j["left"] = left;
    j["right"] = right;
    j["margin"] = detail::round9(lexicon.margin);
    return digest_hex(j.dump());
}

OutletMap parse_outlet_map(const std::string& json_text) {
    const auto j = detail::parse_json(json_text, "outlet map");
    if (!j.is_object()) throw ConfigError("outlet map: expected a JSON object");
    OutletMap map;
    for (const auto& [outlet, value] : j.items()) {
        Polarity p;
        if (!value.is_string() || !parse_polarity(value.get<std::string>(), p)) {
            throw ConfigError("outlet map: \"" + outlet + "\" must map to \"L\", \"C\" or \"R\"");
        }
        map.by_outlet[fold_case(outlet)] = p;
    }
    return map;
}

Polarity outlet_polarity(const std::string& outlet, const OutletMap& map, bool* known) {
    const auto it = map.by_outlet.find(fold_case(outlet));
    if (it == map.by_outlet.end()) {
        if (known != nullptr) *known = false;
        return Polarity::Center;
    }
    if (known != nullptr) *known = true;
    return it->second;
}

std::vector<std::string> assign_outlet_polarities(EventCollection& collection,
                                                  const OutletMap& map) {
    std::vector<std::string> warnings;
    for (auto& article : collection.articles) {
        if (article.outlet_polarity) continue;  // explicit corpus value wins
        bool known = false;
        article.outlet_polarity = outlet_polarity(article.outlet, map, &known);
        if (!known) {
            warnings.push_back("outlet \"" + article.outlet +
                               "\" not in outlet map; defaulting to C (article \"" + article.id +
                               "\")");
        }
    }
    return warnings;
}

PolarityScore classify_text(std::string_view text, const PolarityLexicon& lexicon) {
    const auto tokens = tokenize(text);
    if (tokens.empty()) return {Polarity::Center, 0.0};
    int left = 0, right = 0;
    for (const auto& t : tokens) {
        if (lexicon.left_cues.count(t) != 0) ++left;
        if (lexicon.right_cues.count(t) != 0) ++right;
    }
    const double score = static_cast<double>(left - right) / static_cast<double>(tokens.size());
    Polarity label = Polarity::Center;
    if (score > lexicon.margin) label = Polarity::Left;
    if (score < -lexicon.margin) label = Polarity::Right;
    return {label, score};
}

PolarityAssignments relabel_collection(const EventCollection& collection,
                                       const PolarityLexicon& lexicon) {
    PolarityAssignments out;
    for (const auto& article : collection.articles) {
        int counts[3] = {0, 0, 0};
        for (const auto& p : article.paragraphs) {
            const PolarityScore s = classify_text(p.text, lexicon);
            out.paragraph.emplace(p.ref(), s);
            ++counts[static_cast<int>(s.label)];
        }
        // Majority label; any tie for the maximum resolves to Center.
        const int max_count = std::max({counts[0], counts[1], counts[2]});
        Polarity article_label = Polarity::Center;
        int winners = 0;
        for (const Polarity p : {Polarity::Left, Polarity::Center, Polarity::Right}) {
            if (counts[static_cast<int>(p)] == max_count) {
                ++winners;
                article_label = p;
            }
        }
        if (winners != 1 || max_count == 0) article_label = Polarity::Center;
        out.article_content.emplace(article.id, article_label);
    }
    return out;
}

std::vector<DriftRecord> polarity_drift(std::span<const ReuseEdge> edges,
                                        const PolarityAssignments& assignments) {
    std::vector<DriftRecord> records;
    records.reserve(edges.size());
    for (const auto& e : edges) {
        const auto src = assignments.paragraph.find(e.source);
        const auto tgt = assignments.paragraph.find(e.target);
        if (src == assignments.paragraph.end() || tgt == assignments.paragraph.end()) {
            throw IntegrityError("drift: edge " + to_string(e.source) + " -> " +
                                 to_string(e.target) + " references an unlabeled paragraph");
        }
        DriftRecord r;
        r.source = e.source;
        r.target = e.target;
        r.source_polarity = src->second.label;
        r.target_polarity = tgt->second.label;
        r.changed = r.source_polarity != r.target_polarity;
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace coss
