#pragma once

#include <string>
#include <vector>

#include "coss/reuse_graph.hpp"
#include "coss/types.hpp"

namespace coss {

struct RenderOptions {
    std::string color_left = "#3b6fd4";
    std::string color_center = "#9e9e9e";
    std::string color_right = "#d43b3b";
    bool show_scores = false;  // scale edge stroke width by score
    std::string title = "Reuse timeline";
};

/// Pixel geometry of the timeline: one column per article (left to right in
/// publication order), one box per paragraph.
struct BoxLayout {
    ParagraphRef ref;
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

struct ColumnLayout {
    std::string article_id;
    int x = 0;
};

struct LayoutModel {
    int width = 0;
    int height = 0;
    std::vector<ColumnLayout> columns;  // same order as graph.articles
    std::vector<BoxLayout> boxes;       // same order as graph.paragraphs
};

LayoutModel layout_graph(const ReuseGraph& graph);

/// Self-contained HTML page with an inline SVG timeline. Primary edges are
/// solid arrows; secondary edges are dashed lines without arrowheads. Byte
/// output depends only on the graph and options.
std::string render_html(const ReuseGraph& graph, const RenderOptions& options = {});

}  // namespace coss
