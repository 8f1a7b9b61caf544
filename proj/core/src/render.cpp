#include "coss/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "coss/time.hpp"

namespace coss {

namespace {

constexpr int kMarginX = 24;
constexpr int kMarginTop = 96;
constexpr int kMarginBottom = 24;
constexpr int kBoxW = 132;
constexpr int kBoxH = 34;
constexpr int kBoxPitch = 46;
constexpr int kColPitch = 184;

std::string esc(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v, int precision) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

const std::string& polarity_color(Polarity p, const RenderOptions& options) {
    switch (p) {
        case Polarity::Left: return options.color_left;
        case Polarity::Right: return options.color_right;
        case Polarity::Center: break;
    }
    return options.color_center;
}

}  // namespace

LayoutModel layout_graph(const ReuseGraph& graph) {
    LayoutModel model;
    int max_rows = 0;
    for (std::size_t i = 0; i < graph.articles.size(); ++i) {
        model.columns.push_back({graph.articles[i].id, kMarginX + static_cast<int>(i) * kColPitch});
        max_rows = std::max(max_rows, graph.articles[i].n_paragraphs);
    }
    for (const auto& p : graph.paragraphs) {
        const std::size_t col = graph.article_pos(p.ref.article_id);
        model.boxes.push_back({p.ref, model.columns[col].x, kMarginTop + p.ref.index * kBoxPitch,
                               kBoxW, kBoxH});
    }
    const int n_cols = static_cast<int>(model.columns.size());
    model.width = n_cols == 0 ? 2 * kMarginX : 2 * kMarginX + (n_cols - 1) * kColPitch + kBoxW;
    model.height = kMarginTop + kMarginBottom +
                   (max_rows == 0 ? 0 : (max_rows - 1) * kBoxPitch + kBoxH);
    return model;
}

std::string render_html(const ReuseGraph& graph, const RenderOptions& options) {
    const LayoutModel model = layout_graph(graph);
    std::map<ParagraphRef, const BoxLayout*> box_of;
    for (const auto& b : model.boxes) box_of[b.ref] = &b;

    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>"
        << esc(options.title) << "</title>\n<style>\n"
        << "body { font-family: system-ui, sans-serif; margin: 24px; color: #222; }\n"
        << "h1 { font-size: 20px; }\n"
        << ".legend { font-size: 13px; margin-bottom: 12px; }\n"
        << ".legend .swatch { display: inline-block; width: 12px; height: 12px;"
        << " margin: 0 4px 0 12px; vertical-align: -1px; }\n"
        << "svg { border: 1px solid #ddd; background: #fff; }\n"
        << "</style>\n</head>\n<body>\n"
        << "<h1>" << esc(options.title) << "</h1>\n"
        << "<p class=\"legend\">"
        << "<span class=\"swatch\" style=\"background:" << esc(options.color_left)
        << "\"></span>left"
        << "<span class=\"swatch\" style=\"background:" << esc(options.color_center)
        << "\"></span>center"
        << "<span class=\"swatch\" style=\"background:" << esc(options.color_right)
        << "\"></span>right"
        << " &mdash; solid arrow: primary source; dashed: additional match</p>\n";

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << model.width << "\" height=\""
        << model.height << "\" viewBox=\"0 0 " << model.width << " " << model.height << "\">\n"
        << "<defs>\n<marker id=\"arrowhead\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\""
        << " markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
        << "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#555\"/></marker>\n</defs>\n";

    for (std::size_t i = 0; i < graph.articles.size(); ++i) {
        const ArticleNode& a = graph.articles[i];
        const int x = model.columns[i].x;
        out << "<g class=\"column\" data-article=\"" << esc(a.id) << "\">\n"
            << "<text x=\"" << x << "\" y=\"28\" font-size=\"13\" font-weight=\"bold\">"
            << esc(a.outlet) << " (" << polarity_letter(a.outlet_polarity) << ")</text>\n"
            << "<text x=\"" << x << "\" y=\"46\" font-size=\"12\">" << esc(a.id) << "</text>\n"
            << "<text x=\"" << x << "\" y=\"62\" font-size=\"11\" fill=\"#666\">"
            << format_rfc3339(a.published_at) << "</text>\n"
            << "</g>\n";
    }

    for (const auto& e : graph.edges) {
        const BoxLayout& src = *box_of.at(e.source);
        const BoxLayout& tgt = *box_of.at(e.target);
        const double sx = src.x + src.w;
        const double sy = src.y + src.h / 2.0;
        const double tx = tgt.x;
        const double ty = tgt.y + tgt.h / 2.0;
        const double bend = (tx - sx) * 0.4;
        const double width = options.show_scores ? 0.8 + 2.8 * e.score : 1.6;

        const ParagraphNode& sp = *graph.find_paragraph(e.source);
        const ParagraphNode& tp = *graph.find_paragraph(e.target);
        out << "<path class=\"edge\" data-edge=\"" << esc(to_string(e.source)) << "->"
            << esc(to_string(e.target)) << "\" data-primary=\"" << (e.is_primary ? "true" : "false")
            << "\" d=\"M " << fmt(sx, 1) << " " << fmt(sy, 1) << " C " << fmt(sx + bend, 1) << " "
            << fmt(sy, 1) << ", " << fmt(tx - bend, 1) << " " << fmt(ty, 1) << ", " << fmt(tx, 1)
            << " " << fmt(ty, 1) << "\" fill=\"none\" stroke=\"#555\" stroke-width=\""
            << fmt(width, 2) << "\"";
        if (e.is_primary) {
            out << " marker-end=\"url(#arrowhead)\"";
        } else {
            out << " stroke-dasharray=\"5 4\"";
        }
        out << "><title>" << esc(to_string(e.source)) << " &#8594; " << esc(to_string(e.target))
            << " | score " << fmt(e.score, 3) << " | lexical " << fmt(e.components.lexical, 3)
            << ", tfidf " << fmt(e.components.tfidf, 3) << ", semantic "
            << fmt(e.components.semantic, 3) << " | polarity "
            << polarity_letter(sp.content_polarity) << "&#8594;"
            << polarity_letter(tp.content_polarity) << "</title></path>\n";
    }

    for (const auto& b : model.boxes) {
        const ParagraphNode& p = *graph.find_paragraph(b.ref);
        out << "<g class=\"para\" data-para=\"" << esc(to_string(b.ref)) << "\">\n"
            << "<rect x=\"" << b.x << "\" y=\"" << b.y << "\" width=\"" << b.w << "\" height=\""
            << b.h << "\" rx=\"4\" fill=\"" << esc(polarity_color(p.content_polarity, options))
            << "\" stroke=\"#333\" stroke-width=\"0.5\">"
            << "<title>" << esc(to_string(b.ref)) << " ("
            << (p.reused ? "reused" : "original") << ", polarity "
            << polarity_letter(p.content_polarity) << ")</title></rect>\n"
            << "<text x=\"" << b.x + b.w / 2 << "\" y=\"" << b.y + b.h / 2 + 4
            << "\" font-size=\"12\" fill=\"#fff\" text-anchor=\"middle\">P" << b.ref.index + 1
            << "</text>\n"
            << "</g>\n";
    }

    out << "</svg>\n</body>\n</html>\n";
    return out.str();
}

}  // namespace coss
