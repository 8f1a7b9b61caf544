#include "coss/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "coss/errors.hpp"
#include "json_util.hpp"

namespace coss {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), is_space);
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

void sort_canonical(EventCollection& c) {
    std::sort(c.articles.begin(), c.articles.end(), [](const Article& a, const Article& b) {
        return std::tie(a.published_at, a.id) < std::tie(b.published_at, b.id);
    });
}

// Builds the paragraph list for an article from explicitly provided texts.
// Empty-after-trim entries are dropped; the body is the blank-line join of
// what remains, so spans stay faithful.
void set_paragraphs(Article& article, const std::vector<std::string>& texts) {
    article.paragraphs.clear();
    std::string body;
    for (const auto& raw : texts) {
        std::string text = trim(raw);
        if (text.empty()) continue;
        if (!body.empty()) body += "\n\n";
        Paragraph p;
        p.article_id = article.id;
        p.index = static_cast<int>(article.paragraphs.size());
        p.span_begin = body.size();
        body += text;
        p.span_end = body.size();
        p.text = std::move(text);
        article.paragraphs.push_back(std::move(p));
    }
    article.body = std::move(body);
}

Article parse_article_line(const detail::ojson& j) {
    if (!j.is_object()) throw InputError("line is not a JSON object");
    Article a;
    for (const char* key : {"id", "outlet", "title", "published_at"}) {
        if (!j.contains(key)) throw InputError(std::string("missing required key \"") + key + "\"");
        if (!j[key].is_string()) throw InputError(std::string("key \"") + key + "\" must be a string");
    }
    a.id = j["id"].get<std::string>();
    if (a.id.empty()) throw InputError("key \"id\" must be non-empty");
    a.outlet = j["outlet"].get<std::string>();
    a.title = j["title"].get<std::string>();
    const auto ts = parse_rfc3339(j["published_at"].get<std::string>());
    if (!ts) {
        throw InputError("unparseable timestamp \"" + j["published_at"].get<std::string>() + "\"");
    }
    a.published_at = *ts;

    if (j.contains("url")) {
        if (!j["url"].is_string()) throw InputError("key \"url\" must be a string");
        a.url = j["url"].get<std::string>();
    }
    if (j.contains("outlet_polarity")) {
        if (!j["outlet_polarity"].is_string()) {
            throw InputError("key \"outlet_polarity\" must be \"L\", \"C\" or \"R\"");
        }
        Polarity p;
        if (!parse_polarity(j["outlet_polarity"].get<std::string>(), p)) {
            throw InputError("key \"outlet_polarity\" must be \"L\", \"C\" or \"R\"");
        }
        a.outlet_polarity = p;
    }

    if (j.contains("paragraphs")) {
        if (!j["paragraphs"].is_array()) throw InputError("key \"paragraphs\" must be an array");
        std::vector<std::string> texts;
        for (const auto& el : j["paragraphs"]) {
            if (!el.is_string()) throw InputError("key \"paragraphs\" must contain only strings");
            texts.push_back(el.get<std::string>());
        }
        set_paragraphs(a, texts);
    } else if (j.contains("body")) {
        if (!j["body"].is_string()) throw InputError("key \"body\" must be a string");
        a.body = j["body"].get<std::string>();
        for (const auto& block : segment_paragraphs(a.body)) {
            Paragraph p;
            p.article_id = a.id;
            p.index = static_cast<int>(a.paragraphs.size());
            p.text = block.text;
            p.span_begin = block.begin;
            p.span_end = block.end;
            a.paragraphs.push_back(std::move(p));
        }
    } else {
        throw InputError("missing required key \"body\" (or \"paragraphs\")");
    }
    return a;
}

}  // namespace

const Article* EventCollection::find_article(const std::string& id) const {
    for (const auto& a : articles) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

std::size_t EventCollection::paragraph_count() const {
    std::size_t n = 0;
    for (const auto& a : articles) n += a.paragraphs.size();
    return n;
}

std::vector<TextBlock> segment_paragraphs(std::string_view body) {
    std::vector<TextBlock> blocks;
    size_t pos = 0;
    size_t block_begin = std::string_view::npos;
    size_t block_end = 0;

    auto close_block = [&] {
        if (block_begin == std::string_view::npos) return;
        // Trim the block to its non-whitespace extent.
        size_t b = block_begin, e = block_end;
        while (b < e && is_space(body[b])) ++b;
        while (e > b && is_space(body[e - 1])) --e;
        if (e > b) {
            blocks.push_back({std::string(body.substr(b, e - b)), b, e});
        }
        block_begin = std::string_view::npos;
    };

    while (pos <= body.size()) {
        size_t eol = body.find('\n', pos);
        const size_t line_end = (eol == std::string_view::npos) ? body.size() : eol;
        const std::string_view line = body.substr(pos, line_end - pos);
        if (is_blank(line)) {
            close_block();
        } else {
            if (block_begin == std::string_view::npos) block_begin = pos;
            block_end = line_end;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    close_block();
    return blocks;
}

ParseResult parse_corpus(std::istream& in, bool strict) {
    ParseResult result;
    std::set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        try {
            detail::ojson j = detail::ojson::parse(line, nullptr, false);
            if (j.is_discarded()) throw InputError("malformed JSON");
            Article a = parse_article_line(j);
            if (!seen_ids.insert(a.id).second) {
                throw InputError("duplicate article id \"" + a.id + "\"");
            }
            result.collection.articles.push_back(std::move(a));
        } catch (const InputError& e) {
            if (strict) {
                throw InputError("corpus line " + std::to_string(line_no) + ": " + e.what());
            }
            result.issues.push_back({line_no, e.what()});
        }
    }
    sort_canonical(result.collection);
    return result;
}

ParseResult parse_corpus(const std::string& text, bool strict) {
    std::istringstream in(text);
    return parse_corpus(in, strict);
}

ParseResult parse_corpus_file(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open corpus file: " + path);
    return parse_corpus(in, strict);
}

std::string serialize_corpus(const EventCollection& collection) {
    std::string out;
    for (const auto& a : collection.articles) {
        detail::ojson j;
        j["id"] = a.id;
        j["outlet"] = a.outlet;
        if (a.url) j["url"] = *a.url;
        j["title"] = a.title;
        j["published_at"] = format_rfc3339(a.published_at);
        if (a.outlet_polarity) j["outlet_polarity"] = polarity_str(*a.outlet_polarity);
        auto paras = detail::ojson::array();
        for (const auto& p : a.paragraphs) paras.push_back(p.text);
        j["paragraphs"] = std::move(paras);
        out += j.dump();
        out += '\n';
    }
    return out;
}

ValidationReport validate(const EventCollection& collection) {
    ValidationReport report;
    report.n_articles = collection.articles.size();
    if (collection.articles.empty()) {
        report.errors.push_back("collection contains no articles");
        return report;
    }

    std::set<std::string> ids;
    const Article* prev = nullptr;
    bool first = true;
    for (const auto& a : collection.articles) {
        if (!ids.insert(a.id).second) {
            report.errors.push_back("duplicate article id \"" + a.id + "\"");
        }
        if (prev != nullptr &&
            std::tie(prev->published_at, prev->id) > std::tie(a.published_at, a.id)) {
            report.errors.push_back("articles not in (published_at, id) order at \"" + a.id + "\"");
        }
        prev = &a;
        if (first || a.published_at < report.time_start) report.time_start = a.published_at;
        if (first || a.published_at > report.time_end) report.time_end = a.published_at;
        first = false;

        if (a.paragraphs.empty()) {
            report.warnings.push_back("article \"" + a.id + "\" has no paragraphs");
        }
        int expect = 0;
        for (const auto& p : a.paragraphs) {
            ++report.n_paragraphs;
            if (p.article_id != a.id) {
                report.errors.push_back("paragraph of \"" + a.id + "\" carries article_id \"" +
                                        p.article_id + "\"");
            }
            if (p.index != expect) {
                report.errors.push_back("article \"" + a.id + "\" paragraph indices have gaps at " +
                                        std::to_string(p.index));
            }
            ++expect;
            if (trim(p.text).empty() || trim(p.text) != p.text) {
                report.errors.push_back("paragraph " + to_string(p.ref()) +
                                        " text is empty or untrimmed");
            }
            if (p.span_end > a.body.size() || p.span_begin > p.span_end ||
                a.body.substr(p.span_begin, p.span_end - p.span_begin) != p.text) {
                report.errors.push_back("paragraph " + to_string(p.ref()) +
                                        " char span does not reproduce its text");
            }
        }
    }
    return report;
}

}  // namespace coss
