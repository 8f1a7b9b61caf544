#pragma once

#include <cstdint>
#include <string>
#include <tuple>

namespace coss {

/// Seconds since the Unix epoch, UTC. Second precision throughout.
using Timestamp = std::int64_t;

/// Coarse political slant of an outlet or a piece of text.
enum class Polarity { Left, Center, Right };

inline char polarity_letter(Polarity p) {
    switch (p) {
    case Polarity::Left: return 'L';
    case Polarity::Right: return 'R';
    default: return 'C';
    }
}

inline std::string polarity_str(Polarity p) { return std::string(1, polarity_letter(p)); }

/// Parses "L"/"C"/"R". Returns false on anything else.
inline bool parse_polarity(const std::string& s, Polarity& out) {
    if (s == "L") { out = Polarity::Left; return true; }
    if (s == "C") { out = Polarity::Center; return true; }
    if (s == "R") { out = Polarity::Right; return true; }
    return false;
}

/// Identifies one paragraph of one article.
struct ParagraphRef {
    std::string article_id;
    int index = 0;

    friend bool operator==(const ParagraphRef&, const ParagraphRef&) = default;
    friend auto operator<=>(const ParagraphRef& a, const ParagraphRef& b) {
        return std::tie(a.article_id, a.index) <=> std::tie(b.article_id, b.index);
    }
};

inline std::string to_string(const ParagraphRef& r) {
    return r.article_id + ":" + std::to_string(r.index);
}

}  // namespace coss
