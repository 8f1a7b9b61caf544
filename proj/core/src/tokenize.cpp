#include "coss/tokenize.hpp"

#include <cstdint>

namespace coss {

namespace {

// Decodes one UTF-8 codepoint at s[i]. Advances i past the sequence.
// Returns 0xFFFFFFFF on invalid bytes (consumes exactly one byte then).
std::uint32_t decode_utf8(std::string_view s, size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFFFFFF;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFFFFFF;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFFFFFF;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_word_codepoint(std::uint32_t cp) {
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    if (cp == 0xFFFFFFFF) return false;
    // Known punctuation / symbol / separator ranges; everything else above
    // ASCII is treated as letter-like.
    if (cp >= 0xA0 && cp <= 0xBF) return false;       // Latin-1 punctuation and signs
    if (cp == 0xD7 || cp == 0xF7) return false;       // multiplication / division signs
    if (cp >= 0x2000 && cp <= 0x206F) return false;   // general punctuation
    if (cp >= 0x20A0 && cp <= 0x20CF) return false;   // currency symbols
    if (cp >= 0x2190 && cp <= 0x2BFF) return false;   // arrows, math, misc symbols
    if (cp >= 0x2E00 && cp <= 0x2E7F) return false;   // supplemental punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return false;   // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;   // CJK compatibility forms
    if (cp >= 0xFF01 && cp <= 0xFF0F) return false;   // fullwidth punctuation
    if (cp >= 0xFF1A && cp <= 0xFF20) return false;
    if (cp >= 0xFF3B && cp <= 0xFF40) return false;
    if (cp >= 0xFF5B && cp <= 0xFF65) return false;
    if (cp >= 0x1F300 && cp <= 0x1FAFF) return false;  // emoji
    return true;
}

std::uint32_t to_lower_codepoint(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;  // Latin Ext-A pairs
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;                 // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) { return tokenize(text, nullptr); }

std::string fold_case(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        const size_t start = i;
        const std::uint32_t cp = decode_utf8(text, i);
        if (cp == 0xFFFFFFFF) {
            out.append(text.substr(start, i - start));
        } else {
            encode_utf8(to_lower_codepoint(cp), out);
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text, const StopwordSet* stopwords) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (stopwords == nullptr || stopwords->count(current) == 0) {
            tokens.push_back(current);
        }
        current.clear();
    };
    size_t i = 0;
    while (i < text.size()) {
        const std::uint32_t cp = decode_utf8(text, i);
        if (is_word_codepoint(cp)) {
            encode_utf8(to_lower_codepoint(cp), current);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

}  // namespace coss
