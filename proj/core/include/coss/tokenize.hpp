#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace coss {

using StopwordSet = std::unordered_set<std::string>;

/// Splits text into lowercase word tokens. UTF-8 aware: letters and digits
/// form tokens, punctuation and whitespace separate them. Case folding covers
/// ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic; other scripts pass
/// through unchanged. Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

/// Same, dropping tokens found in `stopwords` (pass nullptr to keep all).
std::vector<std::string> tokenize(std::string_view text, const StopwordSet* stopwords);

/// Lowercases text (same case folding as tokenize) without splitting it.
std::string fold_case(std::string_view text);

}  // namespace coss
