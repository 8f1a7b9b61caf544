#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace coss {

/// 64-bit FNV-1a. Used for paragraph text hashes and corpus/lexicon digests;
/// these are integrity pairings, not cryptographic commitments.
std::uint64_t fnv1a64(std::string_view data);

/// fnv1a64 rendered as 16 lowercase hex digits.
std::string digest_hex(std::string_view data);

}  // namespace coss
