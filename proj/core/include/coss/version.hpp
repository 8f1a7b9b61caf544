#pragma once

namespace coss {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace coss
