#pragma once

// Internal helpers shared by the serialization paths. Not installed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "coss/errors.hpp"

namespace coss::detail {

using ojson = nlohmann::ordered_json;

/// Canonicalizes a double to 9 significant digits. All floats written to
/// artifact files pass through this, which keeps serialization byte-stable
/// across serialize/deserialize cycles.
inline double round9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

inline ojson parse_json(const std::string& text, const std::string& context) {
    ojson j = ojson::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError(context + ": malformed JSON");
    return j;
}

}  // namespace coss::detail
