#pragma once

#include <optional>
#include <string>

#include "coss/types.hpp"

namespace coss {

/// Parses an RFC 3339 date-time ("2020-01-01T08:00:00Z", offsets and
/// fractional seconds accepted) into UTC seconds since the epoch.
/// Fractional seconds are truncated. Returns nullopt on malformed input.
std::optional<Timestamp> parse_rfc3339(const std::string& s);

/// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Timestamp t);

/// Inclusive time interval used for candidate retrieval.
struct TimeWindow {
    Timestamp start = 0;
    Timestamp end = 0;

    bool contains(Timestamp t) const { return start <= t && t <= end; }
    bool valid() const { return start <= end; }

    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

}  // namespace coss
