#include "coss/time.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace coss {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += (m <= 2);
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 13> dim = {0, 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return dim[m];
}

bool read_digits(const std::string& s, size_t pos, int count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<Timestamp> parse_rfc3339(const std::string& s) {
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (!read_digits(s, 0, 4, year)) return std::nullopt;
    if (s.size() < 19 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!read_digits(s, 5, 2, month) || !read_digits(s, 8, 2, day)) return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!read_digits(s, 11, 2, hour) || !read_digits(s, 14, 2, minute) ||
        !read_digits(s, 17, 2, second)) {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;  // 60 = leap second

    size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        size_t frac_digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            ++frac_digits;
        }
        if (frac_digits == 0) return std::nullopt;
    }

    // Offset: "Z" or "+HH:MM" / "-HH:MM".
    std::int64_t offset_sec = 0;
    if (pos >= s.size()) return std::nullopt;
    const char oc = s[pos];
    if (oc == 'Z' || oc == 'z') {
        ++pos;
    } else if (oc == '+' || oc == '-') {
        int oh = 0, om = 0;
        if (!read_digits(s, pos + 1, 2, oh)) return std::nullopt;
        if (pos + 3 >= s.size() || s[pos + 3] != ':') return std::nullopt;
        if (!read_digits(s, pos + 4, 2, om)) return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset_sec = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (oc == '-') offset_sec = -offset_sec;
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(year, month, day);
    const std::int64_t local = days * 86400 + hour * 3600 + minute * 60 + second;
    return local - offset_sec;
}

std::string format_rfc3339(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t year = 0;
    int month = 0, day = 0;
    civil_from_days(days, year, month, day);
    const int hour = static_cast<int>(rem / 3600);
    const int minute = static_cast<int>((rem % 3600) / 60);
    const int second = static_cast<int>(rem % 60);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02d:%02d:%02dZ",
                  static_cast<long long>(year), month, day, hour, minute, second);
    return buf;
}

}  // namespace coss
