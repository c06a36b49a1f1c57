#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace newscorr {

// Calendar date at day granularity. Proleptic Gregorian, ISO-8601 text form.
struct Date {
    std::int32_t year = 1970;
    std::uint8_t month = 1;  // 1..12
    std::uint8_t day = 1;    // 1..31

    friend auto operator<=>(const Date&, const Date&) = default;

    static constexpr bool is_leap(std::int32_t y) {
        return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    }

    static constexpr int days_in_month(std::int32_t y, unsigned m) {
        constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (m < 1 || m > 12) return 0;
        return (m == 2 && is_leap(y)) ? 29 : lengths[m - 1];
    }

    constexpr bool valid() const {
        return month >= 1 && month <= 12 && day >= 1 &&
               static_cast<int>(day) <= days_in_month(year, month);
    }

    // Days since 1970-01-01 (negative before). Standard civil-calendar arithmetic.
    constexpr std::int64_t day_number() const {
        std::int64_t y = year;
        const unsigned m = month;
        y -= m <= 2;
        const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
        const unsigned yoe = static_cast<unsigned>(y - era * 400);                    // [0, 399]
        const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;        // [0, 365]
        const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                   // [0, 146096]
        return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
    }

    static constexpr Date from_day_number(std::int64_t z) {
        z += 719468;
        const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
        const unsigned doe = static_cast<unsigned>(z - era * 146097);
        const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
        const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
        const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
        const unsigned mp = (5 * doy + 2) / 153;
        const unsigned d = doy - (153 * mp + 2) / 5 + 1;
        const unsigned m = mp + (mp < 10 ? 3 : -9);
        return Date{static_cast<std::int32_t>(y + (m <= 2)), static_cast<std::uint8_t>(m),
                    static_cast<std::uint8_t>(d)};
    }

    // 0 = Monday .. 6 = Sunday
    constexpr int weekday() const {
        const std::int64_t z = day_number();
        return static_cast<int>(z >= -3 ? (z + 3) % 7 : (z + 4) % 7 + 6);
    }

    constexpr bool is_weekend() const { return weekday() >= 5; }

    constexpr Date next_day() const { return from_day_number(day_number() + 1); }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, static_cast<unsigned>(month),
                      static_cast<unsigned>(day));
        return buf;
    }
};

// Strict "YYYY-MM-DD" parse; rejects invalid calendar dates.
inline std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len, long& out) {
        out = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
            out = out * 10 + (s[i] - '0');
        }
        return true;
    };
    long y = 0, m = 0, d = 0;
    if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
    Date date{static_cast<std::int32_t>(y), static_cast<std::uint8_t>(m),
              static_cast<std::uint8_t>(d)};
    if (!date.valid()) return std::nullopt;
    return date;
}

}  // namespace newscorr
