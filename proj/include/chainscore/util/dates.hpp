#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace chainscore {

// Proleptic Gregorian calendar date. Arithmetic goes through a civil-day
// serial number so comparisons and day differences are exact integers.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string to_string() const;  // YYYY-MM-DD

    // Days since 1970-01-01 (negative before).
    std::int64_t serial() const;
};

// Parses "YYYY-MM-DD"; returns false on malformed or out-of-range input.
bool parse_date(const std::string& text, Date& out);

// Whole months from `a` to `b` (floor): 2021-05-01 -> 2021-09-01 is 4;
// 2021-05-15 -> 2021-09-01 is 3. Negative when b < a.
int whole_months_between(const Date& a, const Date& b);

// Completed years from `born` to `at` (floor), i.e. age on date `at`.
int whole_years_between(const Date& born, const Date& at);

}  // namespace chainscore
