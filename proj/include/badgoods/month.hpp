#pragma once

#include <compare>
#include <optional>
#include <string>

namespace badgoods {

// Calendar year-month, the time axis of every series in this library.
struct YearMonth {
    int year = 1970;
    int month = 1; // 1..12

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;

    YearMonth plus_months(int n) const noexcept;

    // Signed number of months from `other` to `*this`.
    int months_since(const YearMonth& other) const noexcept;

    std::string to_string() const; // "YYYY-MM"

    // Accepts "YYYY-MM" or "YYYY-MM-DD"; a day component is discarded.
    static std::optional<YearMonth> try_parse(const std::string& text);

    // Throwing variant of try_parse; raises InvalidRange on malformed input.
    static YearMonth parse(const std::string& text);
};

} // namespace badgoods
