#include "badgoods/month.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "badgoods/errors.hpp"

namespace badgoods {

namespace {

bool parse_int_field(const std::string& text, std::size_t begin, std::size_t end, int& out) {
    if (begin >= end || end > text.size()) {
        return false;
    }
    for (std::size_t i = begin; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    auto result = std::from_chars(text.data() + begin, text.data() + end, out);
    return result.ec == std::errc() && result.ptr == text.data() + end;
}

} // namespace

YearMonth YearMonth::plus_months(int n) const noexcept {
    int index = year * 12 + (month - 1) + n;
    YearMonth out;
    out.year = index / 12;
    out.month = index % 12 + 1;
    if (out.month < 1) { // negative index wraps below zero
        out.month += 12;
        out.year -= 1;
    }
    return out;
}

int YearMonth::months_since(const YearMonth& other) const noexcept {
    return (year - other.year) * 12 + (month - other.month);
}

std::string YearMonth::to_string() const {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d", year, month);
    return buffer;
}

std::optional<YearMonth> YearMonth::try_parse(const std::string& text) {
    // "YYYY-MM" (7 chars) or "YYYY-MM-DD" (10 chars, day discarded).
    if (text.size() != 7 && text.size() != 10) {
        return std::nullopt;
    }
    if (text[4] != '-') {
        return std::nullopt;
    }
    if (text.size() == 10) {
        int day = 0;
        if (text[7] != '-' || !parse_int_field(text, 8, 10, day) || day < 1 || day > 31) {
            return std::nullopt;
        }
    }
    YearMonth out;
    if (!parse_int_field(text, 0, 4, out.year) || !parse_int_field(text, 5, 7, out.month)) {
        return std::nullopt;
    }
    if (out.month < 1 || out.month > 12) {
        return std::nullopt;
    }
    return out;
}

YearMonth YearMonth::parse(const std::string& text) {
    auto parsed = try_parse(text);
    if (!parsed) {
        fail(Errc::InvalidRange, "not a calendar month: \"" + text + "\"");
    }
    return *parsed;
}

} // namespace badgoods
