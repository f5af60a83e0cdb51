#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "badgoods/month.hpp"

namespace badgoods {

// Ordered, gap-free monthly sequence of one numeric field.
// Index i holds the value for start_month.plus_months(i).
struct TimeSeries {
    YearMonth start_month;
    std::vector<double> values;
    std::string field_name;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    double operator[](std::size_t i) const { return values[i]; }
};

} // namespace badgoods
