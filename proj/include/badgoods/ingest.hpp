#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "badgoods/domain.hpp"
#include "badgoods/timeseries.hpp"

namespace badgoods {

// A parsed product history: records sorted by month, unique months, no gaps
// once validated.
struct Dataset {
    std::string product_label;
    std::vector<MonthlyRecord> records;

    const YearMonth& span_first() const { return records.front().month; }
    const YearMonth& span_last() const { return records.back().month; }
    std::size_t size() const noexcept { return records.size(); }
};

enum class GapPolicy { Reject, Interpolate };

// Canonical history schema, case-insensitive header, any column order:
//   date,bought_qty,return_qty,retailer_capacity,freshness_in_months,shelf_life_in_months
// Dates are "YYYY-MM"; "YYYY-MM-DD" is accepted and the day discarded.
// Quantities must be plain integers. Rows come back sorted by month.
Dataset parse_history_csv(std::istream& in, const std::string& product_label = "");

// Writes the canonical schema back out; parse(serialize(d)) == d for valid d.
std::string serialize_history_csv(const Dataset& dataset);

// Cross-field record checks plus the gap policy. Reject raises GapFound naming
// the missing months; Interpolate fills them by linear interpolation of the
// quantity fields (freshness and shelf life copied from the prior month) and
// marks each filled record synthetic.
Dataset validate(Dataset dataset, GapPolicy policy);

enum class HistoryField { BoughtQty, ReturnQty, RetailerCapacity, RateOfReturn };

const char* to_string(HistoryField field) noexcept;

// Pulls one column as a TimeSeries; RateOfReturn is computed per record and
// requires positive sales in every month.
TimeSeries extract_series(const Dataset& dataset, HistoryField field);

// One month of a forward plan as supplied by the operator. The two optional
// fields bypass the corresponding forecasts when present.
struct PlanInput {
    YearMonth month;
    Units demand_plan_qty = 0;
    int freshness_in_months = 0;
    int shelf_life_in_months = 1;
    std::optional<double> return_rate;       // stored as a fraction in [0, 1]
    std::optional<Units> retailer_capacity;
};

// Plan schema, case-insensitive header, any column order:
//   date,demand_plan_qty,freshness_in_months,shelf_life_in_months
// plus optional override columns return_rate_pct (0..100) and
// retailer_capacity. When an optional column is present every row must carry
// a valid value.
std::vector<PlanInput> parse_plan_csv(std::istream& in);

} // namespace badgoods
