#pragma once

#include <cstdint>
#include <string>

#include "badgoods/errors.hpp"
#include "badgoods/month.hpp"

namespace badgoods {

using Units = std::int64_t;

// One observed month of a single product's sales, returns, and shelf state.
struct MonthlyRecord {
    YearMonth month;
    Units bought_qty = 0;
    Units return_qty = 0;
    Units retailer_capacity = 1;
    int freshness_in_months = 0;
    int shelf_life_in_months = 1;
    bool synthetic = false; // true when the row was filled by gap interpolation
};

// Fraction of sold units that come back, always within [0, 1].
class RatePercent {
public:
    RatePercent() = default;
    explicit RatePercent(double value);

    double value() const noexcept { return value_; }
    double as_percent() const noexcept { return value_ * 100.0; }

    friend bool operator==(const RatePercent& a, const RatePercent& b) = default;

private:
    double value_ = 0.0;
};

// Remaining freshness as a fraction of total shelf life, within [0, 1].
class FreshnessRatio {
public:
    FreshnessRatio() = default;
    explicit FreshnessRatio(double value);

    double value() const noexcept { return value_; }

    friend bool operator==(const FreshnessRatio& a, const FreshnessRatio& b) = default;

private:
    double value_ = 0.0;
};

// Unitless risk score in [0, 1]; `capped` records that the raw ratio power
// exceeded 1 and was clamped.
struct RiskScore {
    double value = 0.0;
    bool capped = false;

    friend bool operator==(const RiskScore& a, const RiskScore& b) = default;
};

enum class RiskLevel { Low, Medium, High };

const char* to_string(RiskLevel level) noexcept;

// One month of a forward plan, fully resolved and ready to score.
struct PlanRow {
    YearMonth month;
    Units demand_plan_qty = 0;
    RatePercent return_rate;
    Units retailer_capacity = 1;
    int freshness_in_months = 0;
    int shelf_life_in_months = 1;
};

// A scored plan month.
struct RiskRow {
    PlanRow plan;
    Units expected_return_qty = 0;
    FreshnessRatio freshness_ratio;
    RiskScore risk_score;
    RiskLevel risk_level = RiskLevel::Low;
};

// Observed fraction of sales that came back: returns / sales.
// Requires sales_qty > 0 and 0 <= actual_returns <= sales_qty.
RatePercent return_rate(Units actual_returns, Units sales_qty);

// Forecast return volume: sales * rate, rounded half away from zero.
Units expected_return_qty(Units sales_qty, RatePercent rate);

// Net stock the retailer absorbs: sales - returns. Requires returns <= sales.
Units inventory_capacity(Units sales_qty, Units return_qty);

// freshness / shelf_life. Requires shelf_life >= 1 and 0 <= freshness <= shelf_life.
FreshnessRatio freshness_ratio(int freshness_months, int shelf_life_months);

// Core score: (expected_return_qty / capacity) ^ freshness_ratio, clamped to 1.
// Zero expected returns score 0 even when the exponent is 0; a zero exponent
// with positive expected returns scores 1 (maximal exposure of stale stock).
RiskScore bad_goods_risk_score(Units expected_return_qty, Units retailer_capacity,
                               FreshnessRatio ratio);

// Threshold bands, closed on the left: Low < low_upper <= Medium < high_lower <= High.
RiskLevel classify_risk(double score, double low_upper = 0.4, double high_lower = 0.8);

} // namespace badgoods
