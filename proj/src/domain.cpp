#include "badgoods/domain.hpp"

#include <cmath>
#include <string>

namespace badgoods {

namespace {

std::string describe(double value) {
    return std::to_string(value);
}

} // namespace

RatePercent::RatePercent(double value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        fail(Errc::InvalidRange, "return rate must lie in [0, 1], got " + describe(value));
    }
    value_ = value;
}

FreshnessRatio::FreshnessRatio(double value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        fail(Errc::InvalidRange, "freshness ratio must lie in [0, 1], got " + describe(value));
    }
    value_ = value;
}

const char* to_string(RiskLevel level) noexcept {
    switch (level) {
    case RiskLevel::Low: return "Low";
    case RiskLevel::Medium: return "Medium";
    case RiskLevel::High: return "High";
    }
    return "?";
}

RatePercent return_rate(Units actual_returns, Units sales_qty) {
    if (sales_qty <= 0) {
        fail(Errc::ZeroSales, "return rate needs positive sales, got " + std::to_string(sales_qty));
    }
    if (actual_returns < 0 || actual_returns > sales_qty) {
        fail(Errc::InvalidRange, "returns must lie in [0, sales]: returns=" +
                                     std::to_string(actual_returns) +
                                     " sales=" + std::to_string(sales_qty));
    }
    return RatePercent(static_cast<double>(actual_returns) / static_cast<double>(sales_qty));
}

Units expected_return_qty(Units sales_qty, RatePercent rate) {
    if (sales_qty < 0) {
        fail(Errc::InvalidRange, "sales quantity must be non-negative, got " +
                                     std::to_string(sales_qty));
    }
    // llround rounds halfway cases away from zero.
    return static_cast<Units>(std::llround(static_cast<double>(sales_qty) * rate.value()));
}

Units inventory_capacity(Units sales_qty, Units return_qty) {
    if (sales_qty < 0 || return_qty < 0 || return_qty > sales_qty) {
        fail(Errc::InvalidRange, "capacity needs 0 <= returns <= sales: returns=" +
                                     std::to_string(return_qty) +
                                     " sales=" + std::to_string(sales_qty));
    }
    return sales_qty - return_qty;
}

FreshnessRatio freshness_ratio(int freshness_months, int shelf_life_months) {
    if (shelf_life_months < 1) {
        fail(Errc::ZeroShelfLife, "shelf life must be at least one month, got " +
                                      std::to_string(shelf_life_months));
    }
    if (freshness_months < 0 || freshness_months > shelf_life_months) {
        fail(Errc::InvalidRange, "freshness must lie in [0, shelf_life]: freshness=" +
                                     std::to_string(freshness_months) +
                                     " shelf_life=" + std::to_string(shelf_life_months));
    }
    return FreshnessRatio(static_cast<double>(freshness_months) /
                          static_cast<double>(shelf_life_months));
}

RiskScore bad_goods_risk_score(Units expected_return_qty, Units retailer_capacity,
                               FreshnessRatio ratio) {
    if (retailer_capacity < 1) {
        fail(Errc::ZeroCapacity, "retailer capacity must be at least 1, got " +
                                     std::to_string(retailer_capacity));
    }
    if (expected_return_qty < 0) {
        fail(Errc::InvalidRange, "expected returns must be non-negative, got " +
                                     std::to_string(expected_return_qty));
    }
    if (expected_return_qty == 0) {
        // Nothing is expected back; the 0^0 case resolves to no risk.
        return RiskScore{0.0, false};
    }
    double base = static_cast<double>(expected_return_qty) /
                  static_cast<double>(retailer_capacity);
    double raw = std::pow(base, ratio.value());
    if (raw > 1.0) {
        return RiskScore{1.0, true};
    }
    return RiskScore{raw, false};
}

RiskLevel classify_risk(double score, double low_upper, double high_lower) {
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
        fail(Errc::InvalidRange, "risk score must lie in [0, 1], got " + describe(score));
    }
    if (!(0.0 < low_upper && low_upper < high_lower && high_lower <= 1.0)) {
        fail(Errc::InvalidRange, "thresholds must satisfy 0 < low < high <= 1");
    }
    if (score < low_upper) {
        return RiskLevel::Low;
    }
    if (score < high_lower) {
        return RiskLevel::Medium;
    }
    return RiskLevel::High;
}

} // namespace badgoods
