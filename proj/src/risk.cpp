#include "badgoods/risk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace badgoods::risk {

namespace {

using nlohmann::json;

RiskRow score_row(const PlanRow& plan, double low_upper, double high_lower) {
    RiskRow row;
    row.plan = plan;
    row.expected_return_qty = expected_return_qty(plan.demand_plan_qty, plan.return_rate);
    row.freshness_ratio = freshness_ratio(plan.freshness_in_months, plan.shelf_life_in_months);
    row.risk_score =
        bad_goods_risk_score(row.expected_return_qty, plan.retailer_capacity, row.freshness_ratio);
    row.risk_level = classify_risk(row.risk_score.value, low_upper, high_lower);
    return row;
}

RiskLevel one_level_down(RiskLevel level) {
    return level == RiskLevel::High ? RiskLevel::Medium : RiskLevel::Low;
}

bool at_or_below(RiskLevel level, RiskLevel target) {
    return static_cast<int>(level) <= static_cast<int>(target);
}

std::string format_fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

json row_to_json(const RiskRow& row) {
    json j;
    j["date"] = row.plan.month.to_string();
    j["demand_plan_qty"] = row.plan.demand_plan_qty;
    j["return_rate"] = row.plan.return_rate.value();
    j["expected_return_qty"] = row.expected_return_qty;
    j["retailer_capacity"] = row.plan.retailer_capacity;
    j["freshness_in_months"] = row.plan.freshness_in_months;
    j["shelf_life_in_months"] = row.plan.shelf_life_in_months;
    j["freshness_ratio"] = row.freshness_ratio.value();
    j["bg_risk_score"] = row.risk_score.value;
    j["capped"] = row.risk_score.capped;
    j["risk_level"] = to_string(row.risk_level);
    return j;
}

RiskLevel level_from_string(const std::string& name) {
    if (name == "Low") {
        return RiskLevel::Low;
    }
    if (name == "Medium") {
        return RiskLevel::Medium;
    }
    if (name == "High") {
        return RiskLevel::High;
    }
    fail(Errc::InvalidRange, "unknown risk level \"" + name + "\"");
}

} // namespace

const char* to_string(ActionType type) noexcept {
    switch (type) {
    case ActionType::IncreaseFreshness: return "increase_freshness";
    case ActionType::ReduceDemand: return "reduce_demand";
    case ActionType::IncreaseCapacity: return "increase_capacity";
    }
    return "?";
}

std::vector<PlanRow> build_plan(const Dataset& history, const std::vector<PlanInput>& plan,
                                const ScoringConfig& config) {
    if (config.horizon < 1) {
        fail(Errc::InvalidHorizon, "horizon must be at least 1");
    }
    if (plan.size() != static_cast<std::size_t>(config.horizon)) {
        fail(Errc::HorizonMismatch, "plan covers " + std::to_string(plan.size()) +
                                        " months but the horizon is " +
                                        std::to_string(config.horizon));
    }
    for (std::size_t i = 1; i < plan.size(); ++i) {
        if (plan[i].month.months_since(plan[i - 1].month) != 1) {
            fail(Errc::HorizonMismatch, "plan months must be consecutive, found a break after " +
                                            plan[i - 1].month.to_string());
        }
    }

    bool needs_forecast = config.rate_source == SourceMode::Forecast ||
                          config.capacity_source == SourceMode::Forecast;
    if (needs_forecast) {
        if (history.records.empty()) {
            fail(Errc::EmptyFile, "forecast sources need a non-empty history");
        }
        YearMonth expected = history.span_last().plus_months(1);
        if (plan.front().month != expected) {
            fail(Errc::HorizonMismatch,
                 "plan must start the month after history ends (" + expected.to_string() +
                     "), starts " + plan.front().month.to_string());
        }
    }

    auto forecast_column = [&](HistoryField field) {
        TimeSeries series = extract_series(history, field);
        auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
        if (*mn == *mx) {
            // A flat history carries no signal to fit; its only sensible
            // continuation is the constant itself.
            arima::Forecast flat;
            flat.horizon = config.horizon;
            flat.point.assign(static_cast<std::size_t>(config.horizon), *mn);
            flat.lower_95 = flat.point;
            flat.upper_95 = flat.point;
            return flat;
        }
        auto order = arima::select_order(series, config.bounds);
        auto fitted = arima::fit(series, order);
        std::size_t tail = static_cast<std::size_t>(order.p + order.d);
        std::vector<double> last_levels(series.values.end() - static_cast<std::ptrdiff_t>(tail),
                                        series.values.end());
        return arima::forecast(fitted, last_levels, config.horizon);
    };

    arima::Forecast rate_forecast;
    if (config.rate_source == SourceMode::Forecast) {
        rate_forecast = forecast_column(HistoryField::RateOfReturn);
    }
    arima::Forecast capacity_forecast;
    if (config.capacity_source == SourceMode::Forecast) {
        capacity_forecast = forecast_column(HistoryField::RetailerCapacity);
    }

    std::vector<PlanRow> rows;
    rows.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PlanInput& input = plan[i];
        PlanRow row;
        row.month = input.month;
        row.demand_plan_qty = input.demand_plan_qty;
        row.freshness_in_months = input.freshness_in_months;
        row.shelf_life_in_months = input.shelf_life_in_months;
        if (row.freshness_in_months > row.shelf_life_in_months) {
            fail(Errc::InvariantViolation,
                 row.month.to_string() + ": freshness exceeds shelf life");
        }

        if (config.rate_source == SourceMode::PlanOverride) {
            if (!input.return_rate) {
                fail(Errc::ConfigError, "rate override requested but " +
                                            input.month.to_string() +
                                            " has no return_rate_pct value");
            }
            row.return_rate = RatePercent(*input.return_rate);
        } else {
            double value = std::clamp(rate_forecast.point[i], 0.0, 1.0);
            row.return_rate = RatePercent(value);
        }

        if (config.capacity_source == SourceMode::PlanOverride) {
            if (!input.retailer_capacity) {
                fail(Errc::ConfigError, "capacity override requested but " +
                                            input.month.to_string() +
                                            " has no retailer_capacity value");
            }
            row.retailer_capacity = *input.retailer_capacity;
        } else {
            auto rounded = static_cast<Units>(std::llround(capacity_forecast.point[i]));
            row.retailer_capacity = std::max<Units>(rounded, 1);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<RiskRow> score_plan(const std::vector<PlanRow>& rows, double low_upper,
                                double high_lower) {
    std::vector<RiskRow> scored;
    scored.reserve(rows.size());
    for (const auto& row : rows) {
        scored.push_back(score_row(row, low_upper, high_lower));
    }
    return scored;
}

Recommendation recommend(const RiskRow& row, const ActionBounds& bounds, double low_upper,
                         double high_lower) {
    if (row.risk_level == RiskLevel::Low) {
        fail(Errc::AlreadyLow, row.plan.month.to_string() + " is already Low risk");
    }

    Recommendation rec;
    rec.month = row.plan.month;
    rec.current_level = row.risk_level;
    rec.target_level = one_level_down(row.risk_level);

    const PlanRow& base = row.plan;
    constexpr Units kStep = 50;

    // Candidate values per lever, smallest change first.
    std::vector<Units> freshness_values;
    for (int f = base.freshness_in_months + 1; f <= base.shelf_life_in_months; ++f) {
        freshness_values.push_back(f);
    }
    std::vector<Units> demand_values;
    {
        auto min_demand = static_cast<Units>(std::ceil(
            static_cast<double>(base.demand_plan_qty) * (1.0 - bounds.max_demand_reduction_frac)));
        min_demand = std::max<Units>(min_demand, 1);
        for (Units v = base.demand_plan_qty - kStep; v >= min_demand; v -= kStep) {
            demand_values.push_back(v);
        }
    }
    std::vector<Units> capacity_values;
    {
        auto max_capacity = static_cast<Units>(std::floor(
            static_cast<double>(base.retailer_capacity) * (1.0 + bounds.max_capacity_increase_frac)));
        for (Units v = base.retailer_capacity + kStep; v <= max_capacity; v += kStep) {
            capacity_values.push_back(v);
        }
    }

    auto apply = [&](ActionType type, Units to) {
        PlanRow adjusted = base;
        switch (type) {
        case ActionType::IncreaseFreshness:
            adjusted.freshness_in_months = static_cast<int>(to);
            break;
        case ActionType::ReduceDemand:
            adjusted.demand_plan_qty = to;
            break;
        case ActionType::IncreaseCapacity:
            adjusted.retailer_capacity = to;
            break;
        }
        return adjusted;
    };

    // Re-scoring goes through exactly the scoring path the plan uses.
    auto reaches_target = [&](const PlanRow& adjusted, RiskScore* score) {
        RiskRow rescored = score_plan({adjusted}, low_upper, high_lower).front();
        *score = rescored.risk_score;
        return at_or_below(rescored.risk_level, rec.target_level);
    };

    const std::vector<std::pair<ActionType, const std::vector<Units>*>> levers = {
        {ActionType::IncreaseFreshness, &freshness_values},
        {ActionType::ReduceDemand, &demand_values},
        {ActionType::IncreaseCapacity, &capacity_values},
    };

    for (const auto& [type, values] : levers) {
        for (Units to : *values) {
            RiskScore score;
            if (reaches_target(apply(type, to), &score)) {
                rec.feasible = true;
                rec.actions = {Action{type, to}};
                rec.resulting_score = score;
                return rec;
            }
        }
    }

    for (std::size_t a = 0; a < levers.size(); ++a) {
        for (std::size_t b = a + 1; b < levers.size(); ++b) {
            for (Units first : *levers[a].second) {
                for (Units second : *levers[b].second) {
                    PlanRow adjusted = apply(levers[a].first, first);
                    switch (levers[b].first) {
                    case ActionType::IncreaseFreshness:
                        adjusted.freshness_in_months = static_cast<int>(second);
                        break;
                    case ActionType::ReduceDemand:
                        adjusted.demand_plan_qty = second;
                        break;
                    case ActionType::IncreaseCapacity:
                        adjusted.retailer_capacity = second;
                        break;
                    }
                    RiskScore score;
                    if (reaches_target(adjusted, &score)) {
                        rec.feasible = true;
                        rec.actions = {Action{levers[a].first, first},
                                       Action{levers[b].first, second}};
                        rec.resulting_score = score;
                        return rec;
                    }
                }
            }
        }
    }
    return rec; // infeasible: nothing within bounds reaches the target
}

std::string emit_risk_table(const std::vector<RiskRow>& rows, TableFormat format) {
    if (rows.empty()) {
        fail(Errc::EmptyInput, "risk table has no rows");
    }
    if (format == TableFormat::Json) {
        json array = json::array();
        for (const auto& row : rows) {
            array.push_back(row_to_json(row));
        }
        return array.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "date,demand_plan_qty,return_rate_pct,expected_return_qty,retailer_capacity,"
           "freshness_in_months,shelf_life_in_months,freshness_ratio,bg_risk_score,risk_level\n";
    for (const auto& row : rows) {
        out << row.plan.month.to_string() << ',' << row.plan.demand_plan_qty << ','
            << format_fixed(row.plan.return_rate.as_percent(), 2) << ','
            << row.expected_return_qty << ',' << row.plan.retailer_capacity << ','
            << row.plan.freshness_in_months << ',' << row.plan.shelf_life_in_months << ','
            << format_fixed(row.freshness_ratio.value(), 2) << ','
            << format_fixed(row.risk_score.value, 3) << ',' << to_string(row.risk_level) << '\n';
    }
    return out.str();
}

std::vector<RiskRow> parse_risk_table_json(const std::string& text) {
    json array = json::parse(text, nullptr, false);
    if (array.is_discarded() || !array.is_array()) {
        fail(Errc::BadCell, "not a JSON risk table");
    }
    std::vector<RiskRow> rows;
    for (const auto& j : array) {
        RiskRow row;
        row.plan.month = YearMonth::parse(j.at("date").get<std::string>());
        row.plan.demand_plan_qty = j.at("demand_plan_qty").get<Units>();
        row.plan.return_rate = RatePercent(j.at("return_rate").get<double>());
        row.plan.retailer_capacity = j.at("retailer_capacity").get<Units>();
        row.plan.freshness_in_months = j.at("freshness_in_months").get<int>();
        row.plan.shelf_life_in_months = j.at("shelf_life_in_months").get<int>();
        row.expected_return_qty = j.at("expected_return_qty").get<Units>();
        row.freshness_ratio = FreshnessRatio(j.at("freshness_ratio").get<double>());
        row.risk_score = RiskScore{j.at("bg_risk_score").get<double>(), j.at("capped").get<bool>()};
        row.risk_level = level_from_string(j.at("risk_level").get<std::string>());
        rows.push_back(row);
    }
    return rows;
}

std::string emit_recommendations_json(const std::vector<Recommendation>& recommendations) {
    json array = json::array();
    for (const auto& rec : recommendations) {
        json j;
        j["date"] = rec.month.to_string();
        j["current_level"] = to_string(rec.current_level);
        j["target_level"] = to_string(rec.target_level);
        j["feasible"] = rec.feasible;
        json actions = json::array();
        for (const auto& action : rec.actions) {
            actions.push_back({{"action", to_string(action.type)}, {"to", action.to}});
        }
        j["actions"] = actions;
        if (rec.feasible) {
            j["resulting_score"] = rec.resulting_score.value;
        }
        array.push_back(j);
    }
    return array.dump(2) + "\n";
}

} // namespace badgoods::risk
