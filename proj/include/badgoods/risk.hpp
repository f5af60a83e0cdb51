#pragma once

#include <string>
#include <vector>

#include "badgoods/arima.hpp"
#include "badgoods/domain.hpp"
#include "badgoods/ingest.hpp"

namespace badgoods::risk {

// Where a planned month's return rate and capacity come from: a model fit on
// history, or override columns in the plan file.
enum class SourceMode { Forecast, PlanOverride };

struct ScoringConfig {
    int horizon = 12;
    SourceMode rate_source = SourceMode::Forecast;
    SourceMode capacity_source = SourceMode::Forecast;
    double low_upper = 0.4;  // scores below stay Low
    double high_lower = 0.8; // scores at or above go High
    arima::OrderBounds bounds{};
};

// Resolves every plan month to a fully specified PlanRow. Forecast sources
// fit an order-searched model on the history column; forecast rates clamp to
// [0, 1] and forecast capacities round to integers no smaller than 1. When a
// forecast source is active the plan months must continue the history
// month-for-month across the whole horizon.
std::vector<PlanRow> build_plan(const Dataset& history, const std::vector<PlanInput>& plan,
                                const ScoringConfig& config);

// Scores each row with the domain formulas and classifies it.
std::vector<RiskRow> score_plan(const std::vector<PlanRow>& rows, double low_upper = 0.4,
                                double high_lower = 0.8);

enum class ActionType { IncreaseFreshness, ReduceDemand, IncreaseCapacity };

const char* to_string(ActionType type) noexcept;

// A single adjustment: the field is set to `to` (months for freshness, units
// otherwise).
struct Action {
    ActionType type;
    Units to;
};

struct ActionBounds {
    double max_demand_reduction_frac = 0.30;
    double max_capacity_increase_frac = 0.30;
};

struct Recommendation {
    YearMonth month;
    RiskLevel current_level = RiskLevel::Medium;
    RiskLevel target_level = RiskLevel::Low;
    bool feasible = false;
    std::vector<Action> actions;     // empty when infeasible
    RiskScore resulting_score;       // meaningful only when feasible
};

// Searches for the smallest adjustment that brings the row one level down,
// trying single actions in the order freshness, demand, capacity, then pairs
// in the same priority order. Demand and capacity move in steps of 50 within
// the bounds; freshness rises by whole months up to the shelf life. Rows
// already Low are an error. When nothing in bounds reaches the target the
// recommendation comes back marked infeasible.
Recommendation recommend(const RiskRow& row, const ActionBounds& bounds = {},
                         double low_upper = 0.4, double high_lower = 0.8);

enum class TableFormat { Csv, Json };

// Risk table serialization. CSV columns:
//   date,demand_plan_qty,return_rate_pct,expected_return_qty,retailer_capacity,
//   freshness_in_months,shelf_life_in_months,freshness_ratio,bg_risk_score,risk_level
// with rates as percent (2 decimals) and scores at 3 decimals. JSON carries
// full-precision values and round-trips exactly.
std::string emit_risk_table(const std::vector<RiskRow>& rows, TableFormat format);

std::vector<RiskRow> parse_risk_table_json(const std::string& text);

std::string emit_recommendations_json(const std::vector<Recommendation>& recommendations);

} // namespace badgoods::risk
