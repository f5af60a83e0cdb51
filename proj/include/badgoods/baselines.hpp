#pragma once

#include <array>
#include <span>
#include <string>

#include "badgoods/arima.hpp"
#include "badgoods/timeseries.hpp"

namespace badgoods::baselines {

// Simple exponential smoothing: flat forecasts at the final level.
struct SesModel {
    double alpha = 0.0;
    double level = 0.0;
};

// Additive Holt-Winters with a fixed 12-month season.
struct HoltWintersModel {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double level = 0.0;
    double trend = 0.0;
    std::array<double, 12> seasonals{}; // normalized to sum ~0
    int period = 12;
    int phase = 0; // seasonal index of the first forecast step
};

// Level seeded with the first observation; alpha picked from the grid
// 0.01..0.99 (step 0.01) by one-step squared error. Needs n >= 3.
SesModel ses_fit(const TimeSeries& series);

// State seeded from the first two seasons (classical decomposition start);
// (alpha, beta, gamma) picked from the grid 0.1..0.9 (step 0.1) by one-step
// squared error. Needs at least two full seasons (n >= 24).
HoltWintersModel hw_fit(const TimeSeries& series);

// Point-only forecasts (interval vectors left empty).
arima::Forecast forecast_baseline(const SesModel& model, int horizon);
arima::Forecast forecast_baseline(const HoltWintersModel& model, int horizon);

enum class ModelKind { Arima, Ses, HoltWinters };

const char* to_string(ModelKind kind) noexcept;

struct BacktestReport {
    std::string model_name;
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0; // percent; steps with a zero actual are skipped
    int fold_count = 0;
    int horizon = 0;
};

// Forecast-error aggregation shared by the backtest: mean absolute error,
// root mean squared error, and mean absolute percentage error over the
// entries whose actual is nonzero.
struct ErrorMetrics {
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0;
};

ErrorMetrics error_metrics(std::span<const double> errors, std::span<const double> actuals);

// Rolling-origin evaluation: for each origin t in [min_train, n - horizon],
// fit on the first t observations and forecast the next `horizon`. The Arima
// model picks its order once on the first training window, then refits
// coefficients at every origin.
BacktestReport rolling_origin_backtest(const TimeSeries& series, ModelKind kind, int horizon,
                                       int min_train = 24);

} // namespace badgoods::baselines
