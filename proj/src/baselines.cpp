#include "badgoods/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "badgoods/errors.hpp"

namespace badgoods::baselines {

namespace {

constexpr int kPeriod = 12;

// One-step sum of squared errors for a fixed alpha; optionally returns the
// final level.
double ses_sse(const std::vector<double>& x, double alpha, double* final_level) {
    double level = x[0];
    double sse = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) {
        double error = x[t] - level;
        sse += error * error;
        level = alpha * x[t] + (1.0 - alpha) * level;
    }
    if (final_level) {
        *final_level = level;
    }
    return sse;
}

struct HwState {
    double level = 0.0;
    double trend = 0.0;
    std::array<double, 12> seasonals{};
};

// Classical decomposition start: trend from the two season means, level
// anchored at the end of the first season (the season mean sits at its
// midpoint, half a period behind where the recursion starts), and seasonal
// offsets taken from detrended values so a ramp does not masquerade as
// seasonality.
HwState hw_initial_state(const std::vector<double>& x) {
    double mean1 = 0.0;
    double mean2 = 0.0;
    for (int i = 0; i < kPeriod; ++i) {
        mean1 += x[static_cast<std::size_t>(i)];
        mean2 += x[static_cast<std::size_t>(i + kPeriod)];
    }
    mean1 /= kPeriod;
    mean2 /= kPeriod;

    HwState state;
    state.trend = (mean2 - mean1) / kPeriod;
    double center = (kPeriod - 1) / 2.0;
    state.level = mean1 + state.trend * center;
    double offset_sum = 0.0;
    for (int i = 0; i < kPeriod; ++i) {
        double ramp = (static_cast<double>(i) - center) * state.trend;
        double offset = 0.5 * ((x[static_cast<std::size_t>(i)] - mean1 - ramp) +
                               (x[static_cast<std::size_t>(i + kPeriod)] - mean2 - ramp));
        state.seasonals[static_cast<std::size_t>(i)] = offset;
        offset_sum += offset;
    }
    for (double& s : state.seasonals) {
        s -= offset_sum / kPeriod;
    }
    return state;
}

// Runs the additive recursions from the end of the first season; returns the
// one-step SSE and optionally the final state.
double hw_sse(const std::vector<double>& x, const HwState& initial, double alpha, double beta,
              double gamma, HwState* final_state) {
    HwState state = initial;
    double sse = 0.0;
    for (std::size_t t = kPeriod; t < x.size(); ++t) {
        std::size_t season = t % kPeriod;
        double predicted = state.level + state.trend + state.seasonals[season];
        double error = x[t] - predicted;
        sse += error * error;
        double next_level =
            alpha * (x[t] - state.seasonals[season]) + (1.0 - alpha) * (state.level + state.trend);
        state.trend = beta * (next_level - state.level) + (1.0 - beta) * state.trend;
        state.seasonals[season] = gamma * (x[t] - next_level) + (1.0 - gamma) * state.seasonals[season];
        state.level = next_level;
    }
    if (final_state) {
        *final_state = state;
    }
    return sse;
}

} // namespace

const char* to_string(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::Arima: return "arima";
    case ModelKind::Ses: return "ses";
    case ModelKind::HoltWinters: return "holt_winters";
    }
    return "?";
}

SesModel ses_fit(const TimeSeries& series) {
    if (series.size() < 3) {
        fail(Errc::SeriesTooShort, "smoothing needs at least 3 observations, have " +
                                       std::to_string(series.size()));
    }
    SesModel best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 99; ++step) {
        double alpha = static_cast<double>(step) / 100.0;
        double level = 0.0;
        double sse = ses_sse(series.values, alpha, &level);
        if (sse < best_sse) {
            best_sse = sse;
            best.alpha = alpha;
            best.level = level;
        }
    }
    return best;
}

HoltWintersModel hw_fit(const TimeSeries& series) {
    if (series.size() < 2 * kPeriod) {
        fail(Errc::SeriesTooShort, "seasonal smoothing needs at least " +
                                       std::to_string(2 * kPeriod) + " observations, have " +
                                       std::to_string(series.size()));
    }
    HwState initial = hw_initial_state(series.values);

    HoltWintersModel best;
    HwState best_state;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= 9; ++a) {
        for (int b = 1; b <= 9; ++b) {
            for (int g = 1; g <= 9; ++g) {
                double alpha = a / 10.0;
                double beta = b / 10.0;
                double gamma = g / 10.0;
                HwState state;
                double sse = hw_sse(series.values, initial, alpha, beta, gamma, &state);
                if (sse < best_sse) {
                    best_sse = sse;
                    best.alpha = alpha;
                    best.beta = beta;
                    best.gamma = gamma;
                    best_state = state;
                }
            }
        }
    }

    // Re-center the seasonals; the shift moves into the level.
    double mean_offset =
        std::accumulate(best_state.seasonals.begin(), best_state.seasonals.end(), 0.0) / kPeriod;
    for (double& s : best_state.seasonals) {
        s -= mean_offset;
    }
    best.level = best_state.level + mean_offset;
    best.trend = best_state.trend;
    best.seasonals = best_state.seasonals;
    best.period = kPeriod;
    best.phase = static_cast<int>(series.size() % kPeriod);
    return best;
}

arima::Forecast forecast_baseline(const SesModel& model, int horizon) {
    if (horizon < 1) {
        fail(Errc::InvalidHorizon, "horizon must be at least 1, got " + std::to_string(horizon));
    }
    arima::Forecast out;
    out.horizon = horizon;
    out.point.assign(static_cast<std::size_t>(horizon), model.level);
    return out;
}

arima::Forecast forecast_baseline(const HoltWintersModel& model, int horizon) {
    if (horizon < 1) {
        fail(Errc::InvalidHorizon, "horizon must be at least 1, got " + std::to_string(horizon));
    }
    arima::Forecast out;
    out.horizon = horizon;
    out.point.resize(static_cast<std::size_t>(horizon));
    for (int k = 0; k < horizon; ++k) {
        std::size_t season = static_cast<std::size_t>((model.phase + k) % model.period);
        out.point[static_cast<std::size_t>(k)] =
            model.level + static_cast<double>(k + 1) * model.trend + model.seasonals[season];
    }
    return out;
}

ErrorMetrics error_metrics(std::span<const double> errors, std::span<const double> actuals) {
    if (errors.size() != actuals.size()) {
        fail(Errc::LengthMismatch, "error and actual counts differ");
    }
    if (errors.empty()) {
        fail(Errc::EmptyInput, "no forecast errors to aggregate");
    }
    ErrorMetrics m;
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    double pct_sum = 0.0;
    std::size_t pct_count = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        abs_sum += std::fabs(errors[i]);
        sq_sum += errors[i] * errors[i];
        if (actuals[i] != 0.0) {
            pct_sum += std::fabs(errors[i] / actuals[i]);
            ++pct_count;
        }
    }
    m.mae = abs_sum / static_cast<double>(errors.size());
    m.rmse = std::sqrt(sq_sum / static_cast<double>(errors.size()));
    m.mape = pct_count ? 100.0 * pct_sum / static_cast<double>(pct_count) : 0.0;
    return m;
}

BacktestReport rolling_origin_backtest(const TimeSeries& series, ModelKind kind, int horizon,
                                       int min_train) {
    if (horizon < 1) {
        fail(Errc::InvalidHorizon, "horizon must be at least 1, got " + std::to_string(horizon));
    }
    if (min_train < 3) {
        fail(Errc::InvalidRange, "min_train must be at least 3, got " + std::to_string(min_train));
    }
    std::size_t n = series.size();
    if (n < static_cast<std::size_t>(min_train + horizon)) {
        fail(Errc::SeriesTooShort, "need at least min_train + horizon = " +
                                       std::to_string(min_train + horizon) +
                                       " observations, have " + std::to_string(n));
    }

    // Order chosen once on the first training window, coefficients refit at
    // every origin; the window never sees its own evaluation points.
    arima::ArimaOrder arima_order;
    if (kind == ModelKind::Arima) {
        TimeSeries head = series;
        head.values.assign(series.values.begin(),
                           series.values.begin() + static_cast<std::ptrdiff_t>(min_train));
        arima_order = arima::select_order(head);
    }

    std::vector<double> errors;
    std::vector<double> actuals;
    int folds = 0;
    for (std::size_t t = static_cast<std::size_t>(min_train);
         t + static_cast<std::size_t>(horizon) <= n; ++t) {
        TimeSeries window = series;
        window.values.assign(series.values.begin(),
                             series.values.begin() + static_cast<std::ptrdiff_t>(t));

        arima::Forecast predicted;
        switch (kind) {
        case ModelKind::Arima: {
            auto model = arima::fit(window, arima_order);
            std::size_t tail = static_cast<std::size_t>(arima_order.p + arima_order.d);
            std::vector<double> last_levels(window.values.end() - static_cast<std::ptrdiff_t>(tail),
                                            window.values.end());
            predicted = arima::forecast(model, last_levels, horizon);
            break;
        }
        case ModelKind::Ses:
            predicted = forecast_baseline(ses_fit(window), horizon);
            break;
        case ModelKind::HoltWinters:
            predicted = forecast_baseline(hw_fit(window), horizon);
            break;
        }

        for (int h = 0; h < horizon; ++h) {
            double actual = series.values[t + static_cast<std::size_t>(h)];
            errors.push_back(actual - predicted.point[static_cast<std::size_t>(h)]);
            actuals.push_back(actual);
        }
        ++folds;
    }

    ErrorMetrics metrics = error_metrics(errors, actuals);
    BacktestReport report;
    report.model_name = to_string(kind);
    report.mae = metrics.mae;
    report.rmse = metrics.rmse;
    report.mape = metrics.mape;
    report.fold_count = folds;
    report.horizon = horizon;
    return report;
}

} // namespace badgoods::baselines
