#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "badgoods/baselines.hpp"
#include "badgoods/errors.hpp"
#include "badgoods/stats.hpp"

using namespace badgoods;
using namespace badgoods::baselines;

namespace {

TimeSeries series_of(std::vector<double> values) {
    return TimeSeries{YearMonth{2020, 1}, std::move(values), "x"};
}

// Independent one-step SSE oracle for a given smoothing weight.
double ses_sse(const std::vector<double>& x, double alpha) {
    double level = x[0];
    double sse = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) {
        double err = x[t] - level;
        sse += err * err;
        level += alpha * err;
    }
    return sse;
}

} // namespace

TEST_CASE("exponential smoothing picks the grid alpha with minimal one-step SSE") {
    auto x = arima::simulate(arima::ArimaOrder{1, 0, 0}, std::vector<double>{1.0, 0.6}, 1.0,
                             80, 31);
    auto model = ses_fit(x);
    CHECK(model.alpha >= 0.01);
    CHECK(model.alpha <= 0.99);

    double chosen = ses_sse(x.values, model.alpha);
    for (int i = 1; i <= 99; ++i) {
        CHECK(chosen <= ses_sse(x.values, 0.01 * i) + 1e-9);
    }
    CHECK(chosen <= ses_sse(x.values, 0.5) + 1e-9);

    // Final level equals the oracle recursion's final level.
    double level = x.values[0];
    for (std::size_t t = 1; t < x.size(); ++t) {
        level += model.alpha * (x.values[t] - level);
    }
    CHECK(model.level == doctest::Approx(level));

    SUBCASE("alternating series wants a barely responsive weight") {
        // The level starts at x[0] = 0 and must still travel to the 0.5
        // midpoint, so the optimum is small but not at the very edge.
        std::vector<double> alt(40);
        for (std::size_t t = 0; t < alt.size(); ++t) {
            alt[t] = (t % 2 == 0) ? 0.0 : 1.0;
        }
        auto m = ses_fit(series_of(alt));
        CHECK(m.alpha <= 0.15);
        double chosen_sse = ses_sse(alt, m.alpha);
        CHECK(chosen_sse <= ses_sse(alt, 0.5));
        CHECK(chosen_sse <= ses_sse(alt, 0.99));
    }
    SUBCASE("constant series forecasts itself for any alpha") {
        auto m = ses_fit(series_of({7, 7, 7, 7, 7}));
        CHECK(m.level == doctest::Approx(7.0));
        auto fc = forecast_baseline(m, 4);
        for (double p : fc.point) {
            CHECK(p == doctest::Approx(7.0));
        }
    }
    SUBCASE("too short") {
        CHECK_THROWS_WITH_AS((void)ses_fit(series_of({1, 2})),
                             doctest::Contains("SeriesTooShort"), Error);
    }
}

TEST_CASE("Holt-Winters learns seasonal structure") {
    // Sine of period 12 around a level: seasonality SES cannot express.
    std::vector<double> x(48);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = 100.0 + 10.0 * std::sin(2.0 * M_PI * static_cast<double>(t) / 12.0);
    }
    auto hw = hw_fit(series_of(x));
    CHECK(hw.alpha >= 0.1);
    CHECK(hw.gamma <= 0.9);

    // Seasonal components stay centered.
    double sum = 0.0;
    for (double s : hw.seasonals) {
        sum += s;
    }
    CHECK(std::fabs(sum) < 1e-6);

    // Seasonal structure SES cannot express: compare one-step accuracy
    // out of sample, where the seasonal model must win.
    auto hw_report = rolling_origin_backtest(series_of(x), ModelKind::HoltWinters, 1, 24);
    auto ses_report = rolling_origin_backtest(series_of(x), ModelKind::Ses, 1, 24);
    CHECK(hw_report.rmse < ses_report.rmse);

    SUBCASE("forecast decomposes into level, trend, and matching seasonal") {
        auto fc = forecast_baseline(hw, 12);
        REQUIRE(fc.point.size() == 12);
        CHECK(fc.lower_95.empty());
        CHECK(fc.upper_95.empty());
        for (int k = 0; k < 12; ++k) {
            double base = hw.level + static_cast<double>(k + 1) * hw.trend;
            double seasonal =
                hw.seasonals[static_cast<std::size_t>((hw.phase + k) % 12)];
            CHECK(fc.point[static_cast<std::size_t>(k)] ==
                  doctest::Approx(base + seasonal));
        }
    }
}

TEST_CASE("Holt-Winters tracks a plain linear trend") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.5);
    std::vector<double> x(48);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = 20.0 + 3.0 * static_cast<double>(t) + noise(rng);
    }
    auto hw = hw_fit(series_of(x));
    CHECK(hw.trend > 3.0 * 0.8);
    CHECK(hw.trend < 3.0 * 1.2);

    SUBCASE("zero seasonals make the forecast affine in the horizon") {
        HoltWintersModel flat = hw;
        flat.seasonals.fill(0.0);
        auto fc = forecast_baseline(flat, 6);
        for (int k = 1; k < 6; ++k) {
            double step = fc.point[static_cast<std::size_t>(k)] -
                          fc.point[static_cast<std::size_t>(k - 1)];
            CHECK(step == doctest::Approx(flat.trend));
        }
    }
}

TEST_CASE("Holt-Winters needs two full seasons") {
    std::vector<double> x(23, 1.0);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = static_cast<double>(t % 12);
    }
    CHECK_THROWS_WITH_AS((void)hw_fit(series_of(x)), doctest::Contains("SeriesTooShort"),
                         Error);
}

TEST_CASE("baseline forecasts validate the horizon") {
    SesModel ses{0.5, 10.0};
    auto fc = forecast_baseline(ses, 4);
    CHECK(fc.point == std::vector<double>{10, 10, 10, 10});
    CHECK(fc.lower_95.empty());
    CHECK_THROWS_WITH_AS((void)forecast_baseline(ses, 0), doctest::Contains("InvalidHorizon"),
                         Error);

    HoltWintersModel hw;
    hw.level = 10.0;
    hw.trend = 1.0;
    auto hfc = forecast_baseline(hw, 3);
    CHECK(hfc.point[0] == doctest::Approx(11.0));
    CHECK(hfc.point[1] == doctest::Approx(12.0));
    CHECK(hfc.point[2] == doctest::Approx(13.0));
    CHECK_THROWS_AS((void)forecast_baseline(hw, -1), Error);
}

TEST_CASE("error metrics match hand computations") {
    std::vector<double> errors = {1, -1, 2};
    std::vector<double> actuals = {10, 10, 10};
    auto m = error_metrics(errors, actuals);
    CHECK(m.mae == doctest::Approx(4.0 / 3.0));
    CHECK(m.rmse == doctest::Approx(std::sqrt(2.0)));
    // |1/10| + |-1/10| + |2/10| over 3 terms, as percent.
    CHECK(m.mape == doctest::Approx(100.0 * (0.1 + 0.1 + 0.2) / 3.0));

    SUBCASE("zero actuals drop out of the percentage term only") {
        std::vector<double> acts = {10, 0, 10};
        auto z = error_metrics(errors, acts);
        CHECK(z.mae == doctest::Approx(4.0 / 3.0));
        CHECK(z.mape == doctest::Approx(100.0 * (0.1 + 0.2) / 2.0));
    }
}

TEST_CASE("model kind labels") {
    CHECK(std::string(to_string(ModelKind::Arima)) == "arima");
    CHECK(std::string(to_string(ModelKind::Ses)) == "ses");
    CHECK(std::string(to_string(ModelKind::HoltWinters)) == "holt_winters");
}

TEST_CASE("rolling-origin backtest walks every origin") {
    SUBCASE("constant series is predicted perfectly") {
        auto report = rolling_origin_backtest(series_of(std::vector<double>(40, 6.0)),
                                              ModelKind::Ses, 2, 24);
        CHECK(report.mae == doctest::Approx(0.0));
        CHECK(report.rmse == doctest::Approx(0.0));
        CHECK(report.model_name == "ses");
        CHECK(report.horizon == 2);
        // Origins 24..38 inclusive.
        CHECK(report.fold_count == 15);
    }
    SUBCASE("fold count covers min_train..n-horizon") {
        auto x = arima::simulate(arima::ArimaOrder{0, 0, 0}, std::vector<double>{50.0}, 2.0,
                                 40, 3);
        auto report = rolling_origin_backtest(x, ModelKind::Ses, 1, 30);
        CHECK(report.fold_count == 10);
        CHECK(report.rmse >= report.mae);
        CHECK(report.mape >= 0.0);
    }
    SUBCASE("rmse dominates mae on noisy data for every model kind") {
        auto x = arima::simulate(arima::ArimaOrder{1, 0, 0}, std::vector<double>{30.0, 0.6},
                                 3.0, 60, 9);
        for (auto kind : {ModelKind::Arima, ModelKind::Ses, ModelKind::HoltWinters}) {
            auto report = rolling_origin_backtest(x, kind, 1, 30);
            CHECK(report.rmse >= report.mae);
            CHECK(report.fold_count == 30);
        }
    }
    SUBCASE("series shorter than min_train + horizon is rejected") {
        CHECK_THROWS_WITH_AS(
            (void)rolling_origin_backtest(series_of(std::vector<double>(24, 1.0)),
                                          ModelKind::Ses, 1, 24),
            doctest::Contains("SeriesTooShort"), Error);
    }
    SUBCASE("one-step backtest of self-similar data beats the sample spread") {
        auto x = arima::simulate(arima::ArimaOrder{1, 0, 0}, std::vector<double>{20.0, 0.8},
                                 1.0, 120, 23);
        auto report = rolling_origin_backtest(x, ModelKind::Arima, 1, 50);
        auto spread = stats::summarize(x);
        CHECK(report.rmse <= spread.std);
    }
}

TEST_CASE("ARIMA beats exponential smoothing on its own data most of the time") {
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto x = arima::simulate(arima::ArimaOrder{1, 0, 0}, std::vector<double>{10.0, 0.7},
                                 1.0, 200, seed);
        auto arima_report = rolling_origin_backtest(x, ModelKind::Arima, 1, 50);
        auto ses_report = rolling_origin_backtest(x, ModelKind::Ses, 1, 50);
        CHECK(arima_report.rmse >= arima_report.mae);
        CHECK(ses_report.rmse >= ses_report.mae);
        if (arima_report.rmse <= ses_report.rmse) {
            ++wins;
        }
    }
    CHECK(wins >= 7);
}
