#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "badgoods/errors.hpp"
#include "badgoods/stats.hpp"

using namespace badgoods;
using namespace badgoods::stats;

namespace {

TimeSeries series_of(std::vector<double> values, std::string name = "x") {
    return TimeSeries{YearMonth{2020, 1}, std::move(values), std::move(name)};
}

MonthlyRecord record(int month, Units bought, Units returned, Units capacity, Units freshness,
                     Units shelf) {
    MonthlyRecord r;
    r.month = YearMonth{2024, month};
    r.bought_qty = bought;
    r.return_qty = returned;
    r.retailer_capacity = capacity;
    r.freshness_in_months = freshness;
    r.shelf_life_in_months = shelf;
    return r;
}

} // namespace

TEST_CASE("acf of an alternating series matches the closed form") {
    // For x_t = (-1)^t with an even count the mean is 0, so the biased
    // estimate at lag k is (-1)^k * (n - k) / n.
    const std::size_t n = 20;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        x[t] = (t % 2 == 0) ? 1.0 : -1.0;
    }
    auto result = acf(series_of(x), 4);
    REQUIRE(result.coefficients.size() == 5);
    CHECK(result.coefficients[0] == 1.0);
    for (int k = 1; k <= 4; ++k) {
        double expected = ((k % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(n - k) /
                          static_cast<double>(n);
        CHECK(result.coefficients[static_cast<std::size_t>(k)] == doctest::Approx(expected));
    }
    CHECK(result.n == n);
    CHECK(result.max_lag == 4);
    CHECK(result.confidence_half_width ==
          doctest::Approx(1.96 / std::sqrt(static_cast<double>(n))));
}

TEST_CASE("acf is invariant under affine transforms of the input") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> x(60);
    for (auto& v : x) {
        v = noise(rng);
    }
    auto base = acf(series_of(x), 10);

    for (auto [scale, shift] : {std::pair{3.5, 100.0}, std::pair{-2.0, -7.0}}) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = scale * x[i] + shift;
        }
        auto transformed = acf(series_of(y), 10);
        for (std::size_t k = 0; k < base.coefficients.size(); ++k) {
            CHECK(std::fabs(transformed.coefficients[k] - base.coefficients[k]) < 1e-9);
        }
    }
}

TEST_CASE("acf of white noise stays mostly inside the confidence band") {
    // Estimates at different lags are correlated, so a single draw can be
    // atypical; aggregating 10 seeds x 20 lags makes the 90% bar stable.
    int inside = 0;
    int total = 0;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, 1.0);
        std::vector<double> x(200);
        for (auto& v : x) {
            v = noise(rng);
        }
        auto result = acf(series_of(x), 20);
        CHECK(result.coefficients[0] == 1.0);
        for (int k = 1; k <= 20; ++k) {
            double c = result.coefficients[static_cast<std::size_t>(k)];
            CHECK(std::fabs(c) <= 1.0 + 1e-12);
            if (std::fabs(c) <= result.confidence_half_width) {
                ++inside;
            }
            ++total;
        }
    }
    CHECK(total == 200);
    CHECK(inside >= total * 9 / 10);
}

TEST_CASE("acf input validation") {
    CHECK_THROWS_WITH_AS((void)acf(series_of({1, 2, 3, 4, 5}), 0),
                         doctest::Contains("InvalidRange"), Error);
    CHECK_THROWS_WITH_AS((void)acf(series_of({1, 2, 3}), 2),
                         doctest::Contains("SeriesTooShort"), Error);
    CHECK_THROWS_WITH_AS((void)acf(series_of({5, 5, 5, 5, 5, 5}), 2),
                         doctest::Contains("ZeroVariance"), Error);
    // n = max_lag + 2 is the smallest accepted size.
    CHECK_NOTHROW((void)acf(series_of({1, 2, 3, 4}), 2));
}

TEST_CASE("default lag budget is a quarter of the sample, clamped to [1, 12]") {
    CHECK(default_max_lag(3) == 1);
    CHECK(default_max_lag(4) == 1);
    CHECK(default_max_lag(8) == 2);
    CHECK(default_max_lag(36) == 9);
    CHECK(default_max_lag(48) == 12);
    CHECK(default_max_lag(1000) == 12);
}

TEST_CASE("pearson correlation reproduces hand-computed values") {
    // x = [1,2,3,4], y = [1,3,2,4]: covariance sum 4, each ssd 5, r = 4/5.
    CHECK(pearson(series_of({1, 2, 3, 4}), series_of({1, 3, 2, 4})) == doctest::Approx(0.8));

    SUBCASE("perfect linear relations hit the bounds") {
        auto x = series_of({1, 2, 3, 4, 5});
        CHECK(pearson(x, series_of({5, 7, 9, 11, 13})) == doctest::Approx(1.0));
        CHECK(pearson(x, series_of({-1, -2, -3, -4, -5})) == doctest::Approx(-1.0));
    }
    SUBCASE("result is symmetric in its arguments") {
        auto x = series_of({1.5, 0.2, 9.0, 4.4});
        auto y = series_of({2.0, 2.5, -1.0, 0.0});
        CHECK(pearson(x, y) == doctest::Approx(pearson(y, x)));
    }
    SUBCASE("errors") {
        CHECK_THROWS_WITH_AS((void)pearson(series_of({1, 2}), series_of({1, 2, 3})),
                             doctest::Contains("LengthMismatch"), Error);
        CHECK_THROWS_WITH_AS((void)pearson(series_of({1}), series_of({2})),
                             doctest::Contains("SeriesTooShort"), Error);
        CHECK_THROWS_WITH_AS((void)pearson(series_of({3, 3, 3}), series_of({1, 2, 3})),
                             doctest::Contains("ZeroVariance"), Error);
    }
}

TEST_CASE("correlation matrix covers all six history variables") {
    Dataset ds;
    // Rates 0.1, 0.2, 0.3, 0.4 keep the rate column informative; shelf life
    // is constant so its whole row and column must come back undefined.
    ds.records = {record(1, 100, 10, 90, 1, 4), record(2, 200, 40, 160, 2, 4),
                  record(3, 300, 90, 210, 1, 4), record(4, 400, 160, 240, 3, 4)};
    auto m = correlation_matrix(ds);
    REQUIRE(m.variable_names.size() == 6);
    REQUIRE(m.entries.size() == 6);
    CHECK(m.variable_names[0] == "bought_qty");
    CHECK(m.variable_names[5] == "shelf_life_in_months");

    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (i == 5 || j == 5) {
                CHECK_FALSE(m.defined(i, j)); // constant column, diagonal included
                continue;
            }
            REQUIRE(m.defined(i, j));
            CHECK(m.entries[i][j] == doctest::Approx(m.entries[j][i]));
            CHECK(std::fabs(m.entries[i][j]) <= 1.0 + 1e-12);
            if (i == j) {
                CHECK(m.entries[i][j] == doctest::Approx(1.0));
            }
        }
    }

    // Entries agree with the standalone correlation of the extracted columns.
    auto bought = extract_series(ds, HistoryField::BoughtQty);
    auto returns = extract_series(ds, HistoryField::ReturnQty);
    CHECK(m.entries[0][1] == doctest::Approx(pearson(bought, returns)));
    auto rate = extract_series(ds, HistoryField::RateOfReturn);
    CHECK(m.entries[0][2] == doctest::Approx(pearson(bought, rate)));

    SUBCASE("a zero-sales month leaves only the rate column undefined") {
        ds.records.push_back(record(5, 0, 0, 240, 2, 4));
        auto z = correlation_matrix(ds);
        CHECK_FALSE(z.defined(2, 2));
        CHECK_FALSE(z.defined(0, 2));
        CHECK(z.defined(0, 1));
        CHECK(z.defined(0, 0));
    }
    SUBCASE("one record is too short") {
        Dataset tiny;
        tiny.records = {record(1, 100, 10, 90, 1, 4)};
        CHECK_THROWS_WITH_AS((void)correlation_matrix(tiny),
                             doctest::Contains("SeriesTooShort"), Error);
    }
}

TEST_CASE("histogram partitions the range and conserves counts") {
    std::vector<double> values = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto h = histogram(values, 5);
    REQUIRE(h.bin_edges.size() == 6);
    REQUIRE(h.counts.size() == 5);
    CHECK(h.bin_edges.front() == 0.0);
    CHECK(h.bin_edges.back() == 9.0);
    for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i) {
        CHECK(h.bin_edges[i] < h.bin_edges[i + 1]);
        CHECK(h.bin_edges[i + 1] - h.bin_edges[i] == doctest::Approx(1.8));
    }
    // Width 1.8 puts {0,1}, {2,3}, {4,5}, {6,7}, {8,9} two per bin, with the
    // maximum clamped into the final bin rather than falling off the edge.
    for (std::size_t c : h.counts) {
        CHECK(c == 2);
    }

    SUBCASE("counts always total the input size") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        std::vector<double> sample(137);
        for (auto& v : sample) {
            v = u(rng);
        }
        auto hist = histogram(sample, 7);
        std::size_t total = 0;
        for (std::size_t c : hist.counts) {
            total += c;
        }
        CHECK(total == sample.size());
    }
    SUBCASE("constant input widens the range instead of failing") {
        auto flat = histogram({1.0, 1.0, 1.0}, 4);
        CHECK(flat.bin_edges.front() == doctest::Approx(0.5));
        CHECK(flat.bin_edges.back() == doctest::Approx(1.5));
        std::size_t total = 0;
        for (std::size_t c : flat.counts) {
            total += c;
        }
        CHECK(total == 3);
        CHECK(flat.counts[2] == 3); // 1.0 sits at the start of the third bin
    }
    SUBCASE("errors") {
        CHECK_THROWS_WITH_AS((void)histogram({}, 3), doctest::Contains("EmptyInput"), Error);
        CHECK_THROWS_WITH_AS((void)histogram({1.0}, 0), doctest::Contains("InvalidRange"),
                             Error);
    }
}

TEST_CASE("summary statistics use the sample standard deviation") {
    auto s = summarize(series_of({2, 4, 4, 4, 5, 5, 7, 9}));
    CHECK(s.n == 8);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.min == 2.0);
    CHECK(s.max == 9.0);
    // Squared deviations sum to 32; the n-1 denominator gives sqrt(32/7).
    CHECK(s.std == doctest::Approx(std::sqrt(32.0 / 7.0)));

    SUBCASE("single observation has zero spread") {
        auto one = summarize(series_of({42.0}));
        CHECK(one.n == 1);
        CHECK(one.mean == 42.0);
        CHECK(one.std == 0.0);
        CHECK(one.min == 42.0);
        CHECK(one.max == 42.0);
    }
    SUBCASE("empty series is rejected") {
        CHECK_THROWS_WITH_AS((void)summarize(series_of({})), doctest::Contains("EmptyInput"),
                             Error);
    }
}
