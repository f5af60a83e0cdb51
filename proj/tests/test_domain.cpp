#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "badgoods/domain.hpp"
#include "badgoods/month.hpp"
#include "reference_plan.hpp"

using namespace badgoods;

TEST_CASE("calendar months parse and iterate") {
    auto m = YearMonth::parse("2025-01");
    CHECK(m.year == 2025);
    CHECK(m.month == 1);
    CHECK(m.to_string() == "2025-01");

    // A day component is accepted and discarded.
    CHECK(YearMonth::parse("2024-12-31") == YearMonth{2024, 12});

    CHECK_FALSE(YearMonth::try_parse("2025-13"));
    CHECK_FALSE(YearMonth::try_parse("2025-00"));
    CHECK_FALSE(YearMonth::try_parse("2025-1"));
    CHECK_FALSE(YearMonth::try_parse("202501"));
    CHECK_FALSE(YearMonth::try_parse("2025/01"));
    CHECK_FALSE(YearMonth::try_parse("2025-01-32"));
    CHECK_THROWS_AS((void)YearMonth::parse("not-a-month"), Error);

    CHECK(YearMonth{2024, 12}.plus_months(1) == YearMonth{2025, 1});
    CHECK(YearMonth{2025, 1}.plus_months(-1) == YearMonth{2024, 12});
    CHECK(YearMonth{2022, 3}.plus_months(25) == YearMonth{2024, 4});
    CHECK(YearMonth{2025, 6}.months_since(YearMonth{2024, 6}) == 12);
    CHECK(YearMonth{2024, 6}.months_since(YearMonth{2025, 6}) == -12);
    CHECK(YearMonth{2024, 1} < YearMonth{2024, 2});
}

TEST_CASE("return rate is returns over sales") {
    CHECK(return_rate(94, 500).value() == doctest::Approx(0.188).epsilon(1e-12));
    CHECK(return_rate(0, 500).value() == 0.0);
    CHECK(return_rate(500, 500).value() == 1.0);

    CHECK_THROWS_AS((void)return_rate(10, 0), Error);
    CHECK_THROWS_WITH_AS((void)return_rate(10, 0), doctest::Contains("ZeroSales"), Error);
    CHECK_THROWS_AS((void)return_rate(501, 500), Error);
    CHECK_THROWS_AS((void)return_rate(-1, 500), Error);
}

TEST_CASE("expected returns round half away from zero") {
    CHECK(expected_return_qty(500, RatePercent(0.1877)) == 94);  // 93.85
    CHECK(expected_return_qty(800, RatePercent(0.2009)) == 161); // 160.72
    CHECK(expected_return_qty(5, RatePercent(0.5)) == 3);        // 2.5 rounds up
    CHECK(expected_return_qty(1, RatePercent(0.5)) == 1);        // 0.5 rounds up
    CHECK(expected_return_qty(3, RatePercent(0.5)) == 2);        // 1.5 rounds up
    CHECK(expected_return_qty(1000, RatePercent(0.0)) == 0);
    CHECK(expected_return_qty(0, RatePercent(0.9)) == 0);
}

TEST_CASE("inventory capacity is net absorbed stock") {
    CHECK(inventory_capacity(621, 94) == 527);
    CHECK(inventory_capacity(100, 100) == 0);
    CHECK(inventory_capacity(100, 0) == 100);
    CHECK_THROWS_AS((void)inventory_capacity(100, 101), Error);
    CHECK_THROWS_AS((void)inventory_capacity(-1, 0), Error);
}

TEST_CASE("freshness ratio spans the quarter points") {
    CHECK(freshness_ratio(2, 4).value() == doctest::Approx(0.5));
    CHECK(freshness_ratio(0, 4).value() == 0.0);
    CHECK(freshness_ratio(4, 4).value() == 1.0);
    CHECK(freshness_ratio(1, 4).value() == doctest::Approx(0.25));

    CHECK_THROWS_WITH_AS((void)freshness_ratio(1, 0), doctest::Contains("ZeroShelfLife"), Error);
    CHECK_THROWS_AS((void)freshness_ratio(5, 4), Error);
    CHECK_THROWS_AS((void)freshness_ratio(-1, 4), Error);
}

TEST_CASE("risk score follows the capped power law") {
    // Independent recomputation: exp(r * ln(e / c)).
    auto oracle = [](double expected, double capacity, double r) {
        return std::exp(r * std::log(expected / capacity));
    };
    auto score = bad_goods_risk_score(94, 527, FreshnessRatio(0.5));
    CHECK(score.value == doctest::Approx(oracle(94, 527, 0.5)).epsilon(1e-12));
    CHECK(score.value == doctest::Approx(0.4223).epsilon(1e-3));
    CHECK_FALSE(score.capped);

    SUBCASE("zero expected returns mean zero risk, even with a zero exponent") {
        auto s = bad_goods_risk_score(0, 527, FreshnessRatio(0.0));
        CHECK(s.value == 0.0);
        CHECK_FALSE(s.capped);
    }
    SUBCASE("zero exponent with positive expected returns saturates") {
        auto s = bad_goods_risk_score(161, 595, FreshnessRatio(0.0));
        CHECK(s.value == 1.0);
        CHECK_FALSE(s.capped); // exactly 1, not clamped down from above
    }
    SUBCASE("expected equal to capacity scores exactly 1") {
        auto s = bad_goods_risk_score(500, 500, FreshnessRatio(0.7));
        CHECK(s.value == 1.0);
        CHECK_FALSE(s.capped);
    }
    SUBCASE("expected above capacity is clamped and flagged") {
        auto s = bad_goods_risk_score(600, 500, FreshnessRatio(1.0));
        CHECK(s.value == 1.0);
        CHECK(s.capped);
    }
    SUBCASE("score always lands in [0, 1]") {
        for (Units expected : {0, 1, 50, 499, 500, 501, 1000}) {
            for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                auto s = bad_goods_risk_score(expected, 500, FreshnessRatio(r));
                CHECK(s.value >= 0.0);
                CHECK(s.value <= 1.0);
            }
        }
    }
    SUBCASE("score is non-decreasing in expected returns") {
        double previous = -1.0;
        for (Units expected : {0, 10, 100, 200, 400, 500, 700}) {
            auto s = bad_goods_risk_score(expected, 500, FreshnessRatio(0.5));
            CHECK(s.value >= previous);
            previous = s.value;
        }
    }
    SUBCASE("zero capacity is rejected") {
        CHECK_THROWS_WITH_AS((void)bad_goods_risk_score(10, 0, FreshnessRatio(0.5)),
                             doctest::Contains("ZeroCapacity"), Error);
    }
}

TEST_CASE("strong types reject out-of-range values") {
    CHECK_THROWS_AS((void)RatePercent(-0.01), Error);
    CHECK_THROWS_AS((void)RatePercent(1.01), Error);
    CHECK_THROWS_AS((void)FreshnessRatio(2.0), Error);
    CHECK_NOTHROW((void)RatePercent(0.0));
    CHECK_NOTHROW((void)RatePercent(1.0));
}

TEST_CASE("classification bands are closed on the left") {
    CHECK(classify_risk(0.0) == RiskLevel::Low);
    CHECK(classify_risk(0.399999) == RiskLevel::Low);
    CHECK(classify_risk(0.4) == RiskLevel::Medium);
    CHECK(classify_risk(0.799999) == RiskLevel::Medium);
    CHECK(classify_risk(0.8) == RiskLevel::High);
    CHECK(classify_risk(1.0) == RiskLevel::High);

    CHECK_THROWS_AS((void)classify_risk(-0.001), Error);
    CHECK_THROWS_AS((void)classify_risk(1.001), Error);
    CHECK_THROWS_AS((void)classify_risk(0.5, 0.8, 0.4), Error); // thresholds out of order

    SUBCASE("every score maps to exactly one band, monotonically") {
        RiskLevel previous = RiskLevel::Low;
        for (int i = 0; i <= 1000; ++i) {
            auto level = classify_risk(i / 1000.0);
            CHECK(static_cast<int>(level) >= static_cast<int>(previous));
            previous = level;
        }
    }
}

TEST_CASE("worked twelve-month example reproduces the reference quantities and scores") {
    for (const auto& row : badgoods::testing::reference_rows()) {
        CAPTURE(row.month);
        auto rate = RatePercent(row.rate_pct / 100.0);
        CHECK(expected_return_qty(row.demand, rate) == row.expected_return);
        auto ratio = freshness_ratio(row.freshness, row.shelf_life);
        auto score = bad_goods_risk_score(row.expected_return, row.capacity, ratio);
        CHECK(std::fabs(score.value - row.score) <= 0.002);
        CHECK(classify_risk(score.value) == row.level);
    }
}
