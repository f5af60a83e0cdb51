#include "badgoods/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "badgoods/errors.hpp"

namespace badgoods::stats {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

// Sum of squared deviations from the mean.
double ssd_of(const std::vector<double>& values, double mean) {
    double sum = 0.0;
    for (double v : values) {
        sum += (v - mean) * (v - mean);
    }
    return sum;
}

double pearson_raw(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = mean_of(x);
    double my = mean_of(y);
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double sxx = ssd_of(x, mx);
    double syy = ssd_of(y, my);
    if (sxx <= 0.0 || syy <= 0.0) {
        return kNan;
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

AcfResult acf(const TimeSeries& series, int max_lag) {
    if (max_lag < 1) {
        fail(Errc::InvalidRange, "max_lag must be at least 1, got " + std::to_string(max_lag));
    }
    std::size_t n = series.size();
    if (n < static_cast<std::size_t>(max_lag) + 2) {
        fail(Errc::SeriesTooShort, "need at least max_lag + 2 = " +
                                       std::to_string(max_lag + 2) + " observations, have " +
                                       std::to_string(n));
    }
    double mean = mean_of(series.values);
    double denom = ssd_of(series.values, mean);
    if (denom <= 0.0) {
        fail(Errc::ZeroVariance, "series \"" + series.field_name + "\" is constant");
    }

    AcfResult result;
    result.max_lag = max_lag;
    result.n = n;
    result.confidence_half_width = 1.96 / std::sqrt(static_cast<double>(n));
    result.coefficients.resize(static_cast<std::size_t>(max_lag) + 1);
    result.coefficients[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
            num += (series.values[t] - mean) * (series.values[t + k] - mean);
        }
        result.coefficients[static_cast<std::size_t>(k)] = num / denom;
    }
    return result;
}

int default_max_lag(std::size_t n) noexcept {
    return static_cast<int>(std::clamp<std::size_t>(n / 4, 1, 12));
}

double pearson(const TimeSeries& x, const TimeSeries& y) {
    if (x.size() != y.size()) {
        fail(Errc::LengthMismatch, "series lengths differ: " + std::to_string(x.size()) +
                                       " vs " + std::to_string(y.size()));
    }
    if (x.size() < 2) {
        fail(Errc::SeriesTooShort, "correlation needs at least 2 observations");
    }
    double r = pearson_raw(x.values, y.values);
    if (std::isnan(r)) {
        fail(Errc::ZeroVariance, "correlation undefined for a constant series");
    }
    return r;
}

bool CorrelationMatrix::defined(std::size_t i, std::size_t j) const {
    return !std::isnan(entries[i][j]);
}

CorrelationMatrix correlation_matrix(const Dataset& dataset) {
    if (dataset.records.size() < 2) {
        fail(Errc::SeriesTooShort, "correlation matrix needs at least 2 records");
    }

    CorrelationMatrix matrix;
    matrix.variable_names = {"bought_qty",        "return_qty",
                             "rate_of_return",    "retailer_capacity",
                             "freshness_in_months", "shelf_life_in_months"};
    std::vector<std::vector<double>> columns(matrix.variable_names.size());
    bool rate_defined = true;
    for (const auto& r : dataset.records) {
        columns[0].push_back(static_cast<double>(r.bought_qty));
        columns[1].push_back(static_cast<double>(r.return_qty));
        if (r.bought_qty > 0) {
            columns[2].push_back(static_cast<double>(r.return_qty) /
                                 static_cast<double>(r.bought_qty));
        } else {
            rate_defined = false;
            columns[2].push_back(0.0);
        }
        columns[3].push_back(static_cast<double>(r.retailer_capacity));
        columns[4].push_back(static_cast<double>(r.freshness_in_months));
        columns[5].push_back(static_cast<double>(r.shelf_life_in_months));
    }

    std::size_t count = columns.size();
    std::vector<bool> degenerate(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        degenerate[i] = ssd_of(columns[i], mean_of(columns[i])) <= 0.0;
    }
    if (!rate_defined) {
        degenerate[2] = true; // a zero-sales month leaves the rate column undefined
    }

    matrix.entries.assign(count, std::vector<double>(count, kNan));
    for (std::size_t i = 0; i < count; ++i) {
        if (degenerate[i]) {
            continue;
        }
        matrix.entries[i][i] = 1.0;
        for (std::size_t j = i + 1; j < count; ++j) {
            if (degenerate[j]) {
                continue;
            }
            double r = pearson_raw(columns[i], columns[j]);
            matrix.entries[i][j] = r;
            matrix.entries[j][i] = r;
        }
    }
    return matrix;
}

Histogram histogram(const std::vector<double>& values, int bin_count) {
    if (values.empty()) {
        fail(Errc::EmptyInput, "histogram needs at least one value");
    }
    if (bin_count < 1) {
        fail(Errc::InvalidRange, "bin count must be at least 1, got " +
                                     std::to_string(bin_count));
    }
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (lo == hi) {
        // Degenerate range: widen symmetrically so edges stay ascending.
        lo -= 0.5;
        hi += 0.5;
    }
    double width = (hi - lo) / static_cast<double>(bin_count);

    Histogram h;
    h.bin_edges.resize(static_cast<std::size_t>(bin_count) + 1);
    for (int i = 0; i <= bin_count; ++i) {
        h.bin_edges[static_cast<std::size_t>(i)] = lo + width * static_cast<double>(i);
    }
    h.bin_edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bin_count), 0);
    for (double v : values) {
        auto bin = static_cast<long long>((v - lo) / width);
        bin = std::clamp<long long>(bin, 0, bin_count - 1);
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    return h;
}

Summary summarize(const TimeSeries& series) {
    if (series.empty()) {
        fail(Errc::EmptyInput, "summary needs at least one observation");
    }
    Summary s;
    s.n = series.size();
    s.mean = mean_of(series.values);
    s.min = *std::min_element(series.values.begin(), series.values.end());
    s.max = *std::max_element(series.values.begin(), series.values.end());
    if (s.n > 1) {
        s.std = std::sqrt(ssd_of(series.values, s.mean) / static_cast<double>(s.n - 1));
    }
    return s;
}

} // namespace badgoods::stats
