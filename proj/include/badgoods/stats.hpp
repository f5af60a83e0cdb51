#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "badgoods/ingest.hpp"
#include "badgoods/timeseries.hpp"

namespace badgoods::stats {

// Autocorrelation estimates for lags 0..max_lag with a flat white-noise
// confidence band of +-1.96/sqrt(n).
struct AcfResult {
    int max_lag = 0;
    std::vector<double> coefficients; // coefficients[k] is the lag-k estimate
    double confidence_half_width = 0.0;
    std::size_t n = 0;
};

// Biased-denominator estimator: sums of lagged cross products over the full
// sum of squared deviations. Requires n >= max_lag + 2 and positive variance.
AcfResult acf(const TimeSeries& series, int max_lag);

// Lag budget used by the CLI: n/4 clamped to [1, 12].
int default_max_lag(std::size_t n) noexcept;

// Pearson correlation of two equal-length series. Both need positive variance.
double pearson(const TimeSeries& x, const TimeSeries& y);

// Pairwise Pearson correlations of the six history variables. Constant
// columns are not an error: every entry touching one is marked undefined.
struct CorrelationMatrix {
    std::vector<std::string> variable_names;
    std::vector<std::vector<double>> entries; // NaN encodes "undefined"

    bool defined(std::size_t i, std::size_t j) const;
};

CorrelationMatrix correlation_matrix(const Dataset& dataset);

// Equal-width histogram over [min, max]; the maximum lands in the last bin.
struct Histogram {
    std::vector<double> bin_edges;    // bin_count + 1 ascending edges
    std::vector<std::size_t> counts;  // one per bin, summing to the input size
};

Histogram histogram(const std::vector<double>& values, int bin_count);

// Mean, sample standard deviation (n-1 denominator, 0 when n == 1), extremes.
struct Summary {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

Summary summarize(const TimeSeries& series);

} // namespace badgoods::stats
