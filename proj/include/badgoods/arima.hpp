#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "badgoods/timeseries.hpp"

namespace badgoods::arima {

// Non-seasonal order (p, d, q): p autoregressive lags, d rounds of
// differencing, q moving-average lags. (0, 0, 0) is the white-noise-with-mean
// model; (0, 1, 0) the random walk.
struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    friend bool operator==(const ArimaOrder& a, const ArimaOrder& b) = default;
};

// A fitted model. The intercept is estimated only for d == 0; differencing
// already removes the level, so integrated models carry no drift term.
struct ArimaFit {
    ArimaOrder order;
    std::vector<double> ar_coeffs;   // phi_1..phi_p
    std::vector<double> ma_coeffs;   // theta_1..theta_q
    double intercept = 0.0;
    bool has_intercept = false;
    double sigma2 = 0.0;             // SSE / n_effective
    double aic = 0.0;
    std::size_t n_effective = 0;     // conditioned residual count, n - d - p
    std::vector<double> residuals;   // one per conditioned observation
};

// Point forecasts with symmetric 95% bands. Baseline models leave the bands
// empty; everything else keeps all three vectors the same length.
struct Forecast {
    int horizon = 0;
    std::vector<double> point;
    std::vector<double> lower_95;
    std::vector<double> upper_95;
};

// Inclusive upper bounds for the order search grid.
struct OrderBounds {
    int p_max = 3;
    int d_max = 2;
    int q_max = 3;
};

// Applies d rounds of first differencing; the result starts d months later
// and is d observations shorter. Requires length > d.
TimeSeries difference(const TimeSeries& series, int d);

// Inverse of difference. `seeds` holds the d level values immediately before
// the differenced stretch, oldest first, so
//   integrate(difference(x, d), first_d_values(x), d)
// reproduces x after the seed prefix. With future differences as input and
// the last d observed levels as seeds it extends the series instead.
TimeSeries integrate(const TimeSeries& diffs, const std::vector<double>& seeds, int d);

// Conditional sum of squared one-step residuals on an already-differenced
// series. Parameter layout: [intercept (only when order.d == 0), phi_1..p,
// theta_1..q]. Residuals condition on the first p observations; pre-sample
// residuals are zero. Parameter vectors whose AR or MA polynomial has a root
// on or inside the unit circle receive a large penalty value instead, which
// steers the optimizer back into the admissible region.
double css_objective(std::span<const double> params, const TimeSeries& differenced,
                     const ArimaOrder& order);

// Estimates coefficients by minimizing css_objective with a deterministic
// multi-start simplex search (zero start, a long-autoregression regression
// start, and +-0.3 perturbations of it). Requires n - d >= max(p, q) + 10
// and a non-constant differenced series.
// AIC = n_eff * ln(sigma2) + 2k with k = p + q + intercept + 1.
ArimaFit fit(const TimeSeries& series, const ArimaOrder& order);

// Exhaustive grid search over p <= p_max, d <= d_max, q <= q_max, returning
// the order with minimal AIC. Near-ties (within 1e-9) break toward smaller
// p+d+q, then smaller d, then smaller p. Candidates that fail to fit are
// skipped, as are degenerate fits whose optimum pins a root against the
// admissibility barrier or whose AR and MA roots nearly cancel (the classic
// over-parameterization signatures); if every candidate drops out the whole
// search fails.
ArimaOrder select_order(const TimeSeries& series, const OrderBounds& bounds = {});

// Recursive expectation forecast. `last_levels` is the tail of the modeled
// series, oldest first, at least p + d values so the recursion has its lags
// and the integration its seeds. In-sample residuals for the MA terms come
// from the fit. 95% bands use the psi-weight expansion of the full model
// (AR polynomial times the differencing operator).
Forecast forecast(const ArimaFit& fit, const std::vector<double>& last_levels, int horizon);

// Gaussian-innovation sample path with a 100-observation burn-in discarded.
// `params` uses the fit layout ([intercept when d == 0, phi, theta]).
// Deterministic for a fixed seed.
TimeSeries simulate(const ArimaOrder& order, std::span<const double> params, double sigma,
                    std::size_t n, std::uint64_t seed);

// Smallest root magnitude of 1 - phi_1 z - ... - phi_p z^p (stationarity) and
// 1 + theta_1 z + ... + theta_q z^q (invertibility). Infinite when the
// effective degree is zero. Exposed for admissibility checks in tests.
double min_ar_root_magnitude(std::span<const double> phi);
double min_ma_root_magnitude(std::span<const double> theta);

// psi[0..count-1] of the integrated model: the moving-average representation
// weights used for forecast error variance.
std::vector<double> psi_weights(const ArimaFit& fit, int count);

} // namespace badgoods::arima
