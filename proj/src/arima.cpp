#include "badgoods/arima.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "badgoods/errors.hpp"
#include "badgoods/nelder_mead.hpp"

namespace badgoods::arima {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Roots must stay at least this far outside the unit circle; anything closer
// is treated as non-stationary / non-invertible during estimation. Comfortably
// above the 1 + 1e-6 floor the fitted models guarantee.
constexpr double kRootMargin = 1.001;

constexpr double kPenaltyScale = 1e12;

// All roots of a monic-normalized polynomial c[0] + c[1] z + ... + c[m] z^m
// by Durand-Kerner iteration. Degree <= 3 here, so convergence is quick.
std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs) {
    std::size_t degree = coeffs.size() - 1;
    while (degree >= 1 && std::fabs(coeffs[degree]) < 1e-10) {
        --degree;
    }
    if (degree == 0) {
        return {};
    }
    std::vector<std::complex<double>> monic(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) {
        monic[i] = coeffs[i] / coeffs[degree];
    }
    std::vector<std::complex<double>> roots(degree);
    std::complex<double> seed(0.4, 0.9);
    roots[0] = seed;
    for (std::size_t i = 1; i < degree; ++i) {
        roots[i] = roots[i - 1] * seed;
    }
    for (int iteration = 0; iteration < 200; ++iteration) {
        double shift = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            std::complex<double> value = monic[degree];
            for (std::size_t k = degree; k-- > 0;) {
                value = value * roots[i] + monic[k];
            }
            std::complex<double> denom(1.0, 0.0);
            for (std::size_t j = 0; j < degree; ++j) {
                if (j != i) {
                    denom *= roots[i] - roots[j];
                }
            }
            std::complex<double> delta = value / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) {
            break;
        }
    }
    return roots;
}

double min_root_magnitude(const std::vector<double>& coeffs) {
    auto roots = polynomial_roots(coeffs);
    double smallest = kInf;
    for (const auto& r : roots) {
        smallest = std::min(smallest, std::abs(r));
    }
    return smallest;
}

std::vector<double> ar_characteristic(std::span<const double> phi) {
    std::vector<double> coeffs(phi.size() + 1);
    coeffs[0] = 1.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        coeffs[i + 1] = -phi[i];
    }
    return coeffs;
}

std::vector<double> ma_characteristic(std::span<const double> theta) {
    std::vector<double> coeffs(theta.size() + 1);
    coeffs[0] = 1.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        coeffs[i + 1] = theta[i];
    }
    return coeffs;
}

// Total shortfall of root magnitudes against the admissibility margin;
// zero when every root is far enough outside the unit circle.
double admissibility_violation(std::span<const double> phi, std::span<const double> theta) {
    double violation = 0.0;
    for (const auto& r : polynomial_roots(ar_characteristic(phi))) {
        violation += std::max(0.0, kRootMargin - std::abs(r));
    }
    for (const auto& r : polynomial_roots(ma_characteristic(theta))) {
        violation += std::max(0.0, kRootMargin - std::abs(r));
    }
    return violation;
}

// Selection-stage rejection for a fitted candidate. Two degeneracies mean the
// order has no valid interior optimum and would only win the AIC race by
// chasing noise: a root pinned against the admissibility barrier (the true
// CSS minimum for this order lies in the non-stationary/non-invertible
// region), and an AR root nearly coinciding with an MA root (the factors
// cancel, so the extra parameters are not identified). Both are classical
// over-parameterization signatures; such candidates drop out of the grid the
// same way unfittable ones do.
bool degenerate_candidate(const ArimaFit& f) {
    constexpr double kBarrierTolerance = 1e-3;
    // Redundant AR/MA pairs converge at an n^(-1/4) rate, so near-canceling
    // roots cluster well inside 0.25 at the sample sizes the grid sees, while
    // genuinely distinct factors sit further than 1 apart.
    constexpr double kCancelDistance = 0.25;
    auto ar_roots = polynomial_roots(ar_characteristic(f.ar_coeffs));
    auto ma_roots = polynomial_roots(ma_characteristic(f.ma_coeffs));
    for (const auto& r : ar_roots) {
        if (std::abs(r) <= kRootMargin + kBarrierTolerance) {
            return true;
        }
    }
    for (const auto& r : ma_roots) {
        if (std::abs(r) <= kRootMargin + kBarrierTolerance) {
            return true;
        }
    }
    for (const auto& a : ar_roots) {
        for (const auto& m : ma_roots) {
            if (std::abs(a - m) < kCancelDistance) {
                return true;
            }
        }
    }
    return false;
}

struct ParamView {
    double intercept = 0.0;
    std::span<const double> phi;
    std::span<const double> theta;
};

ParamView split_params(std::span<const double> params, const ArimaOrder& order) {
    bool has_intercept = order.d == 0;
    std::size_t expected =
        (has_intercept ? 1u : 0u) + static_cast<std::size_t>(order.p) +
        static_cast<std::size_t>(order.q);
    if (params.size() != expected) {
        fail(Errc::InadmissibleParams,
             "expected " + std::to_string(expected) + " parameters, got " +
                 std::to_string(params.size()));
    }
    ParamView view;
    std::size_t offset = 0;
    if (has_intercept) {
        view.intercept = params[0];
        offset = 1;
    }
    view.phi = params.subspan(offset, static_cast<std::size_t>(order.p));
    view.theta = params.subspan(offset + static_cast<std::size_t>(order.p),
                                static_cast<std::size_t>(order.q));
    return view;
}

// Residual recursion shared by the objective and the final fit. Writes the
// conditioned residuals (t >= p) into `residuals` when non-null; returns SSE.
double css_residuals(const std::vector<double>& w, const ParamView& view, int p, int q,
                     std::vector<double>* residuals) {
    std::size_t n = w.size();
    std::vector<double> eps(n, 0.0);
    double sse = 0.0;
    if (residuals) {
        residuals->clear();
        residuals->reserve(n - static_cast<std::size_t>(p));
    }
    for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
        double prediction = view.intercept;
        for (int i = 0; i < p; ++i) {
            prediction += view.phi[static_cast<std::size_t>(i)] * w[t - 1 - static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < q; ++j) {
            std::size_t lag = static_cast<std::size_t>(j) + 1;
            if (t >= lag) {
                prediction += view.theta[static_cast<std::size_t>(j)] * eps[t - lag];
            }
        }
        double e = w[t] - prediction;
        eps[t] = e;
        sse += e * e;
        if (residuals) {
            residuals->push_back(e);
        }
    }
    return sse;
}

double sample_mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

// Biased autocovariances for lags 0..max_lag.
std::vector<double> autocovariances(const std::vector<double>& x, int max_lag) {
    double mean = sample_mean(x);
    std::size_t n = x.size();
    std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double sum = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
            sum += (x[t] - mean) * (x[t + static_cast<std::size_t>(k)] - mean);
        }
        gamma[static_cast<std::size_t>(k)] = sum / static_cast<double>(n);
    }
    return gamma;
}

// Levinson-Durbin: Yule-Walker AR(order) coefficients from autocovariances.
std::vector<double> levinson_ar(const std::vector<double>& gamma, int order) {
    std::vector<double> phi(static_cast<std::size_t>(order), 0.0);
    std::vector<double> prev(static_cast<std::size_t>(order), 0.0);
    double variance = gamma[0];
    if (variance <= 0.0) {
        return phi;
    }
    for (int k = 1; k <= order; ++k) {
        double acc = gamma[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            acc -= prev[static_cast<std::size_t>(j - 1)] * gamma[static_cast<std::size_t>(k - j)];
        }
        double reflection = acc / variance;
        phi[static_cast<std::size_t>(k - 1)] = reflection;
        for (int j = 1; j < k; ++j) {
            phi[static_cast<std::size_t>(j - 1)] =
                prev[static_cast<std::size_t>(j - 1)] -
                reflection * prev[static_cast<std::size_t>(k - j - 1)];
        }
        variance *= (1.0 - reflection * reflection);
        if (variance <= 0.0) {
            break;
        }
        std::copy(phi.begin(), phi.begin() + k, prev.begin());
    }
    return phi;
}

// Least squares via normal equations; small systems only. Returns false when
// the system is numerically singular.
bool solve_normal_equations(const std::vector<std::vector<double>>& design,
                            const std::vector<double>& target, std::vector<double>& solution) {
    std::size_t rows = design.size();
    std::size_t cols = rows ? design[0].size() : 0;
    if (rows < cols || cols == 0) {
        return false;
    }
    std::vector<std::vector<double>> ata(cols, std::vector<double>(cols + 1, 0.0));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double sum = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                sum += design[r][i] * design[r][j];
            }
            ata[i][j] = sum;
        }
        double sum = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            sum += design[r][i] * target[r];
        }
        ata[i][cols] = sum;
    }
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < cols; ++r) {
            if (std::fabs(ata[r][col]) > std::fabs(ata[pivot][col])) {
                pivot = r;
            }
        }
        if (std::fabs(ata[pivot][col]) < 1e-12) {
            return false;
        }
        std::swap(ata[col], ata[pivot]);
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == col) {
                continue;
            }
            double factor = ata[r][col] / ata[col][col];
            for (std::size_t c = col; c <= cols; ++c) {
                ata[r][c] -= factor * ata[col][c];
            }
        }
    }
    solution.resize(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        solution[i] = ata[i][cols] / ata[i][i];
    }
    return true;
}

// Long-autoregression two-stage start: estimate a high-order AR, take its
// residuals as innovation proxies, then regress the series on its own lags
// and lagged proxies to seed [intercept, phi, theta].
bool long_ar_start(const std::vector<double>& w, const ArimaOrder& order, bool has_intercept,
                   std::vector<double>& start) {
    int p = order.p;
    int q = order.q;
    int m = static_cast<int>(w.size());
    int long_order = std::min(std::max(8, p + q + 2), m / 2 - 1);
    if (long_order < std::max(p, q) || long_order < 1) {
        return false;
    }
    if (m - std::max(p, long_order + q) < p + q + 2) {
        return false;
    }
    auto gamma = autocovariances(w, long_order);
    if (gamma[0] <= 0.0) {
        return false;
    }
    auto long_phi = levinson_ar(gamma, long_order);

    double mean = sample_mean(w);
    std::vector<double> proxy(w.size(), 0.0);
    for (int t = long_order; t < m; ++t) {
        double prediction = mean;
        for (int i = 0; i < long_order; ++i) {
            prediction += long_phi[static_cast<std::size_t>(i)] *
                          (w[static_cast<std::size_t>(t - 1 - i)] - mean);
        }
        proxy[static_cast<std::size_t>(t)] = w[static_cast<std::size_t>(t)] - prediction;
    }

    int begin = std::max(p, long_order + q);
    std::vector<std::vector<double>> design;
    std::vector<double> target;
    for (int t = begin; t < m; ++t) {
        std::vector<double> row;
        if (has_intercept) {
            row.push_back(1.0);
        }
        for (int i = 1; i <= p; ++i) {
            row.push_back(w[static_cast<std::size_t>(t - i)]);
        }
        for (int j = 1; j <= q; ++j) {
            row.push_back(proxy[static_cast<std::size_t>(t - j)]);
        }
        design.push_back(std::move(row));
        target.push_back(w[static_cast<std::size_t>(t)]);
    }
    std::vector<double> solution;
    if (!solve_normal_equations(design, target, solution)) {
        return false;
    }

    // Pull an inadmissible seed back toward zero until the optimizer can use it.
    std::size_t offset = has_intercept ? 1u : 0u;
    for (int attempt = 0; attempt < 30; ++attempt) {
        std::span<const double> phi(solution.data() + offset, static_cast<std::size_t>(p));
        std::span<const double> theta(solution.data() + offset + static_cast<std::size_t>(p),
                                      static_cast<std::size_t>(q));
        if (admissibility_violation(phi, theta) == 0.0) {
            start = solution;
            return true;
        }
        for (std::size_t i = offset; i < solution.size(); ++i) {
            solution[i] *= 0.85;
        }
    }
    return false;
}

double aic_of(double sigma2, std::size_t n_effective, int parameter_count) {
    double safe = std::max(sigma2, 1e-300);
    return static_cast<double>(n_effective) * std::log(safe) +
           2.0 * static_cast<double>(parameter_count);
}

} // namespace

double min_ar_root_magnitude(std::span<const double> phi) {
    return min_root_magnitude(ar_characteristic(phi));
}

double min_ma_root_magnitude(std::span<const double> theta) {
    return min_root_magnitude(ma_characteristic(theta));
}

TimeSeries difference(const TimeSeries& series, int d) {
    if (d < 0) {
        fail(Errc::InvalidRange, "differencing order must be non-negative, got " +
                                     std::to_string(d));
    }
    if (series.size() <= static_cast<std::size_t>(d)) {
        fail(Errc::SeriesTooShort, "need more than d = " + std::to_string(d) +
                                       " observations, have " + std::to_string(series.size()));
    }
    TimeSeries out = series;
    for (int round = 0; round < d; ++round) {
        std::vector<double> next(out.values.size() - 1);
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
            next[i] = out.values[i + 1] - out.values[i];
        }
        out.values = std::move(next);
    }
    out.start_month = series.start_month.plus_months(d);
    return out;
}

TimeSeries integrate(const TimeSeries& diffs, const std::vector<double>& seeds, int d) {
    if (d < 0) {
        fail(Errc::InvalidRange, "integration order must be non-negative, got " +
                                     std::to_string(d));
    }
    if (seeds.size() != static_cast<std::size_t>(d)) {
        fail(Errc::SeedMismatch, "need exactly d = " + std::to_string(d) + " seed levels, got " +
                                     std::to_string(seeds.size()));
    }
    if (d == 0) {
        return diffs;
    }
    // Difference pyramid of the seed prefix: state[k] is the latest value of
    // the k-th difference, state[0] the latest level.
    std::vector<std::vector<double>> pyramid;
    pyramid.push_back(seeds);
    for (int k = 1; k < d; ++k) {
        const auto& prev = pyramid.back();
        std::vector<double> next(prev.size() - 1);
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            next[i] = prev[i + 1] - prev[i];
        }
        pyramid.push_back(std::move(next));
    }
    std::vector<double> state(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        state[static_cast<std::size_t>(k)] = pyramid[static_cast<std::size_t>(k)].back();
    }

    TimeSeries out = diffs;
    for (std::size_t i = 0; i < diffs.values.size(); ++i) {
        double increment = diffs.values[i];
        for (int k = d - 1; k >= 0; --k) {
            state[static_cast<std::size_t>(k)] += increment;
            increment = state[static_cast<std::size_t>(k)];
        }
        out.values[i] = state[0];
    }
    return out;
}

double css_objective(std::span<const double> params, const TimeSeries& differenced,
                     const ArimaOrder& order) {
    ParamView view = split_params(params, order);
    double violation = admissibility_violation(view.phi, view.theta);
    if (violation > 0.0) {
        return kPenaltyScale * (1.0 + violation);
    }
    if (differenced.size() <= static_cast<std::size_t>(order.p)) {
        fail(Errc::SeriesTooShort, "series shorter than AR order");
    }
    return css_residuals(differenced.values, view, order.p, order.q, nullptr);
}

ArimaFit fit(const TimeSeries& series, const ArimaOrder& order) {
    if (order.p < 0 || order.d < 0 || order.q < 0) {
        fail(Errc::InvalidRange, "order components must be non-negative");
    }
    std::size_t n = series.size();
    std::size_t needed = static_cast<std::size_t>(order.d) +
                         static_cast<std::size_t>(std::max(order.p, order.q)) + 10;
    if (n < needed) {
        fail(Errc::SeriesTooShort, "need at least " + std::to_string(needed) +
                                       " observations for this order, have " +
                                       std::to_string(n));
    }
    TimeSeries w = difference(series, order.d);
    double mean = sample_mean(w.values);
    double ssd = 0.0;
    for (double v : w.values) {
        ssd += (v - mean) * (v - mean);
    }
    if (ssd <= 0.0) {
        fail(Errc::ZeroVariance, "differenced series is constant");
    }

    bool has_intercept = order.d == 0;
    int p = order.p;
    int q = order.q;
    std::size_t dim = (has_intercept ? 1u : 0u) + static_cast<std::size_t>(p + q);

    std::vector<double> best_params;
    if (dim == 0) {
        best_params = {};
    } else {
        auto objective = [&](std::span<const double> candidate) {
            return css_objective(candidate, w, order);
        };

        std::vector<std::vector<double>> starts;
        std::vector<double> zeros(dim, 0.0);
        if (has_intercept) {
            zeros[0] = mean;
        }
        starts.push_back(zeros);
        std::vector<double> regression;
        if (p + q > 0 && long_ar_start(w.values, order, has_intercept, regression)) {
            starts.push_back(regression);
        } else {
            regression = zeros;
        }
        std::size_t offset = has_intercept ? 1u : 0u;
        for (double delta : {0.3, -0.3}) {
            std::vector<double> shifted = regression;
            for (std::size_t i = offset; i < dim; ++i) {
                shifted[i] += delta;
            }
            starts.push_back(std::move(shifted));
        }
        std::vector<double> alternating = zeros;
        for (std::size_t i = offset; i < dim; ++i) {
            alternating[i] = ((i - offset) % 2 == 0) ? 0.3 : -0.3;
        }
        starts.push_back(std::move(alternating));

        double best_value = kInf;
        for (const auto& start : starts) {
            auto run = nelder_mead(objective, start, 0.1, 1e-10,
                                   500 * static_cast<int>(dim) + 200);
            if (run.fx < best_value) {
                best_value = run.fx;
                best_params = run.x;
            }
        }
        if (!std::isfinite(best_value) || best_value >= kPenaltyScale) {
            fail(Errc::OptimizerFailed, "no admissible parameter vector found");
        }
    }

    ArimaFit result;
    result.order = order;
    result.has_intercept = has_intercept;
    ParamView view = split_params(best_params, order);
    result.intercept = view.intercept;
    result.ar_coeffs.assign(view.phi.begin(), view.phi.end());
    result.ma_coeffs.assign(view.theta.begin(), view.theta.end());
    double sse = css_residuals(w.values, view, p, q, &result.residuals);
    result.n_effective = w.size() - static_cast<std::size_t>(p);
    result.sigma2 = sse / static_cast<double>(result.n_effective);
    int parameter_count = p + q + (has_intercept ? 1 : 0) + 1; // +1 for sigma2
    result.aic = aic_of(result.sigma2, result.n_effective, parameter_count);
    return result;
}

ArimaOrder select_order(const TimeSeries& series, const OrderBounds& bounds) {
    if (bounds.p_max < 0 || bounds.d_max < 0 || bounds.q_max < 0) {
        fail(Errc::InvalidRange, "order bounds must be non-negative");
    }
    struct Candidate {
        ArimaOrder order;
        double aic;
    };
    std::vector<Candidate> fitted;
    for (int d = 0; d <= bounds.d_max; ++d) {
        for (int p = 0; p <= bounds.p_max; ++p) {
            for (int q = 0; q <= bounds.q_max; ++q) {
                ArimaOrder order{p, d, q};
                try {
                    ArimaFit f = fit(series, order);
                    if (!degenerate_candidate(f)) {
                        fitted.push_back({order, f.aic});
                    }
                } catch (const Error&) {
                    // Unfittable candidates (too short, constant after
                    // differencing, optimizer stuck) simply drop out.
                }
            }
        }
    }
    if (fitted.empty()) {
        fail(Errc::AllCandidatesFailed, "no order in the grid produced a fit");
    }
    double best_aic = kInf;
    for (const auto& c : fitted) {
        best_aic = std::min(best_aic, c.aic);
    }
    const Candidate* best = nullptr;
    for (const auto& c : fitted) {
        if (c.aic > best_aic + 1e-9) {
            continue; // not within the tie band
        }
        if (!best) {
            best = &c;
            continue;
        }
        auto key = [](const ArimaOrder& o) {
            return std::tuple(o.p + o.d + o.q, o.d, o.p, o.q);
        };
        if (key(c.order) < key(best->order)) {
            best = &c;
        }
    }
    return best->order;
}

std::vector<double> psi_weights(const ArimaFit& fit, int count) {
    // Full AR side: stationary polynomial times (1 - B)^d.
    std::vector<double> full_ar(static_cast<std::size_t>(fit.order.p) + 1, 0.0);
    full_ar[0] = 1.0;
    for (int i = 0; i < fit.order.p; ++i) {
        full_ar[static_cast<std::size_t>(i) + 1] = -fit.ar_coeffs[static_cast<std::size_t>(i)];
    }
    for (int round = 0; round < fit.order.d; ++round) {
        std::vector<double> next(full_ar.size() + 1, 0.0);
        for (std::size_t i = 0; i < full_ar.size(); ++i) {
            next[i] += full_ar[i];
            next[i + 1] -= full_ar[i];
        }
        full_ar = std::move(next);
    }

    std::vector<double> psi(static_cast<std::size_t>(std::max(count, 0)), 0.0);
    if (count <= 0) {
        return psi;
    }
    psi[0] = 1.0;
    std::size_t ar_degree = full_ar.size() - 1;
    for (int j = 1; j < count; ++j) {
        double value = 0.0;
        if (j <= fit.order.q) {
            value += fit.ma_coeffs[static_cast<std::size_t>(j) - 1];
        }
        for (std::size_t i = 1; i <= ar_degree && i <= static_cast<std::size_t>(j); ++i) {
            value -= full_ar[i] * psi[static_cast<std::size_t>(j) - i];
        }
        psi[static_cast<std::size_t>(j)] = value;
    }
    return psi;
}

Forecast forecast(const ArimaFit& fit, const std::vector<double>& last_levels, int horizon) {
    if (horizon < 1) {
        fail(Errc::InvalidHorizon, "horizon must be at least 1, got " + std::to_string(horizon));
    }
    int p = fit.order.p;
    int d = fit.order.d;
    int q = fit.order.q;
    if (last_levels.size() < static_cast<std::size_t>(p + d)) {
        fail(Errc::SeedMismatch, "need the last " + std::to_string(p + d) +
                                     " levels, got " + std::to_string(last_levels.size()));
    }

    // Recent differenced history, oldest first.
    std::vector<double> recent;
    {
        std::vector<double> work = last_levels;
        for (int round = 0; round < d; ++round) {
            std::vector<double> next(work.size() - 1);
            for (std::size_t i = 0; i + 1 < work.size(); ++i) {
                next[i] = work[i + 1] - work[i];
            }
            work = std::move(next);
        }
        recent = std::move(work);
    }

    // Trailing in-sample residuals feed the MA terms; beyond the sample the
    // expected innovation is zero.
    std::vector<double> recent_eps(static_cast<std::size_t>(q), 0.0);
    for (int j = 0; j < q; ++j) {
        std::size_t available = fit.residuals.size();
        if (static_cast<std::size_t>(j) < available) {
            recent_eps[static_cast<std::size_t>(q - 1 - j)] =
                fit.residuals[available - 1 - static_cast<std::size_t>(j)];
        }
    }

    std::vector<double> diff_path(static_cast<std::size_t>(horizon), 0.0);
    for (int h = 0; h < horizon; ++h) {
        double value = fit.intercept;
        for (int i = 1; i <= p; ++i) {
            int index = h - i;
            double lagged;
            if (index >= 0) {
                lagged = diff_path[static_cast<std::size_t>(index)];
            } else {
                std::size_t back = static_cast<std::size_t>(-index);
                lagged = recent[recent.size() - back];
            }
            value += fit.ar_coeffs[static_cast<std::size_t>(i - 1)] * lagged;
        }
        for (int j = 1; j <= q; ++j) {
            int index = h - j;
            if (index < 0) {
                std::size_t back = static_cast<std::size_t>(-index);
                if (back <= recent_eps.size()) {
                    value += fit.ma_coeffs[static_cast<std::size_t>(j - 1)] *
                             recent_eps[recent_eps.size() - back];
                }
            }
            // Future innovations have expectation zero.
        }
        diff_path[static_cast<std::size_t>(h)] = value;
    }

    Forecast out;
    out.horizon = horizon;
    if (d == 0) {
        out.point = diff_path;
    } else {
        TimeSeries diffs;
        diffs.values = diff_path;
        std::vector<double> seeds(last_levels.end() - d, last_levels.end());
        out.point = integrate(diffs, seeds, d).values;
    }

    auto psi = psi_weights(fit, horizon);
    double sigma = std::sqrt(std::max(fit.sigma2, 0.0));
    out.lower_95.resize(static_cast<std::size_t>(horizon));
    out.upper_95.resize(static_cast<std::size_t>(horizon));
    double cumulative = 0.0;
    for (int h = 0; h < horizon; ++h) {
        cumulative += psi[static_cast<std::size_t>(h)] * psi[static_cast<std::size_t>(h)];
        double half_width = 1.96 * sigma * std::sqrt(cumulative);
        out.lower_95[static_cast<std::size_t>(h)] = out.point[static_cast<std::size_t>(h)] - half_width;
        out.upper_95[static_cast<std::size_t>(h)] = out.point[static_cast<std::size_t>(h)] + half_width;
    }
    return out;
}

TimeSeries simulate(const ArimaOrder& order, std::span<const double> params, double sigma,
                    std::size_t n, std::uint64_t seed) {
    if (n < 1) {
        fail(Errc::InvalidRange, "need at least one observation");
    }
    if (sigma < 0.0) {
        fail(Errc::InvalidRange, "sigma must be non-negative");
    }
    ParamView view = split_params(params, order);
    if (admissibility_violation(view.phi, view.theta) > 0.0) {
        fail(Errc::InadmissibleParams,
             "simulation parameters must be stationary and invertible");
    }

    constexpr std::size_t kBurnIn = 100;
    std::size_t total = n + kBurnIn;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> eps(total);
    for (double& e : eps) {
        e = sigma * normal(rng);
    }
    std::vector<double> arma(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double value = view.intercept + eps[t];
        for (int i = 1; i <= order.p; ++i) {
            if (t >= static_cast<std::size_t>(i)) {
                value += view.phi[static_cast<std::size_t>(i - 1)] * arma[t - static_cast<std::size_t>(i)];
            }
        }
        for (int j = 1; j <= order.q; ++j) {
            if (t >= static_cast<std::size_t>(j)) {
                value += view.theta[static_cast<std::size_t>(j - 1)] * eps[t - static_cast<std::size_t>(j)];
            }
        }
        arma[t] = value;
    }

    TimeSeries out;
    out.start_month = YearMonth{2000, 1};
    out.field_name = "simulated";
    out.values.assign(arma.begin() + static_cast<std::ptrdiff_t>(kBurnIn), arma.end());
    for (int round = 0; round < order.d; ++round) {
        double level = 0.0;
        for (double& v : out.values) {
            level += v;
            v = level;
        }
    }
    return out;
}

} // namespace badgoods::arima
