#include "badgoods/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace badgoods {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

} // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, double initial_step,
                             double tolerance, int max_iterations) {
    const std::size_t dim = start.size();
    NelderMeadResult result;
    if (dim == 0) {
        result.fx = objective(start);
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += initial_step;
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        values[i] = objective(simplex[i]);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    int iteration = 0;
    for (; iteration < max_iterations; ++iteration) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double spread = std::fabs(values[worst] - values[best]);
        if (spread <= tolerance * (std::fabs(values[best]) + tolerance)) {
            result.converged = true;
            break;
        }

        // Centroid of every vertex except the worst.
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < dim; ++k) {
                centroid[k] += simplex[i][k];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(dim);
        }

        for (std::size_t k = 0; k < dim; ++k) {
            trial[k] = centroid[k] + kReflect * (centroid[k] - simplex[worst][k]);
        }
        double f_reflect = objective(trial);

        if (f_reflect < values[best]) {
            for (std::size_t k = 0; k < dim; ++k) {
                trial2[k] = centroid[k] + kExpand * (trial[k] - centroid[k]);
            }
            double f_expand = objective(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }

        for (std::size_t k = 0; k < dim; ++k) {
            trial2[k] = centroid[k] + kContract * (simplex[worst][k] - centroid[k]);
        }
        double f_contract = objective(trial2);
        if (f_contract < values[worst]) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }

        // Shrink every vertex toward the best one.
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t k = 0; k < dim; ++k) {
                simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = objective(simplex[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    result.x = simplex[best];
    result.fx = values[best];
    result.iterations = iteration;
    return result;
}

} // namespace badgoods
