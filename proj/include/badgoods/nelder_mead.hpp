#pragma once

#include <functional>
#include <span>
#include <vector>

namespace badgoods {

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Downhill simplex minimizer (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). Fully deterministic: the simplex is seeded from `start` by
// stepping each coordinate by `initial_step`. Stops when the spread of
// function values across the simplex falls below `tolerance` relative to the
// best value, or after `max_iterations`.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, double initial_step,
                             double tolerance, int max_iterations);

} // namespace badgoods
