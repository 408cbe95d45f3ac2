#pragma once

// Brute-force oracles for the test suite. Deliberately slow and simple so
// they share no algebra with the library code they check.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qarea/asymptotics.hpp"
#include "qarea/model.hpp"

namespace qarea::test {

// Smallest area_cost over a dense rectangular (a, s) grid with s in (0, T].
inline double grid_min_area_cost(double T, double M, const QueueParams& params,
                                 double a_max, std::size_t n_a, std::size_t n_s) {
    double best = area_cost(M, 0.0, T, params);
    for (std::size_t i = 0; i <= n_s; ++i) {
        const double s = T * static_cast<double>(i + 1) / static_cast<double>(n_s + 1);
        for (std::size_t j = 0; j <= n_a; ++j) {
            const double a = a_max * static_cast<double>(j) / static_cast<double>(n_a);
            best = std::min(best, area_cost(M, a, s, params));
        }
    }
    return best;
}

// Smallest level_start_cost over a dense s-grid (10^3 points by default).
inline double grid_min_level_start_cost(double M, double delta,
                                        const QueueParams& params, double s_max,
                                        std::size_t n_s = 1000) {
    double best = level_start_cost(M, delta, s_max, params);
    for (std::size_t i = 1; i <= n_s; ++i) {
        const double s = s_max * static_cast<double>(i) / static_cast<double>(n_s);
        best = std::min(best, level_start_cost(M, delta, s, params));
    }
    return best;
}

}  // namespace qarea::test
