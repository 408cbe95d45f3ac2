#pragma once

#include "qarea/model.hpp"

namespace qarea {

enum class Scenario { EmptyStart, SymmetricBusy };

const char* scenario_name(Scenario s);

// Cheapest driving path realizing the windowed area event. EmptyStart:
// the workload starts and ends empty, the excursion spans [0, s*] with
// s* = sqrt(6M/c) < T. SymmetricBusy: the window is too short, the
// excursion fills all of [0, T] riding at ambient level a* = M/T - cT/6.
struct MostLikelyPath {
    MostLikelyPath(GridPath g, double a, Scenario sc)
        : grid(std::move(g)), a_star(a), scenario(sc) {}

    GridPath grid;   // driving path f* on [0, T], f*(0) = 0
    double a_star;
    Scenario scenario;
};

MostLikelyPath most_likely_path(double T, double M, const QueueParams& params,
                                std::size_t n_grid);

// (1/2) * sum ((f_{k+1} - f_k)/h)^2 * h; exact for piecewise-linear paths.
double rate_functional(const GridPath& path);

// Discrete reflection of the driving path with initial level q0:
// q_k = max(q_{k-1} + (f_k - f_{k-1}) - c h, 0).
GridPath skorokhod_map(const GridPath& path, const QueueParams& params, double q0);

// Numeric twin of minimize_area_cost: nested golden-section over
// s in (0, T] with an inner 1-D search over a >= 0. Shares no algebra with
// the closed form on purpose.
RateResult minimize_area_cost_numeric(double T, double M, const QueueParams& params,
                                      double tol);

}  // namespace qarea
