#pragma once

#include "qarea/model.hpp"

namespace qarea {

// Tail of the area over a short window [0, T] from a stationary start.
// The event reduces in law to T*Q0 + (T^{3/2}/sqrt(3))*N > u + c T^2/2 with
// Q0 ~ Exp(2c) independent of N ~ N(0,1).
//
// short_window_tail_asymptotic: the leading-order value
//     exp(-2cu/T - c^2 T/3).
// short_window_tail_exact: the exact probability, integrating the normal
// tail against the exponential start level in closed form:
//     I1 = exp(-2cu/T - c^2 T/3) * Phi(A1 - 2c sqrt(T/3)),
//     I2 = 1 - Phi(A1),            A1 = sqrt(3) (u + c T^2/2) / T^{3/2}.
double short_window_tail_asymptotic(double u, double T, const QueueParams& params);
double short_window_tail_exact(double u, double T, const QueueParams& params);

// Cost of sweeping area M in one excursion of length s at ambient level a:
//     (M + c s^2/2 - a s)^2 / ((2/3) s^3) + 2 a c.
double area_cost(double M, double a, double s, const QueueParams& params);

// Decay rate of the windowed area tail: cheapest (a, s) with s in (0, T].
//     interior  (sqrt(6M/c) <  T): value (2/3) sqrt(6) c sqrt(cM), a*=0
//     boundary  (sqrt(6M/c) >= T): value 2cM/T + c^2 T/3, s*=T, a*=M/T-cT/6
double window_rate_value(double T, double M, const QueueParams& params);
RateResult window_rate(double T, double M, const QueueParams& params);

// Same result reached through the optimizer: build (a*, s*) from the
// stationarity conditions and evaluate area_cost there. window_rate and
// this function must agree; the numeric minimizer is tested against both.
RateResult minimize_area_cost(double T, double M, const QueueParams& params);

// Rate with no window constraint: (2/3) sqrt(6) c sqrt(cM).
double unconstrained_rate(double M, const QueueParams& params);

// Excursion cost when the path starts at level delta and carries no
// ambient charge: (M + c s^2/2 - delta s)^2 / ((2/3) s^3).
double level_start_cost(double M, double delta, double s, const QueueParams& params);

struct LevelCost {
    double s_star = 0.0;
    double value = 0.0;
};

// Minimizer s*(delta) = (-delta + sqrt(delta^2 + 6Mc))/c and the cost there.
LevelCost level_start_cost_minimizer(double M, double delta, const QueueParams& params);

// Density of the first-passage time from level delta to 0 (inverse
// Gaussian): delta / sqrt(2 pi t^3) * exp(-(delta - c t)^2 / (2t)).
// t <= 0 raises unless the caller opts into the extended domain (then 0).
double first_passage_density(double t, double delta, const QueueParams& params,
                             bool extended_domain = false);

}  // namespace qarea
