#pragma once

#include "qarea/model.hpp"

namespace qarea {

// One evaluation point of a Laplace transform.
struct TransformPoint {
    double gamma = 0.0;
    double value = 1.0;
};

// E[exp(-gamma * J(x))] where J(x) is the area under the free path
// x + B(t) - c t until its first passage of 0:
//
//     exp(c x) * Ai(A + B x) / Ai(A),   A = (2 gamma)^{-2/3} c^2,
//                                       B = (2 gamma)^{1/3}.
//
// Evaluated through the scaled Airy function so that both the huge Airy
// arguments at small gamma and the exp(c x) prefactor cancel analytically;
// the residual exponent -(Bx)^2 (2u+v) / (3 (u+v)^2) with u = sqrt(A+Bx),
// v = sqrt(A) is always nonpositive. Throws DomainError for gamma <= 0
// (the gamma = 0 value is 1 by definition and is supplied by callers).
double transient_lt(double gamma, double x, const QueueParams& params);

// E[exp(-gamma * area)] for the residual busy period seen from a
// stationary start, evaluated as
//
//     (2c / Ai(A)) * Int_0^inf exp(-c x) Ai(A + B x) dx,
//
// cross-checked against the exponential mixture
// Int_0^inf 2c exp(-2cx) transient_lt(gamma, x) dx. The two quadratures
// must agree to 1e-8 or QuadratureFailure is thrown.
double stationary_lt(double gamma, const QueueParams& params);

// The two quadrature routes individually (exposed for consistency tests).
double stationary_lt_displayed(double gamma, const QueueParams& params);
double stationary_lt_mixture(double gamma, const QueueParams& params);

// Closed-form mean of J(x): x^2/(2c) + x/(2c^2).
double mean_transient_area(double x, const QueueParams& params);

// Closed-form mean of the stationary residual busy-period area: 1/(2c^3).
double mean_stationary_area(const QueueParams& params);

// Transform-based numeric means: with g(gamma) = (1 - LT(gamma)) / gamma,
// the combination 2 g(gamma0) - g(2 gamma0) cancels the O(gamma0) bias.
double numeric_mean_transient_area(double x, const QueueParams& params,
                                   double gamma0 = 1e-4);
double numeric_mean_stationary_area(const QueueParams& params, double gamma0 = 1e-4);

}  // namespace qarea
