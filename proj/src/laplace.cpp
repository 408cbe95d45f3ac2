#include "qarea/laplace.hpp"

#include <cmath>

#include "qarea/airy.hpp"
#include "qarea/quadrature.hpp"

namespace qarea {

namespace {

struct AiryArgs {
    double A = 0.0;  // (2 gamma)^{-2/3} c^2
    double B = 0.0;  // (2 gamma)^{1/3}
};

AiryArgs airy_args(double gamma, const QueueParams& params) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("transform argument must be positive");
    }
    const double c = params.c();
    AiryArgs out;
    out.B = std::cbrt(2.0 * gamma);
    out.A = c * c / std::cbrt(4.0 * gamma * gamma);
    return out;
}

// cx + zeta(A) - zeta(A + Bx) written without cancellation, using
// B sqrt(A) = c and zeta(y) = (2/3) y^{3/2}:
//   L = -(Bx)^2 (2u + v) / (3 (u + v)^2),  u = sqrt(A+Bx), v = sqrt(A).
double stable_exponent(const AiryArgs& args, double x) {
    const double bx = args.B * x;
    const double u = std::sqrt(args.A + bx);
    const double v = std::sqrt(args.A);
    const double s = u + v;
    return -bx * bx * (2.0 * u + v) / (3.0 * s * s);
}

// Upper quadrature limit: every integrand below is bounded by
// 2c exp(-2cx) (respectively exp(-cx) after scaling), so the tail beyond
// x = 21/c contributes less than exp(-42) < 1e-18.
double truncation_point(const QueueParams& params) { return 21.0 / params.c(); }

}  // namespace

double transient_lt(double gamma, double x, const QueueParams& params) {
    if (!(x >= 0.0)) throw DomainError("start level must be nonnegative");
    const AiryArgs args = airy_args(gamma, params);
    const double ratio = ai_scaled(args.A + args.B * x) / ai_scaled(args.A);
    return ratio * std::exp(stable_exponent(args, x));
}

double stationary_lt_displayed(double gamma, const QueueParams& params) {
    const AiryArgs args = airy_args(gamma, params);
    const double c = params.c();
    const double denom = ai_scaled(args.A);
    // exp(-cx) Ai(A+Bx) / Ai(A) = ai_scaled(A+Bx)/ai_scaled(A)
    //                             * exp(L(x) - 2cx).
    auto integrand = [&](double x) {
        return ai_scaled(args.A + args.B * x) / denom *
               std::exp(stable_exponent(args, x) - 2.0 * c * x);
    };
    return 2.0 * c * integrate(integrand, 0.0, truncation_point(params));
}

double stationary_lt_mixture(double gamma, const QueueParams& params) {
    const double c = params.c();
    auto integrand = [&](double x) {
        return 2.0 * c * std::exp(-2.0 * c * x) * transient_lt(gamma, x, params);
    };
    return integrate(integrand, 0.0, truncation_point(params));
}

double stationary_lt(double gamma, const QueueParams& params) {
    const double displayed = stationary_lt_displayed(gamma, params);
    const double mixture = stationary_lt_mixture(gamma, params);
    if (std::abs(displayed - mixture) > 1e-8) {
        throw QuadratureFailure("transform quadrature routes disagree");
    }
    return displayed;
}

double mean_transient_area(double x, const QueueParams& params) {
    if (!(x >= 0.0)) throw DomainError("start level must be nonnegative");
    const double c = params.c();
    return x * x / (2.0 * c) + x / (2.0 * c * c);
}

double mean_stationary_area(const QueueParams& params) {
    const double c = params.c();
    return 1.0 / (2.0 * c * c * c);
}

namespace {

template <class Lt>
double richardson_mean(Lt&& lt, double gamma0) {
    if (!(gamma0 > 0.0)) throw DomainError("differencing step must be positive");
    const auto g = [&](double gamma) { return (1.0 - lt(gamma)) / gamma; };
    return 2.0 * g(gamma0) - g(2.0 * gamma0);
}

}  // namespace

double numeric_mean_transient_area(double x, const QueueParams& params, double gamma0) {
    return richardson_mean([&](double g) { return transient_lt(g, x, params); }, gamma0);
}

double numeric_mean_stationary_area(const QueueParams& params, double gamma0) {
    return richardson_mean([&](double g) { return stationary_lt_displayed(g, params); },
                           gamma0);
}

}  // namespace qarea
