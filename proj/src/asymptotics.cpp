#include "qarea/asymptotics.hpp"

#include <cmath>

#include "qarea/stats.hpp"

namespace qarea {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}
}  // namespace

double short_window_tail_asymptotic(double u, double T, const QueueParams& params) {
    require_positive(T, "window length");
    if (!(u >= 0.0)) throw DomainError("threshold must be nonnegative");
    const double c = params.c();
    return std::exp(-2.0 * c * u / T - c * c * T / 3.0);
}

double short_window_tail_exact(double u, double T, const QueueParams& params) {
    require_positive(T, "window length");
    const double c = params.c();
    const double a1 = std::sqrt(3.0) * (u + 0.5 * c * T * T) / (T * std::sqrt(T));
    const double shift = 2.0 * c * std::sqrt(T / 3.0);
    const double i1 =
        std::exp(-2.0 * c * u / T - c * c * T / 3.0) * normal_cdf(a1 - shift);
    const double i2 = normal_cdf(-a1);  // survival form avoids cancellation
    return i1 + i2;
}

double area_cost(double M, double a, double s, const QueueParams& params) {
    if (!(s > 0.0)) throw DomainError("excursion length must be positive");
    if (!(a >= 0.0)) throw DomainError("ambient level must be nonnegative");
    require_positive(M, "area scale");
    const double c = params.c();
    const double num = M + 0.5 * c * s * s - a * s;
    return num * num / ((2.0 / 3.0) * s * s * s) + 2.0 * a * c;
}

RateResult window_rate(double T, double M, const QueueParams& params) {
    require_positive(T, "window length");
    require_positive(M, "area scale");
    const double c = params.c();
    const double s_free = std::sqrt(6.0 * M / c);
    RateResult r;
    if (s_free < T) {
        r.branch = Branch::Interior;
        r.a_star = 0.0;
        r.s_star = s_free;
        r.value = (2.0 / 3.0) * std::sqrt(6.0) * c * std::sqrt(c * M);
    } else {
        r.branch = Branch::Boundary;
        r.s_star = T;
        r.a_star = M / T - c * T / 6.0;
        r.value = 2.0 * c * M / T + c * c * T / 3.0;
    }
    return r;
}

double window_rate_value(double T, double M, const QueueParams& params) {
    return window_rate(T, M, params).value;
}

RateResult minimize_area_cost(double T, double M, const QueueParams& params) {
    require_positive(T, "window length");
    require_positive(M, "area scale");
    const double c = params.c();
    RateResult r;
    const double s_free = std::sqrt(6.0 * M / c);
    if (s_free < T) {
        r.branch = Branch::Interior;
        r.a_star = 0.0;
        r.s_star = s_free;
    } else {
        r.branch = Branch::Boundary;
        r.s_star = T;
        r.a_star = M / T - c * T / 6.0;  // unconstrained optimum of a at s = T
    }
    r.value = area_cost(M, r.a_star, r.s_star, params);
    return r;
}

double unconstrained_rate(double M, const QueueParams& params) {
    require_positive(M, "area scale");
    const double c = params.c();
    return (2.0 / 3.0) * std::sqrt(6.0) * c * std::sqrt(c * M);
}

double level_start_cost(double M, double delta, double s, const QueueParams& params) {
    if (!(s > 0.0)) throw DomainError("excursion length must be positive");
    if (!(delta >= 0.0)) throw DomainError("start level must be nonnegative");
    require_positive(M, "area scale");
    const double c = params.c();
    const double num = M + 0.5 * c * s * s - delta * s;
    return num * num / ((2.0 / 3.0) * s * s * s);
}

LevelCost level_start_cost_minimizer(double M, double delta, const QueueParams& params) {
    require_positive(M, "area scale");
    if (!(delta >= 0.0)) throw DomainError("start level must be nonnegative");
    const double c = params.c();
    LevelCost out;
    out.s_star = (-delta + std::sqrt(delta * delta + 6.0 * M * c)) / c;
    out.value = level_start_cost(M, delta, out.s_star, params);
    return out;
}

double first_passage_density(double t, double delta, const QueueParams& params,
                             bool extended_domain) {
    require_positive(delta, "start level");
    if (!(t > 0.0)) {
        if (extended_domain) return 0.0;
        throw DomainError("first_passage_density needs t > 0");
    }
    const double c = params.c();
    const double d = delta - c * t;
    return delta / std::sqrt(kTwoPi * t * t * t) * std::exp(-d * d / (2.0 * t));
}

}  // namespace qarea
