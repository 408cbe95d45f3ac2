#include "qarea/airy.hpp"

#include <cmath>

#include "qarea/quadrature.hpp"

namespace qarea {

namespace {

// Compensated (double-double) arithmetic. The Maclaurin series of Ai(x)
// cancels by a factor of about exp(2*zeta(x)), which is 3e13 at x = 8;
// plain doubles lose 13 digits there, a 106-bit accumulator loses none
// that matter at the 1e-10 contract.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_renorm(double s, double e) {
    const double hi = s + e;
    return {hi, e - (hi - s)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_renorm(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_mul_d(DD a, double b) {
    const double p = a.hi * b;
    const double e = std::fma(a.hi, b, -p);
    return quick_renorm(p, e + a.lo * b);
}

inline DD dd_div_d(DD a, double b) {
    const double q = a.hi / b;
    const double p = q * b;
    const double e = std::fma(q, b, -p);
    return quick_renorm(q, ((a.hi - p) - e + a.lo) / b);
}

constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0Hi = -0.2588194037928068;
constexpr double kAip0Lo = 2.522243111610832e-17;

constexpr double kSwitch = 8.0;
constexpr double kTwoSqrtPi = 3.5449077018110320708;

// Sum of y'' = x*y power series with c0 = Ai(0), c1 = Ai'(0):
// c_{n+3} = c_n / ((n+2)(n+3)). Two nonzero coefficient chains.
DD series_sum(double x) {
    DD total = dd_add({kAi0Hi, kAi0Lo}, dd_mul_d({kAip0Hi, kAip0Lo}, x));
    DD term0 = {kAi0Hi, kAi0Lo};   // c_{3k}   x^{3k}
    DD term1 = dd_mul_d({kAip0Hi, kAip0Lo}, x);  // c_{3k+1} x^{3k+1}
    double scale = std::max(std::abs(total.hi), 1e-300);
    for (int n = 0; n < 600; n += 3) {
        term0 = dd_mul_d(dd_mul_d(dd_mul_d(term0, x), x), x);
        term0 = dd_div_d(term0, static_cast<double>((n + 2) * (n + 3)));
        term1 = dd_mul_d(dd_mul_d(dd_mul_d(term1, x), x), x);
        term1 = dd_div_d(term1, static_cast<double>((n + 3) * (n + 4)));
        total = dd_add(total, dd_add(term0, term1));
        scale = std::max({scale, std::abs(term0.hi), std::abs(term1.hi)});
        if (std::abs(term0.hi) < 1e-40 * scale && std::abs(term1.hi) < 1e-40 * scale) {
            return total;
        }
    }
    throw NoConvergence("airy series did not reach the truncation floor");
}

// S(zeta) = sum_k (-1)^k u_k zeta^{-k}, truncated at the smallest term.
// u_{k+1}/u_k = (3k+1/2)(3k+3/2)(3k+5/2) / (54 (k+1)(k+1/2)).
double asymptotic_correction(double zeta, int max_order) {
    double sum = 1.0;
    double u = 1.0;
    double sign = -1.0;
    double prev = 1.0;
    for (int k = 0; k < max_order; ++k) {
        const double kk = static_cast<double>(k);
        u *= (3.0 * kk + 0.5) * (3.0 * kk + 1.5) * (3.0 * kk + 2.5) /
             (54.0 * (kk + 1.0) * (kk + 0.5));
        const double term = u * std::pow(zeta, -(kk + 1.0));
        if (term >= prev) break;  // divergent tail starts, stop at smallest term
        sum += sign * term;
        sign = -sign;
        prev = term;
        if (term < 1e-17) break;
    }
    return sum;
}

}  // namespace

const char* airy_method_name(AiryMethod m) {
    switch (m) {
        case AiryMethod::PowerSeries: return "power_series";
        case AiryMethod::Quadrature: return "quadrature";
        default: return "asymptotic";
    }
}

double airy_zeta(double x) {
    if (x < 0.0) throw DomainError("airy_zeta needs x >= 0");
    return (2.0 / 3.0) * x * std::sqrt(x);
}

double airy_switch_point() { return kSwitch; }

AiryValue airy_ai_value(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("airy_ai needs finite x >= 0");
    AiryValue v;
    v.x = x;
    if (x < kSwitch) {
        v.method = AiryMethod::PowerSeries;
        v.ai = series_sum(x).hi;
    } else {
        v.method = AiryMethod::Asymptotic;
        const double zeta = airy_zeta(x);
        v.ai = std::exp(-zeta) / (kTwoSqrtPi * std::pow(x, 0.25)) *
               asymptotic_correction(zeta, 40);
    }
    return v;
}

double airy_ai(double x) { return airy_ai_value(x).ai; }

double ai_scaled(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("ai_scaled needs finite x >= 0");
    if (x < kSwitch) {
        return series_sum(x).hi * std::exp(airy_zeta(x));
    }
    return asymptotic_correction(airy_zeta(x), 40) / (kTwoSqrtPi * std::pow(x, 0.25));
}

double airy_ai_asymptotic(double u, int order) {
    if (!(u > 0.0)) throw DomainError("airy_ai_asymptotic needs u > 0");
    if (order != 0 && order != 1) throw DomainError("airy_ai_asymptotic order must be 0 or 1");
    const double zeta = airy_zeta(u);
    const double lead = std::exp(-zeta) / (kTwoSqrtPi * std::pow(u, 0.25));
    if (order == 0) return lead;
    return lead * (1.0 - (5.0 / 48.0) / (u * std::sqrt(u)));
}

double airy_ai_certification(double x) {
    if (!(x >= 0.0)) throw DomainError("airy_ai_certification needs x >= 0");
    constexpr double kPi = 3.14159265358979323846;
    const double phase = std::sqrt(3.0) / 2.0 * x;
    auto integrand = [&](double s) {
        return std::exp(-s * s * s / 3.0 - 0.5 * x * s) * std::cos(kPi / 6.0 + phase * s);
    };
    // exp(-s^3/3) < 1e-39 beyond s = 6.5; the tail is far below target accuracy.
    return integrate(integrand, 0.0, 6.5, 1e-13) / kPi;
}

}  // namespace qarea
