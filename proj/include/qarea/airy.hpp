#pragma once

#include "qarea/model.hpp"

namespace qarea {

enum class AiryMethod { PowerSeries, Quadrature, Asymptotic };

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    AiryMethod method = AiryMethod::PowerSeries;
};

const char* airy_method_name(AiryMethod m);

// zeta(x) = (2/3) x^(3/2), the decay exponent of Ai on the positive axis.
double airy_zeta(double x);

// Ai(x) for x >= 0, relative error <= 1e-10 across the domain.
// Power series (compensated arithmetic) below the switch point, asymptotic
// expansion with the full correction series above it.
double airy_ai(double x);
AiryValue airy_ai_value(double x);

// exp(+zeta(x)) * Ai(x); stays O(x^(-1/4)) instead of underflowing, so
// ratios of Airy values at far-apart arguments can be formed safely.
double ai_scaled(double x);

// Truncated asymptotic form at given order (0 or 1):
// Ai(u) ~ exp(-zeta)/(2 sqrt(pi) u^(1/4)) * (1 - (5/48) u^(-3/2) [order 1]).
double airy_ai_asymptotic(double u, int order);

// Where the implementation switches from the series to the expansion.
double airy_switch_point();

// Certification-only evaluator (slow path, used by tests and the acceptance
// suite): the cosine-integral representation
//     Ai(x) = (1/pi) Int_0^inf cos(t^3/3 + x t) dt
// rotated onto the ray arg(t) = pi/6, where it becomes absolutely
// convergent:
//     (1/pi) Int_0^inf exp(-s^3/3 - x s / 2) cos(pi/6 + (sqrt(3)/2) x s) ds.
double airy_ai_certification(double x);

}  // namespace qarea
