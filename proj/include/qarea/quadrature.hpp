#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qarea/model.hpp"

namespace qarea {

// Adaptive Gauss-Kronrod on a finite interval. Infinite upper limits are
// handled by the callers, which know their integrands' decay and truncate
// analytically before coming here.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12) {
    if (!(a < b)) throw DomainError("integrate needs a < b");
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, rel_tol, &error);
    const double scale = std::max(1.0, std::abs(value));
    if (!(error <= 1e-9 * scale)) {
        throw QuadratureFailure("integrate: error estimate " + std::to_string(error) +
                                " too large for value " + std::to_string(value));
    }
    return value;
}

}  // namespace qarea
