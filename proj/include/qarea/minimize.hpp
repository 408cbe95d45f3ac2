#pragma once

#include <cmath>
#include <limits>

#include "qarea/model.hpp"

namespace qarea {

struct MinResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

// Golden-section search on [lo, hi]. Unimodality is the caller's promise;
// endpoints are compared against the interior result so a boundary minimum
// is still reported exactly.
template <class F>
MinResult golden_section(F&& f, double lo, double hi, double xtol = 1e-10,
                         int max_iter = 200) {
    if (!(lo < hi)) throw DomainError("golden_section needs lo < hi");
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int it = 0;
    // On wide brackets the requested xtol can sit below the double spacing at
    // the bracket's magnitude; stop once the width is within a few ulps.
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const auto effective_tol = [&] { return xtol + 8.0 * eps * (std::abs(a) + std::abs(b)); };
    while (b - a > effective_tol()) {
        if (++it > max_iter) {
            throw NoConvergence("golden_section: bracket still wider than tolerance after max iterations");
        }
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    MinResult r;
    r.x = 0.5 * (a + b);
    r.fx = f(r.x);
    r.iterations = it;
    const double flo = f(lo), fhi = f(hi);
    if (flo < r.fx) { r.x = lo; r.fx = flo; }
    if (fhi < r.fx) { r.x = hi; r.fx = fhi; }
    return r;
}

}  // namespace qarea
