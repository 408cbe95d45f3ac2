#include "qarea/variational.hpp"

#include <cmath>

#include "qarea/asymptotics.hpp"
#include "qarea/minimize.hpp"

namespace qarea {

const char* scenario_name(Scenario s) {
    return s == Scenario::EmptyStart ? "EmptyStart" : "SymmetricBusy";
}

MostLikelyPath most_likely_path(double T, double M, const QueueParams& params,
                                std::size_t n_grid) {
    if (!(T > 0.0) || !(M > 0.0)) throw DomainError("most_likely_path needs T, M > 0");
    if (n_grid < 2) throw DomainError("most_likely_path needs n_grid >= 2");
    const double c = params.c();
    const double h = T / static_cast<double>(n_grid - 1);
    const double s_free = std::sqrt(6.0 * M / c);
    std::vector<double> f(n_grid);

    if (s_free < T) {
        const double slope2 = (c / 6.0) * std::sqrt(6.0 * c / M);
        for (std::size_t k = 0; k < n_grid; ++k) {
            const double r = std::min(h * static_cast<double>(k), s_free);
            f[k] = 2.0 * c * r - slope2 * r * r;  // constant past s_free
        }
        return MostLikelyPath(GridPath(0.0, h, std::move(f)), 0.0, Scenario::EmptyStart);
    }

    for (std::size_t k = 0; k < n_grid; ++k) {
        const double r = h * static_cast<double>(k);
        f[k] = 2.0 * c * r - (c / T) * r * r;
    }
    const double a_star = M / T - c * T / 6.0;
    return MostLikelyPath(GridPath(0.0, h, std::move(f)), a_star, Scenario::SymmetricBusy);
}

double rate_functional(const GridPath& path) {
    const auto& f = path.values();
    const double h = path.h();
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const double d = (f[k + 1] - f[k]) / h;
        acc += d * d;
    }
    return 0.5 * acc * h;
}

GridPath skorokhod_map(const GridPath& path, const QueueParams& params, double q0) {
    if (!(q0 >= 0.0)) throw DomainError("skorokhod_map needs q0 >= 0");
    const auto& f = path.values();
    const double ch = params.c() * path.h();
    std::vector<double> q(f.size());
    q[0] = q0;
    for (std::size_t k = 1; k < f.size(); ++k) {
        q[k] = std::max(q[k - 1] + (f[k] - f[k - 1]) - ch, 0.0);
    }
    return GridPath(path.t0(), path.h(), std::move(q));
}

RateResult minimize_area_cost_numeric(double T, double M, const QueueParams& params,
                                      double tol) {
    if (!(T > 0.0) || !(M > 0.0)) throw DomainError("minimizer needs T, M > 0");
    if (!(tol > 0.0)) throw DomainError("minimizer needs tol > 0");
    const double c = params.c();

    const auto best_a_at = [&](double s) {
        const double a_hi = M / s + c * s;
        return golden_section([&](double a) { return area_cost(M, a, s, params); }, 0.0,
                              a_hi, tol, 400);
    };

    const double s_lo = std::min(1e-6, 0.5) * T;
    const auto outer = golden_section([&](double s) { return best_a_at(s).fx; }, s_lo, T,
                                      tol, 400);
    const auto inner = best_a_at(outer.x);

    RateResult r;
    r.value = inner.fx;
    r.a_star = inner.x;
    r.s_star = outer.x;
    r.branch = (outer.x > T - 10.0 * tol) ? Branch::Boundary : Branch::Interior;
    return r;
}

}  // namespace qarea
