#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qarea/asymptotics.hpp"
#include "qarea/quadrature.hpp"
#include "qarea/rng.hpp"
#include "qarea/stats.hpp"
#include "support/oracles.hpp"

using namespace qarea;

namespace {
const QueueParams unit(1.0);
}

TEST_CASE("short_window_tail_asymptotic hand evaluations") {
    const double T = std::cbrt(4.0);
    CHECK(short_window_tail_asymptotic(4.0, T, unit) ==
          doctest::Approx(std::exp(-8.0 / T - T / 3.0)).epsilon(1e-15));
    CHECK(short_window_tail_asymptotic(4.0, T, unit) ==
          doctest::Approx(3.81e-3).epsilon(2e-3));
    CHECK(short_window_tail_asymptotic(0.0, 1.0, unit) ==
          doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-15));
    CHECK(short_window_tail_asymptotic(1.0, 1.0, QueueParams(2.0)) ==
          doctest::Approx(std::exp(-16.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("asymptotic value always lies in [0, 1)") {
    for (const double c : {0.5, 1.0, 3.0}) {
        const QueueParams p(c);
        for (const double u : {0.0, 0.1, 1.0, 25.0}) {
            for (const double T : {0.1, 1.0, 10.0}) {
                const double v = short_window_tail_asymptotic(u, T, p);
                // The math value is strictly positive but the double can
                // underflow once the exponent passes ~-745 (e.g. u=25, T=0.1).
                const double exponent = -2.0 * c * u / T - c * c * T / 3.0;
                if (exponent > -700.0) CHECK(v > 0.0);
                CHECK(v >= 0.0);
                CHECK(v < 1.0);
            }
        }
    }
}

TEST_CASE("exact short-window law: closed form vs direct sampling") {
    const double T = 1.0, u = 0.5, c = 1.0;
    const double exact = short_window_tail_exact(u, T, unit);
    CounterRng rng(314, 0);
    HitAccumulator acc;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double q0 = rng.exponential(2.0 * c);
        const double z = rng.normal();
        acc.add(T * q0 + std::pow(T, 1.5) / std::sqrt(3.0) * z > u + 0.5 * c * T * T);
    }
    const auto r = proportion_report(acc.hits, acc.n, 314, 0.0);
    CHECK(std::abs(r.estimate - exact) <= 3.0 * 0.5 * (r.ci_high - r.ci_low));
}

TEST_CASE("exact value dominated-threshold case stays above one half") {
    // Threshold at the Gaussian mean: u = -c T^2 / 2.
    CHECK(short_window_tail_exact(-0.5, 1.0, unit) >= 0.5);
}

TEST_CASE("exact-to-asymptotic ratio tightens toward 1 at fixed window") {
    double prev_gap = 1e300;
    double ratio = 0.0;
    for (const double u : {10.0, 20.0, 40.0}) {
        ratio = short_window_tail_exact(u, 1.0, unit) /
                short_window_tail_asymptotic(u, 1.0, unit);
        const double gap = std::abs(ratio - 1.0);
        CHECK(gap <= prev_gap);
        prev_gap = gap;
    }
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("area_cost hand evaluations and domain") {
    CHECK(area_cost(1.0, 0.0, std::sqrt(6.0), unit) ==
          doctest::Approx(2.0 * std::sqrt(6.0) / 3.0).epsilon(1e-14));
    CHECK(area_cost(1.0, 1.0, 1.0, unit) == doctest::Approx(2.375).epsilon(1e-14));
    CHECK(area_cost(1.0, 0.0, 1e-8, unit) > 1e20);  // s -> 0 blows up
    CHECK_THROWS_AS(area_cost(1.0, 0.0, 0.0, unit), DomainError);
    CHECK_THROWS_AS(area_cost(1.0, 0.0, -1.0, unit), DomainError);
}

TEST_CASE("window_rate hand evaluations on both branches") {
    const auto interior = window_rate(7.0, 6.0, unit);
    CHECK(interior.value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(interior.branch == Branch::Interior);
    CHECK(interior.s_star == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(interior.a_star == 0.0);

    const auto boundary = window_rate(3.0, 6.0, unit);
    CHECK(boundary.value == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(boundary.branch == Branch::Boundary);
    CHECK(boundary.s_star == doctest::Approx(3.0).epsilon(1e-14));
    // Stationarity gives a* = M/T - cT/6 here; cost at (1.5, 3) is 5, and
    // any other ambient level is strictly worse.
    CHECK(boundary.a_star == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(area_cost(6.0, boundary.a_star, 3.0, unit) ==
          doctest::Approx(5.0).epsilon(1e-14));
    CHECK(area_cost(6.0, 1.0, 3.0, unit) > 5.0);

    const auto edge = window_rate(6.0, 6.0, unit);
    CHECK(edge.value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(edge.branch == Branch::Boundary);  // tie assigned to Boundary
}

TEST_CASE("window_rate is continuous at the branch point and monotone in T") {
    for (const double c : {0.5, 1.0, 2.0}) {
        const QueueParams p(c);
        for (const double M : {0.3, 1.0, 4.0}) {
            const double t_star = std::sqrt(6.0 * M / c);
            const double below = window_rate_value(t_star * (1.0 - 1e-9), M, p);
            const double above = window_rate_value(t_star * (1.0 + 1e-9), M, p);
            CHECK(below == doctest::Approx(above).epsilon(1e-8));

            double prev = 1e300;
            for (const double T : {0.3, 0.8, 1.5, 3.0, 8.0}) {
                const double v = window_rate_value(T, M, p);
                CHECK(v <= prev + 1e-12);
                prev = v;
            }
        }
    }
}

TEST_CASE("closed-form minimizer agrees with the direct branch formula") {
    for (const auto& [T, M] : {std::pair<double, double>{7.0, 6.0}, {3.0, 6.0},
                               {6.0, 6.0}, {1.3, 0.4}}) {
        const auto a = window_rate(T, M, unit);
        const auto b = minimize_area_cost(T, M, unit);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));
        CHECK(a.s_star == doctest::Approx(b.s_star).epsilon(1e-12));
        CHECK(a.a_star == doctest::Approx(b.a_star).epsilon(1e-12));
        CHECK(a.branch == b.branch);
    }
}

TEST_CASE("cost surface never dips below the window rate") {
    for (const double T : {2.0, 5.0}) {
        for (const double M : {0.5, 6.0}) {
            const double phi = window_rate_value(T, M, unit);
            const double grid_min = test::grid_min_area_cost(T, M, unit, 5.0, 200, 400);
            CHECK(grid_min >= phi - 1e-12);
            CHECK(grid_min <= phi + 0.05);  // the dense grid comes close
        }
    }
}

TEST_CASE("unconstrained_rate values and square-root homogeneity") {
    CHECK(unconstrained_rate(1.0, unit) ==
          doctest::Approx(2.0 * std::sqrt(6.0) / 3.0).epsilon(1e-14));
    CHECK(unconstrained_rate(6.0, unit) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(unconstrained_rate(4.0 * 1.7, unit) ==
          doctest::Approx(2.0 * unconstrained_rate(1.7, unit)).epsilon(1e-14));
    // Equals the interior branch whenever the window is long enough.
    CHECK(unconstrained_rate(2.0, unit) ==
          doctest::Approx(window_rate_value(100.0, 2.0, unit)).epsilon(1e-14));
}

TEST_CASE("level-start cost minimizer: closed form vs brute force") {
    const auto at_zero = level_start_cost_minimizer(1.0, 0.0, unit);
    CHECK(at_zero.s_star == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
    CHECK(at_zero.value == doctest::Approx(unconstrained_rate(1.0, unit)).epsilon(1e-14));

    const auto at_one = level_start_cost_minimizer(1.0, 1.0, unit);
    CHECK(at_one.s_star == doctest::Approx(-1.0 + std::sqrt(7.0)).epsilon(1e-14));

    // The stationary point is the global minimizer only while the quadratic
    // M + c s^2/2 - delta s stays positive (delta^2 < 2Mc); past that the
    // cost has exact zeros and the formula tracks a local critical point.
    for (const double delta : {0.0, 0.4, 1.0, 1.3}) {
        const auto min = level_start_cost_minimizer(1.0, delta, unit);
        const double brute =
            test::grid_min_level_start_cost(1.0, delta, unit, 4.0 * min.s_star);
        CHECK(min.value <= brute + 1e-12);
        CHECK(brute <= min.value + 1e-3);
    }
}

TEST_CASE("first-passage density normalizes and has mean delta/c") {
    const double total =
        integrate([&](double t) { return first_passage_density(t, 1.0, unit); }, 0.0, 90.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    const double mean = integrate(
        [&](double t) { return t * first_passage_density(t, 1.0, unit); }, 0.0, 90.0);
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(first_passage_density(1e-6, 1.0, unit) < 1e-300);  // essential singularity
    CHECK_THROWS_AS(first_passage_density(0.0, 1.0, unit), DomainError);
    CHECK_THROWS_AS(first_passage_density(-1.0, 1.0, unit), DomainError);
    CHECK(first_passage_density(0.0, 1.0, unit, true) == 0.0);
    CHECK(first_passage_density(-2.0, 1.0, unit, true) == 0.0);
}
