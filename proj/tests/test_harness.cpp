#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "qarea/asymptotics.hpp"
#include "qarea/harness.hpp"
#include "qarea/laplace.hpp"
#include "qarea/parallel.hpp"
#include "qarea/stats.hpp"

using namespace qarea;

namespace {
const QueueParams unit(1.0);

SimConfig quick_sim(double h, std::uint64_t seed) {
    SimConfig sim;
    sim.h = h;
    sim.horizon = 1.0;
    sim.seed = seed;
    return sim;
}
}  // namespace

TEST_CASE("horizon map and regime names") {
    const HorizonSpec horizon{2.0, 0.5};
    CHECK(horizon.at(9.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(horizon.at(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    const HorizonSpec flat{1.5, 0.0};
    CHECK(flat.at(123.0) == doctest::Approx(1.5).epsilon(1e-14));
    const HorizonSpec degenerate{0.0, 0.5};
    CHECK_THROWS_AS(degenerate.at(1.0), DomainError);

    for (const auto regime : {Regime::Short, Regime::Intermediate, Regime::Long,
                              Regime::BusyPeriod, Regime::Scaling}) {
        CHECK(regime_from_name(regime_name(regime)) == regime);
    }
    CHECK(regime_name(Regime::Intermediate) == "Intermediate");
    CHECK_THROWS_AS(regime_from_name("weird"), DomainError);
}

TEST_CASE("parallel accumulation is independent of the worker count") {
    auto body = [](std::uint64_t i, MeanAccumulator& acc) {
        acc.add(std::sqrt(static_cast<double>(i + 1)));
    };
    const auto one = parallel_accumulate<MeanAccumulator>(50000, 1, body);
    const auto four = parallel_accumulate<MeanAccumulator>(50000, 4, body);
    CHECK(one.sum == four.sum);  // bitwise equality: merge order is fixed
    CHECK(one.n == four.n);
    CHECK(resolve_threads(0) >= 1);
    CHECK(resolve_threads(3) == 3);
}

TEST_CASE("a zero threshold is hit almost surely") {
    const auto report =
        estimate_pi(unit, HorizonSpec{1.0, 0.0}, 0.0, quick_sim(0.01, 7), 500, 2);
    CHECK(report.estimate == 1.0);
    CHECK(report.hits == 500);
}

TEST_CASE("an impossible threshold reports zero hits with an honest bound") {
    // Exponent around 30: essentially unreachable by plain sampling.
    const auto report =
        estimate_pi(unit, HorizonSpec{1.0, 0.0}, 15.0, quick_sim(0.01, 8), 1000, 2);
    CHECK(report.zero_hits);
    CHECK(report.estimate == 0.0);
    CHECK(report.hits == 0);
    CHECK(report.ci_high == doctest::Approx(zero_hit_upper_bound(1000, 0.99)));
}

TEST_CASE("tail estimates are nested in the threshold at a fixed seed") {
    const auto sim = quick_sim(0.01, 9);
    double prev = 1.0;
    for (const double u : {0.2, 0.6, 1.2}) {
        const auto report = estimate_pi(unit, HorizonSpec{1.0, 0.0}, u, sim, 2000, 2);
        CHECK(report.estimate <= prev);
        prev = report.estimate;
    }
}

TEST_CASE("tail estimation is reproducible and thread-count invariant") {
    const auto sim = quick_sim(0.02, 10);
    const auto a = tail_probability(unit, 1.0, 0.4, sim, 3000, 1);
    const auto b = tail_probability(unit, 1.0, 0.4, sim, 3000, 3);
    CHECK(a.hits == b.hits);
    CHECK(a.estimate == b.estimate);
    CHECK(a.ci_low == b.ci_low);
}

TEST_CASE("superposition identity holds trivially at one driver") {
    const auto res = scaling_check(unit, 1.0, 0.5, 1, quick_sim(5e-3, 11), 20000, 2);
    CHECK(res.ci_overlap);
    CHECK(res.superposed.n_replications == 20000);
    CHECK(res.single.n_replications == 20000);
}

TEST_CASE("predicted_tail reproduces the short-window formula") {
    const double u = 2.0, M = 1.5;
    const HorizonSpec horizon{1.0, 0.0};
    const double expected = std::exp(-2.0 * (M * u) / 1.0 - 1.0 / 3.0);
    CHECK(predicted_tail(unit, M, Regime::Short, horizon, u) ==
          doctest::Approx(expected).epsilon(1e-12));
    // Long-regime prediction is capped at one.
    CHECK(predicted_tail(unit, 0.01, Regime::Long, HorizonSpec{1.0, 0.75}, 1.0) <= 1.0);
}

TEST_CASE("regime_study rejects unusable configurations") {
    const auto sim = quick_sim(0.05, 12);
    // Short regime is not a trend study.
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Short, {4.0}, HorizonSpec{2.0, 0.5},
                                 sim, {1000}),
                    DomainError);
    // Intermediate demands the square-root horizon exponent.
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Intermediate, {4.0},
                                 HorizonSpec{2.0, 0.4}, sim, {1000}),
                    DomainError);
    // Long demands an exponent strictly between 0.5 and 1.
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Long, {4.0}, HorizonSpec{1.0, 0.5},
                                 sim, {1000}),
                    DomainError);
    // The grid must increase.
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Intermediate, {4.0, 4.0},
                                 HorizonSpec{2.0, 0.5}, sim, {1000, 1000}),
                    DomainError);
    // Replication counts must match the grid (or be a single broadcast value).
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Intermediate, {4.0, 9.0},
                                 HorizonSpec{2.0, 0.5}, sim, {1000, 1000, 1000}),
                    DomainError);
    // Expected hits below 20 at the deepest point are refused.
    CHECK_THROWS_AS(regime_study(unit, 0.2, Regime::Intermediate, {100.0},
                                 HorizonSpec{2.0, 0.5}, sim, {100}),
                    InfeasibleGrid);
}

TEST_CASE("regime_study emits a deterministic, well-formed trend table") {
    const auto sim = quick_sim(0.05, 13);
    const std::vector<double> grid{4.0, 16.0};
    const auto table = regime_study(unit, 0.2, Regime::Intermediate, grid,
                                    HorizonSpec{2.0, 0.5}, sim, {4000}, 2);
    CHECK(table.regime == Regime::Intermediate);
    CHECK(table.M == 0.2);
    CHECK(table.target_rate ==
          doctest::Approx(window_rate_value(2.0, 0.2, unit)).epsilon(1e-14));
    REQUIRE(table.rows.size() == 2);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CHECK(row.u == grid[i]);
        CHECK(row.horizon == doctest::Approx(2.0 * std::sqrt(grid[i])).epsilon(1e-12));
        CHECK(row.n == 4000);
        CHECK(row.rate > 0.0);
        CHECK(std::isfinite(row.rate));
        CHECK(row.rate ==
              doctest::Approx(-std::log(row.report.estimate) / std::sqrt(row.u))
                  .epsilon(1e-12));
    }
    const auto again = regime_study(unit, 0.2, Regime::Intermediate, grid,
                                    HorizonSpec{2.0, 0.5}, sim, {4000}, 3);
    CHECK(again.rows[0].report.hits == table.rows[0].report.hits);
    CHECK(again.rows[1].report.hits == table.rows[1].report.hits);

    // Doubling the area slope doubles the long-regime target rate at 4x M.
    const double target_1 = unconstrained_rate(0.4, unit);
    const double target_4 = unconstrained_rate(1.6, unit);
    CHECK(target_4 == doctest::Approx(2.0 * target_1).epsilon(1e-14));
}

TEST_CASE("busy_period_suite checks every configured target") {
    SimConfig sim;
    sim.h = 1e-3;
    sim.horizon = 1e4;
    sim.seed = 14;
    CHECK_THROWS_AS(busy_period_suite(unit, sim, 100), DomainError);

    const auto report = busy_period_suite(unit, sim, 10000, {0.5, 2.0}, {1.0}, 2);
    CHECK(report.n == 10000);
    REQUIRE(report.targets.size() == 4);  // stationary mean, one gamma, two x
    CHECK(report.targets[0].reference == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(report.targets[1].reference ==
          doctest::Approx(stationary_lt(1.0, unit)).epsilon(1e-12));
    CHECK(report.targets[2].reference ==
          doctest::Approx(mean_transient_area(0.5, unit)).epsilon(1e-14));
    CHECK(report.targets[3].reference ==
          doctest::Approx(mean_transient_area(2.0, unit)).epsilon(1e-14));
    for (const auto& target : report.targets) {
        CHECK(!target.label.empty());
        CHECK(target.ci_low <= target.estimate);
        CHECK(target.estimate <= target.ci_high);
        // Loose sanity band; the acceptance battery enforces the tight ones.
        CHECK(std::abs(target.estimate - target.reference) <=
              0.2 * std::max(1.0, std::abs(target.reference)));
    }
}

TEST_CASE("experiment wrapper routes through the same study code") {
    Experiment exp{unit};
    exp.name = "smoke";
    exp.regime = Regime::Intermediate;
    exp.M = 0.2;
    exp.horizon = HorizonSpec{2.0, 0.5};
    exp.sim = quick_sim(0.05, 13);
    exp.u_grid = {4.0, 16.0};
    exp.n_per_point = {4000, 4000};
    const auto table = run_experiment(exp, 2);
    const auto direct = regime_study(unit, 0.2, Regime::Intermediate, {4.0, 16.0},
                                     HorizonSpec{2.0, 0.5}, quick_sim(0.05, 13),
                                     {4000, 4000}, 2);
    REQUIRE(table.rows.size() == direct.rows.size());
    CHECK(table.rows[0].report.hits == direct.rows[0].report.hits);
    CHECK(table.rows[1].report.hits == direct.rows[1].report.hits);
}
