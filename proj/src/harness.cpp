#include "qarea/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qarea/asymptotics.hpp"
#include "qarea/laplace.hpp"
#include "qarea/parallel.hpp"

namespace qarea {

namespace {

class WallClock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::uint64_t step_count(double horizon, double h) {
    return std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(horizon / h)));
}

bool intervals_overlap(const EstimatorReport& a, const EstimatorReport& b) {
    return std::max(a.ci_low, b.ci_low) <= std::min(a.ci_high, b.ci_high);
}

}  // namespace

double HorizonSpec::at(double u) const {
    if (!(coeff > 0.0)) throw DomainError("horizon coefficient must be positive");
    return coeff * std::pow(u, power);
}

std::string regime_name(Regime regime) {
    switch (regime) {
        case Regime::Short: return "Short";
        case Regime::Intermediate: return "Intermediate";
        case Regime::Long: return "Long";
        case Regime::BusyPeriod: return "BusyPeriod";
        case Regime::Scaling: return "Scaling";
    }
    throw DomainError("unknown regime");
}

Regime regime_from_name(const std::string& name) {
    if (name == "Short") return Regime::Short;
    if (name == "Intermediate") return Regime::Intermediate;
    if (name == "Long") return Regime::Long;
    if (name == "BusyPeriod") return Regime::BusyPeriod;
    if (name == "Scaling") return Regime::Scaling;
    throw DomainError("unknown regime name: " + name);
}

EstimatorReport tail_probability(const QueueParams& params, double horizon,
                                 double threshold, const SimConfig& sim,
                                 std::uint64_t n, unsigned n_threads) {
    validate_config(sim);
    if (!(threshold >= 0.0)) throw DomainError("threshold must be nonnegative");
    if (n < 1) throw DomainError("need at least one replication");
    if (!(horizon >= sim.h)) throw DomainError("horizon shorter than one step");

    const WallClock clock;
    const std::uint64_t n_steps = step_count(horizon, sim.h);
    const Stepper stepper(params, sim.h, sim.use_exact_step, sim.use_bridge_correction);
    const double h = sim.h;

    auto body = [&](std::uint64_t i, HitAccumulator& acc) {
        CounterRng rng(sim.seed, sim.stream_index + i);
        double q = stationary_q0_from_uniform(rng.uniform01(), params);
        double area = 0.0;
        bool hit = false;
        for (std::uint64_t k = 0; k < n_steps; ++k) {
            const auto step = stepper.advance(q, rng);
            area += 0.5 * (q + step.q) * h;
            q = step.q;
            if (area > threshold) {  // the area is nondecreasing in time
                hit = true;
                break;
            }
        }
        acc.add(hit);
    };
    const auto acc = parallel_accumulate<HitAccumulator>(n, n_threads, body);
    return proportion_report(acc.hits, acc.n, sim.seed, clock.seconds());
}

EstimatorReport estimate_pi(const QueueParams& params, const HorizonSpec& horizon,
                            double u, const SimConfig& sim, std::uint64_t n,
                            unsigned n_threads) {
    if (!(u >= 0.0)) throw DomainError("threshold must be nonnegative");
    // At u = 0 the event has probability 1 over any positive window; give
    // the driver one step to observe it.
    const double window = std::max(horizon.at(u), sim.h);
    return tail_probability(params, window, u, sim, n, n_threads);
}

ScalingCheck scaling_check(const QueueParams& params, double T, double M,
                           unsigned n_superpose, const SimConfig& sim,
                           std::uint64_t n_reps, unsigned n_threads) {
    validate_config(sim);
    if (n_superpose < 1) throw DomainError("need at least one source");
    if (!(T > 0.0) || !(M > 0.0)) throw DomainError("window and threshold must be positive");
    if (n_reps < 1) throw DomainError("need at least one replication");

    ScalingCheck out;
    const double n = static_cast<double>(n_superpose);

    {  // Averaged superposition of n_superpose independent drivers on [0, T].
        const WallClock clock;
        const Stepper stepper(params, sim.h, sim.use_exact_step,
                              sim.use_bridge_correction, 1.0 / n, n_superpose);
        const std::uint64_t n_steps = step_count(T, sim.h);
        const double h = sim.h;
        auto body = [&](std::uint64_t i, HitAccumulator& acc) {
            CounterRng rng(sim.seed, sim.stream_index + i);
            double q = -std::log(rng.uniform01()) / stepper.stationary_rate();
            double area = 0.0;
            bool hit = false;
            for (std::uint64_t k = 0; k < n_steps; ++k) {
                const auto step = stepper.advance(q, rng);
                area += 0.5 * (q + step.q) * h;
                q = step.q;
                if (area > M) {
                    hit = true;
                    break;
                }
            }
            acc.add(hit);
        };
        const auto acc = parallel_accumulate<HitAccumulator>(n_reps, n_threads, body);
        out.superposed = proportion_report(acc.hits, acc.n, sim.seed, clock.seconds());
    }

    {  // Single queue over [0, T n] against M n^2, on the scale-matched grid.
        SimConfig single = sim;
        single.h = sim.h * n;
        single.horizon = T * n;
        single.stream_index = sim.stream_index + n_reps;  // independent streams
        out.single =
            tail_probability(params, T * n, M * n * n, single, n_reps, n_threads);
    }

    out.ci_overlap = intervals_overlap(out.superposed, out.single);
    return out;
}

double predicted_tail(const QueueParams& params, double M, Regime regime,
                      const HorizonSpec& horizon, double u) {
    if (!(u > 0.0) || !(M > 0.0)) throw DomainError("threshold must be positive");
    const double c = params.c();
    const double T = horizon.at(u);
    const double sqrt_u = std::sqrt(u);
    const double m_eff = std::max(M - T / (2.0 * c * u), 1e-12);
    switch (regime) {
        case Regime::Short:
            return std::exp(-2.0 * c * (M * u) / T - c * c * T / 3.0);
        case Regime::Intermediate:
            return std::exp(-window_rate_value(T / sqrt_u, m_eff, params) * sqrt_u);
        case Regime::Long:
            return std::min(1.0, T * std::exp(-unconstrained_rate(m_eff, params) * sqrt_u));
        default:
            throw DomainError("no tail prediction for this regime");
    }
}

RegimeTable regime_study(const QueueParams& params, double M, Regime regime,
                         const std::vector<double>& u_grid, const HorizonSpec& horizon,
                         const SimConfig& sim,
                         const std::vector<std::uint64_t>& n_per_point,
                         unsigned n_threads) {
    if (regime != Regime::Intermediate && regime != Regime::Long) {
        throw DomainError("regime study covers the intermediate and long timescales");
    }
    if (u_grid.empty()) throw DomainError("empty threshold grid");
    if (!(u_grid.front() > 0.0)) throw DomainError("thresholds must be positive");
    for (std::size_t i = 1; i < u_grid.size(); ++i) {
        if (!(u_grid[i] > u_grid[i - 1])) throw DomainError("threshold grid must increase");
    }
    if (n_per_point.empty() ||
        (n_per_point.size() != 1 && n_per_point.size() != u_grid.size())) {
        throw DomainError("need one replication count, or one per grid point");
    }
    if (regime == Regime::Intermediate && std::abs(horizon.power - 0.5) > 1e-12) {
        throw DomainError("intermediate studies use T(u) = coeff * sqrt(u)");
    }
    if (regime == Regime::Long && !(horizon.power > 0.5 && horizon.power < 1.0)) {
        throw DomainError("long studies need a horizon power strictly between 0.5 and 1");
    }
    auto n_at = [&](std::size_t i) {
        return n_per_point.size() == 1 ? n_per_point[0] : n_per_point[i];
    };

    // Feasibility gate: expected hits at every grid point, by the heuristic
    // predictor, must reach 20 — otherwise the estimate at that point would
    // be statistically meaningless.
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        const double expected =
            static_cast<double>(n_at(i)) * predicted_tail(params, M, regime, horizon, u_grid[i]);
        if (expected < 20.0) {
            throw InfeasibleGrid("expected hits " + std::to_string(expected) +
                                 " < 20 at threshold " + std::to_string(u_grid[i]));
        }
    }

    RegimeTable table;
    table.regime = regime;
    table.M = M;
    table.target_rate = regime == Regime::Intermediate
                            ? window_rate_value(horizon.coeff, M, params)
                            : unconstrained_rate(M, params);

    std::uint64_t stream_offset = 0;
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        RegimeRow row;
        row.u = u_grid[i];
        row.horizon = horizon.at(row.u);
        row.n = n_at(i);
        SimConfig point = sim;
        point.stream_index = sim.stream_index + stream_offset;
        stream_offset += row.n;
        row.report =
            tail_probability(params, row.horizon, M * row.u, point, row.n, n_threads);
        const double pi_hat =
            row.report.zero_hits ? row.report.ci_high : row.report.estimate;
        row.rate = -std::log(pi_hat) / std::sqrt(row.u);
        table.rows.push_back(row);
    }
    return table;
}

RegimeTable run_experiment(const Experiment& experiment, unsigned n_threads) {
    if (experiment.regime != Regime::Intermediate && experiment.regime != Regime::Long) {
        throw DomainError("experiment runner covers the intermediate and long regimes");
    }
    return regime_study(experiment.params, experiment.M, experiment.regime,
                        experiment.u_grid, experiment.horizon, experiment.sim,
                        experiment.n_per_point, n_threads);
}

namespace {

// Accumulator for one busy-period batch: areas, their exponentials at each
// transform argument, and the censored count.
struct BusyAccumulator {
    MeanAccumulator area;
    std::vector<MeanAccumulator> lt;
    std::uint64_t censored = 0;

    void merge(const BusyAccumulator& o) {
        area.merge(o.area);
        if (lt.size() < o.lt.size()) lt.resize(o.lt.size());
        for (std::size_t i = 0; i < o.lt.size(); ++i) lt[i].merge(o.lt[i]);
        censored += o.censored;
    }
};

BusyTargetResult make_target(std::string label, const MeanAccumulator& acc,
                             double reference, const ToleranceSpec& tol,
                             std::uint64_t seed) {
    const auto report = mean_report(acc, seed, 0.0);
    BusyTargetResult out;
    out.label = std::move(label);
    out.estimate = report.estimate;
    out.reference = reference;
    out.ci_low = report.ci_low;
    out.ci_high = report.ci_high;
    out.tol = tol;
    if (tol.kind == ToleranceSpec::Kind::RelErr) {
        out.pass = std::abs(out.estimate - reference) <= tol.value * std::abs(reference);
    } else {
        const double half_width = 0.5 * (report.ci_high - report.ci_low);
        out.pass = std::abs(out.estimate - reference) <= tol.value * half_width;
    }
    return out;
}

}  // namespace

BusySuiteReport busy_period_suite(const QueueParams& params, const SimConfig& sim,
                                  std::uint64_t n, const std::vector<double>& x_grid,
                                  const std::vector<double>& gamma_grid,
                                  unsigned n_threads) {
    validate_config(sim);
    if (n < 10000) throw DomainError("busy-period suite needs at least 10^4 replications");

    BusySuiteReport out;
    out.n = n;
    const ToleranceSpec rel5{ToleranceSpec::Kind::RelErr, 0.05};
    const ToleranceSpec ci3{ToleranceSpec::Kind::CiMultiple, 3.0};

    {  // Residual busy periods from stationary starts.
        auto body = [&](std::uint64_t i, BusyAccumulator& acc) {
            SimConfig rep = sim;
            rep.stream_index = sim.stream_index + i;
            try {
                const auto sample = sample_residual_busy_area(params, rep);
                acc.area.add(sample.area);
                if (acc.lt.size() < gamma_grid.size()) acc.lt.resize(gamma_grid.size());
                for (std::size_t g = 0; g < gamma_grid.size(); ++g) {
                    acc.lt[g].add(std::exp(-gamma_grid[g] * sample.area));
                }
            } catch (const HorizonExceeded&) {
                ++acc.censored;
            }
        };
        const auto acc = parallel_accumulate<BusyAccumulator>(n, n_threads, body);
        out.censored += acc.censored;
        out.targets.push_back(make_target("mean_stationary_area", acc.area,
                                          mean_stationary_area(params), rel5, sim.seed));
        for (std::size_t g = 0; g < gamma_grid.size(); ++g) {
            out.targets.push_back(make_target(
                "stationary_lt(gamma=" + std::to_string(gamma_grid[g]) + ")",
                g < acc.lt.size() ? acc.lt[g] : MeanAccumulator{},
                stationary_lt(gamma_grid[g], params), ci3, sim.seed));
        }
    }

    for (std::size_t k = 0; k < x_grid.size(); ++k) {  // Fixed-start areas.
        const double x = x_grid[k];
        auto body = [&](std::uint64_t i, BusyAccumulator& acc) {
            SimConfig rep = sim;
            rep.stream_index = sim.stream_index + (k + 1) * n + i;
            try {
                acc.area.add(sample_busy_area_from(x, params, rep).area);
            } catch (const HorizonExceeded&) {
                ++acc.censored;
            }
        };
        const auto acc = parallel_accumulate<BusyAccumulator>(n, n_threads, body);
        out.censored += acc.censored;
        out.targets.push_back(make_target("mean_area_from(x=" + std::to_string(x) + ")",
                                          acc.area, mean_transient_area(x, params), rel5,
                                          sim.seed));
    }

    out.all_pass = std::all_of(out.targets.begin(), out.targets.end(),
                               [](const BusyTargetResult& t) { return t.pass; });
    return out;
}

}  // namespace qarea
