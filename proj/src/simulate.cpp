#include "qarea/simulate.hpp"

#include <cmath>

namespace qarea {

void validate_config(const SimConfig& config) {
    if (!(config.h > 0.0) || !std::isfinite(config.h)) {
        throw DomainError("step size must be positive");
    }
    if (!(config.horizon >= config.h)) {
        throw DomainError("horizon must be at least one step");
    }
}

double stationary_q0_from_uniform(double u01, const QueueParams& params) {
    if (!(u01 > 0.0) || !(u01 <= 1.0)) throw DomainError("uniform input must be in (0, 1]");
    return -std::log(u01) / (2.0 * params.c());
}

double sample_stationary_q0(const QueueParams& params, CounterRng& rng) {
    return stationary_q0_from_uniform(rng.uniform01(), params);
}

double max_given_endpoint(double w, double vh, double u01) {
    if (!(vh > 0.0)) throw DomainError("step variance must be positive");
    if (!(u01 > 0.0) || !(u01 <= 1.0)) throw DomainError("uniform input must be in (0, 1]");
    return 0.5 * (w + std::sqrt(w * w - 2.0 * vh * std::log(u01)));
}

Stepper::Stepper(const QueueParams& params, double h, bool exact, bool bridge,
                 double sigma2, unsigned n_drivers)
    : c_(params.c()), h_(h), exact_(exact), bridge_(bridge) {
    if (!(h > 0.0)) throw DomainError("step size must be positive");
    if (!(sigma2 > 0.0)) throw DomainError("driving variance must be positive");
    if (n_drivers == 0) throw DomainError("need at least one driver");
    ch_ = c_ * h_;
    sigma2_ = sigma2;
    vh_ = sigma2 * h_;
    n_drivers_ = n_drivers;
    // Each driver contributes variance (sigma2 / n) * h to the step.
    sqrt_vh_ = std::sqrt(vh_ / static_cast<double>(n_drivers));
}

double Stepper::draw_increment(CounterRng& rng) const {
    double z = rng.normal();
    for (unsigned i = 1; i < n_drivers_; ++i) z += rng.normal();
    return sqrt_vh_ * z - ch_;
}

Stepper::Step Stepper::advance(double q, CounterRng& rng) const {
    const double w = draw_increment(rng);
    if (exact_) {
        const double m = max_given_endpoint(w, vh_, rng.uniform01());
        const double qf = q + w;
        return {std::max(qf, m), m > qf};
    }
    const double qf = q + w;
    if (qf <= 0.0) return {0.0, true};
    if (bridge_ && q > 0.0) {
        const bool dipped = rng.uniform01() < std::exp(-2.0 * q * qf / vh_);
        return {qf, dipped};
    }
    return {qf, false};
}

Stepper::FreeStep Stepper::advance_free(double q, CounterRng& rng) const {
    const double w = draw_increment(rng);
    const double qf = q + w;
    FreeStep out;
    if (qf <= 0.0) {
        out.q = qf;
        out.crossed = true;
        out.t_cross = h_ * (q / (q - qf));  // linear interpolation to the zero
        out.area = 0.5 * q * out.t_cross;
        return out;
    }
    if (bridge_ && q > 0.0 && rng.uniform01() < std::exp(-2.0 * q * qf / vh_)) {
        out.q = 0.0;
        out.crossed = true;
        out.t_cross = 0.5 * h_;  // midpoint assignment for a bridge dip
        out.area = 0.25 * q * h_;
        return out;
    }
    out.q = qf;
    out.area = 0.5 * (q + qf) * h_;
    return out;
}

double step_workload(double q, const QueueParams& params, double h, CounterRng& rng,
                     bool exact) {
    if (!(q >= 0.0)) throw DomainError("workload must be nonnegative");
    const Stepper stepper(params, h, exact, true);
    return stepper.advance(q, rng).q;
}

WorkloadTrace simulate_trace(const QueueParams& params, const SimConfig& config, double q0) {
    validate_config(config);
    if (!(q0 >= 0.0)) throw DomainError("initial level must be nonnegative");
    const auto n_steps =
        static_cast<std::size_t>(std::llround(config.horizon / config.h));
    const Stepper stepper(params, config.h, config.use_exact_step,
                          config.use_bridge_correction);
    CounterRng rng(config.seed, config.stream_index);

    std::vector<double> values(n_steps + 1);
    values[0] = q0;
    std::optional<double> hit;
    double q = q0;
    if (q0 == 0.0) hit = 0.0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const auto step = stepper.advance(q, rng);
        if (!hit && step.touched_zero) {
            // Exact mode flags the dip itself; Euler mode lands on 0 or the
            // bridge draw fires between positive nodes. Midpoint assignment.
            hit = config.h * (static_cast<double>(k) + 0.5);
        }
        q = step.q;
        values[k + 1] = q;
    }
    GridPath grid(0.0, config.h, std::move(values));
    const double area = trapezoid_area(grid);
    return WorkloadTrace(params, std::move(grid), hit, area);
}

namespace {

FirstPassageSample run_free_until_zero(double x, const QueueParams& params,
                                       const SimConfig& config, CounterRng& rng) {
    if (!(x >= 0.0)) throw DomainError("start level must be nonnegative");
    FirstPassageSample out;
    if (x == 0.0) return out;

    const Stepper stepper(params, config.h, false, config.use_bridge_correction);
    double q = x;
    double t = 0.0;
    double area = 0.0;
    while (t < config.horizon) {
        const auto step = stepper.advance_free(q, rng);
        area += step.area;
        if (step.crossed) {
            out.tau = t + step.t_cross;
            out.area = area;
            return out;
        }
        q = step.q;
        t += config.h;
    }
    throw HorizonExceeded("no passage of 0 before t = " + std::to_string(config.horizon));
}

}  // namespace

FirstPassageSample sample_busy_area_from(double x, const QueueParams& params,
                                         const SimConfig& config) {
    validate_config(config);
    CounterRng rng(config.seed, config.stream_index);
    return run_free_until_zero(x, params, config, rng);
}

FirstPassageSample sample_residual_busy_area(const QueueParams& params,
                                             const SimConfig& config) {
    validate_config(config);
    CounterRng rng(config.seed, config.stream_index);
    const double x = sample_stationary_q0(params, rng);
    return run_free_until_zero(x, params, config, rng);
}

std::vector<CycleRecord> decompose_cycles(const WorkloadTrace& trace, double delta) {
    if (!(delta > 0.0)) throw DomainError("cycle threshold must be positive");
    const auto& q = trace.path.values();
    const double h = trace.path.h();
    std::vector<CycleRecord> cycles;
    std::size_t i = 0;
    const double up = 2.0 * delta;
    while (true) {
        while (i < q.size() && q[i] < up) ++i;
        if (i >= q.size()) break;
        const std::size_t start = i;
        while (i < q.size() && q[i] > delta) ++i;
        if (i >= q.size()) break;  // cycle did not complete inside the trace
        CycleRecord rec;
        rec.sigma = trace.path.time_at(start);
        rec.tau = trace.path.time_at(i);
        rec.xi = rec.tau - rec.sigma;
        double acc = 0.0;
        for (std::size_t k = start; k < i; ++k) acc += 0.5 * (q[k] + q[k + 1]);
        rec.area = acc * h;
        cycles.push_back(rec);
    }
    return cycles;
}

}  // namespace qarea
