#pragma once

#include <cstdint>
#include <optional>

#include "qarea/model.hpp"
#include "qarea/rng.hpp"

namespace qarea {

struct SimConfig {
    double h = 1e-3;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
    bool use_exact_step = true;
    bool use_bridge_correction = true;
};

void validate_config(const SimConfig& config);

struct FirstPassageSample {
    double tau = 0.0;
    double area = 0.0;
};

// Inverse-CDF stationary level: -ln(U)/(2c).
double stationary_q0_from_uniform(double u01, const QueueParams& params);
double sample_stationary_q0(const QueueParams& params, CounterRng& rng);

// Conditional running maximum of the reversed increment path over one step,
// given the drifted endpoint increment w and step variance vh:
//     P(M >= m | W = w) = exp(-2 m (m - w) / vh),  m >= max(w, 0),
// inverted at u01. This is both the reflection term of the exact update
// Q' = max(q + w, M) and, through M > q + w, an exact indicator that the
// free path from q dipped to 0 during the step (the two events coincide
// pathwise and the conditional probability is exp(-2 q (q+w) / vh)).
double max_given_endpoint(double w, double vh, double u01);

// One grid step of the reflected workload. Exact mode draws the joint
// (endpoint, reflection) update above; Euler mode is the clipped recursion
// max(q + dB - ch, 0).
double step_workload(double q, const QueueParams& params, double h, CounterRng& rng,
                     bool exact);

// Precomputed stepping kernel. sigma2 scales the driving variance, which
// the averaged-superposition check needs (n drivers of variance 1/n^2 each
// sum to sigma2 = 1/n).
class Stepper {
public:
    Stepper(const QueueParams& params, double h, bool exact, bool bridge,
            double sigma2 = 1.0, unsigned n_drivers = 1);

    struct Step {
        double q = 0.0;
        bool touched_zero = false;
    };

    // Reflected update; touched_zero reports whether the workload hit 0
    // within the step (exactly in exact mode, bridge-corrected otherwise).
    Step advance(double q, CounterRng& rng) const;

    // Free (unreflected) update for busy-period runs: returns the new level
    // and whether the path crossed 0, with the crossing time offset within
    // the step and the area contribution up to the crossing.
    struct FreeStep {
        double q = 0.0;
        bool crossed = false;
        double t_cross = 0.0;   // offset in (0, h], valid when crossed
        double area = 0.0;      // trapezoid contribution over the step
    };
    FreeStep advance_free(double q, CounterRng& rng) const;

    double h() const { return h_; }
    double stationary_rate() const { return 2.0 * c_ / sigma2_; }

private:
    double draw_increment(CounterRng& rng) const;

    double c_;
    double h_;
    double ch_;
    double vh_;       // sigma2 * h
    double sqrt_vh_;  // per-driver scale
    double sigma2_;
    unsigned n_drivers_;
    bool exact_;
    bool bridge_;
};

// Full grid path of the reflected workload on [0, horizon] from level q0.
WorkloadTrace simulate_trace(const QueueParams& params, const SimConfig& config, double q0);

// Busy-period area from a fixed start x: free evolution x + B(t) - ct until
// the first passage of 0 (bridge-corrected when configured). Throws
// HorizonExceeded if 0 is not reached before config.horizon.
FirstPassageSample sample_busy_area_from(double x, const QueueParams& params,
                                         const SimConfig& config);

// Same, with x drawn from the stationary law on the config's stream.
FirstPassageSample sample_residual_busy_area(const QueueParams& params,
                                             const SimConfig& config);

// Excursions above delta: up-crossing of 2*delta starts a cycle, return to
// delta ends it; thresholds are applied at grid nodes.
std::vector<CycleRecord> decompose_cycles(const WorkloadTrace& trace, double delta);

}  // namespace qarea
