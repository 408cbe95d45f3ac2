#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qarea/model.hpp"
#include "qarea/simulate.hpp"
#include "qarea/stats.hpp"

namespace qarea {

// Horizon map T(u) = coeff * u^power.
struct HorizonSpec {
    double coeff = 1.0;
    double power = 0.0;

    double at(double u) const;
};

enum class Regime { Short, Intermediate, Long, BusyPeriod, Scaling };

std::string regime_name(Regime regime);
Regime regime_from_name(const std::string& name);

// Exactly one acceptance rule per target: a relative-error band around the
// reference, or a band of CI half-widths.
struct ToleranceSpec {
    enum class Kind { RelErr, CiMultiple };
    Kind kind = Kind::RelErr;
    double value = 0.05;
};

struct Target {
    std::string label;
    double reference = 0.0;
    ToleranceSpec tol;
};

struct Experiment {
    std::string name;
    QueueParams params;
    SimConfig sim;
    Regime regime = Regime::Intermediate;
    double M = 1.0;
    HorizonSpec horizon;
    std::vector<double> u_grid;
    std::vector<std::uint64_t> n_per_point;
    std::vector<Target> targets;

    explicit Experiment(QueueParams p) : params(p) {}
};

// P(area of the stationary workload over [0, horizon] > threshold) by plain
// Monte Carlo: each replication draws a stationary start on its own RNG
// stream (sim.stream_index + i), steps to the horizon (snapped to the
// nearest grid multiple of sim.h), and stops early once the running area
// exceeds the threshold. Threshold 0 is hit almost surely.
EstimatorReport tail_probability(const QueueParams& params, double horizon,
                                 double threshold, const SimConfig& sim,
                                 std::uint64_t n, unsigned n_threads = 0);

// The primary tail object: probability that the area over [0, T(u)]
// exceeds u itself.
EstimatorReport estimate_pi(const QueueParams& params, const HorizonSpec& horizon,
                            double u, const SimConfig& sim, std::uint64_t n,
                            unsigned n_threads = 0);

// Both sides of the averaged-superposition identity
//   P(area of n-average over [0,T] > M) = P(single-queue area over
//   [0, T n] > M n^2):
// the left side drives the reflection with n_superpose independent scaled
// Brownian motions (total variance 1/n per unit time, stationary start
// Exp(2cn)); the right side runs one standard queue with step h*n so the
// two grids correspond under the time scaling.
struct ScalingCheck {
    EstimatorReport superposed;
    EstimatorReport single;
    bool ci_overlap = false;
};

ScalingCheck scaling_check(const QueueParams& params, double T, double M,
                           unsigned n_superpose, const SimConfig& sim,
                           std::uint64_t n_reps, unsigned n_threads = 0);

// Heuristic tail prediction used by the regime feasibility gate. It corrects
// the threshold for the typical bulk contribution T(u)/(2c) and, in the Long
// regime, credits the horizon-length prefactor:
//   Short:        exp(-2c(Mu)/T - c^2 T/3)
//   Intermediate: exp(-phi(T/sqrt(u), M_eff) sqrt(u))
//   Long:         min(1, T * exp(-phi(M_eff) sqrt(u)))
// with M_eff = max(M - T/(2cu), eps). A planning device, not an exact law.
double predicted_tail(const QueueParams& params, double M, Regime regime,
                      const HorizonSpec& horizon, double u);

struct RegimeRow {
    double u = 0.0;
    double horizon = 0.0;
    std::uint64_t n = 0;
    EstimatorReport report;
    double rate = 0.0;  // -log(pi_hat)/sqrt(u); from ci_high when no hits
};

struct RegimeTable {
    Regime regime = Regime::Intermediate;
    double M = 0.0;
    double target_rate = 0.0;
    std::vector<RegimeRow> rows;
};

// Tail-rate trend study: for each u in the increasing grid, estimate
// P(area over [0, T(u)] > M u) and report -log(pi_hat)/sqrt(u) next to the
// limiting rate (window rate at T/sqrt(u) for Intermediate, unconstrained
// rate for Long). Throws InfeasibleGrid when the predicted expected hit
// count at the largest u falls below 20.
RegimeTable regime_study(const QueueParams& params, double M, Regime regime,
                         const std::vector<double>& u_grid, const HorizonSpec& horizon,
                         const SimConfig& sim,
                         const std::vector<std::uint64_t>& n_per_point,
                         unsigned n_threads = 0);

RegimeTable run_experiment(const Experiment& experiment, unsigned n_threads = 0);

struct BusyTargetResult {
    std::string label;
    double estimate = 0.0;
    double reference = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    ToleranceSpec tol;
    bool pass = false;
};

struct BusySuiteReport {
    std::vector<BusyTargetResult> targets;
    std::uint64_t n = 0;
    std::uint64_t censored = 0;  // replications that hit the horizon cap
    bool all_pass = true;
};

// Busy-period battery: mean residual area vs 1/(2c^3) (5% band), mean area
// from fixed starts vs x^2/(2c)+x/(2c^2) (5% band), and E[exp(-gamma area)]
// vs the stationary transform (3 CI half-widths). Requires n >= 10^4.
BusySuiteReport busy_period_suite(const QueueParams& params, const SimConfig& sim,
                                  std::uint64_t n,
                                  const std::vector<double>& x_grid = {0.5, 1.0, 2.0},
                                  const std::vector<double>& gamma_grid = {0.5, 1.0, 2.0},
                                  unsigned n_threads = 0);

}  // namespace qarea
