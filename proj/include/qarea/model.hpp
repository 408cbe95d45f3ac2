#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qarea {

// Error hierarchy. Everything thrown on purpose derives from Error so the
// CLI can map domain failures to one exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveDrainRate : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class HorizonExceeded : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class InfeasibleGrid : public Error {
public:
    using Error::Error;
};

// Queue with unit input variance and constant drain rate c > 0.
class QueueParams {
public:
    explicit QueueParams(double c);
    double c() const { return c_; }

private:
    double c_;
};

QueueParams validate_params(double c);

// Uniform time grid t0, t0+h, ..., t0+(n-1)h with one value per node.
// Uniformity is structural: only (t0, h, values) is stored.
class GridPath {
public:
    GridPath(double t0, double h, std::vector<double> values);

    double t0() const { return t0_; }
    double h() const { return h_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double time_at(std::size_t i) const { return t0_ + h_ * static_cast<double>(i); }
    double t_end() const { return time_at(values_.size() - 1); }

private:
    double t0_;
    double h_;
    std::vector<double> values_;
};

// Trapezoid rule over the whole grid; a single node spans zero time.
double trapezoid_area(const GridPath& path);

// One excursion above delta: up-crossing of 2*delta at sigma, return to
// delta at tau, area between them, and xi = tau - sigma.
struct CycleRecord {
    double sigma = 0.0;
    double tau = 0.0;
    double area = 0.0;
    double xi = 0.0;
};

// One simulated workload path plus derived summaries.
struct WorkloadTrace {
    WorkloadTrace(QueueParams p, GridPath g, std::optional<double> hit, double a)
        : params(p), path(std::move(g)), hit_zero_at(hit), area(a) {}

    QueueParams params;
    GridPath path;
    std::optional<double> hit_zero_at;  // first passage of level 0, if observed
    double area = 0.0;                  // trapezoid area of the path
    std::vector<CycleRecord> cycles;    // filled on demand
};

enum class Branch { Interior, Boundary };

const char* branch_name(Branch b);

// Decay rate with the optimizer that attains it.
struct RateResult {
    double value = 0.0;
    double a_star = 0.0;
    double s_star = 0.0;
    Branch branch = Branch::Interior;
};

// Monte Carlo estimate with confidence interval. Mean-type reports satisfy
// ci half-width == z * std_error; proportion reports carry Wilson intervals.
struct EstimatorReport {
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t n_replications = 0;
    std::uint64_t seed = 0;
    double wall_time_seconds = 0.0;
    std::uint64_t hits = 0;     // meaningful for proportion estimates
    bool zero_hits = false;     // no replication triggered the event
    double confidence = 0.99;
};

}  // namespace qarea
