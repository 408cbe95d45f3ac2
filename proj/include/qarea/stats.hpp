#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qarea/model.hpp"

namespace qarea {

double normal_cdf(double x);

// Inverse standard normal CDF, p in (0,1). Rational initial guess refined
// by one Halley step; absolute error far below 1e-12 over (1e-300, 1-1e-16).
double normal_quantile(double p);

// Two-sided critical value: level 0.99 -> 2.5758...
double z_for_confidence(double level);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z);

// Exact one-sided upper bound for p when zero hits were observed,
// -ln((1-level)/2)/n; at level 0.95 this is the familiar 3.69/n.
double zero_hit_upper_bound(std::uint64_t n, double level);

// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double lambda);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF, with the
// Stephens finite-n correction applied before the limiting distribution.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

struct MeanAccumulator {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sumsq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    void merge(const MeanAccumulator& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const;
    double sample_variance() const;
    double std_error() const;
};

struct HitAccumulator {
    std::uint64_t n = 0;
    std::uint64_t hits = 0;

    void add(bool hit) {
        ++n;
        hits += hit ? 1 : 0;
    }
    void merge(const HitAccumulator& o) {
        n += o.n;
        hits += o.hits;
    }
};

EstimatorReport mean_report(const MeanAccumulator& acc, std::uint64_t seed,
                            double wall_seconds, double confidence = 0.99);

EstimatorReport proportion_report(std::uint64_t hits, std::uint64_t n, std::uint64_t seed,
                                  double wall_seconds, double confidence = 0.99);

}  // namespace qarea
