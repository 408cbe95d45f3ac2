#include "qarea/stats.hpp"

#include <algorithm>
#include <cmath>

namespace qarea {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile needs p in (0,1)");

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double z_for_confidence(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must be in (0,1)");
    return normal_quantile(0.5 + 0.5 * level);
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
    if (n == 0) throw DomainError("wilson_interval needs n > 0");
    if (hits > n) throw DomainError("hits exceed replications");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double zero_hit_upper_bound(std::uint64_t n, double level) {
    if (n == 0) throw DomainError("zero_hit_upper_bound needs n > 0");
    const double alpha = 0.5 * (1.0 - level);
    return -std::log(alpha) / static_cast<double>(n);
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.17) return 1.0;  // true tail mass above 0.9999 here
    double acc = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * lambda * lambda * k * k);
        acc += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("ks_test needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        const double up = (static_cast<double>(i) + 1.0) / n - f;
        const double down = f - static_cast<double>(i) / n;
        d = std::max({d, up, down});
    }
    const double sqrtn = std::sqrt(n);
    const double lambda = (sqrtn + 0.12 + 0.11 / sqrtn) * d;
    return {d, kolmogorov_sf(lambda)};
}

double MeanAccumulator::mean() const {
    if (n == 0) throw DomainError("empty accumulator");
    return sum / static_cast<double>(n);
}

double MeanAccumulator::sample_variance() const {
    if (n < 2) throw DomainError("variance needs n >= 2");
    const double nn = static_cast<double>(n);
    const double m = sum / nn;
    return std::max(0.0, (sumsq - nn * m * m) / (nn - 1.0));
}

double MeanAccumulator::std_error() const {
    return std::sqrt(sample_variance() / static_cast<double>(n));
}

EstimatorReport mean_report(const MeanAccumulator& acc, std::uint64_t seed,
                            double wall_seconds, double confidence) {
    const double z = z_for_confidence(confidence);
    EstimatorReport r;
    r.estimate = acc.mean();
    r.std_error = acc.std_error();
    r.ci_low = r.estimate - z * r.std_error;
    r.ci_high = r.estimate + z * r.std_error;
    r.n_replications = acc.n;
    r.seed = seed;
    r.wall_time_seconds = wall_seconds;
    r.confidence = confidence;
    return r;
}

EstimatorReport proportion_report(std::uint64_t hits, std::uint64_t n, std::uint64_t seed,
                                  double wall_seconds, double confidence) {
    EstimatorReport r;
    const double nn = static_cast<double>(n);
    r.estimate = static_cast<double>(hits) / nn;
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / nn);
    r.hits = hits;
    r.n_replications = n;
    r.seed = seed;
    r.wall_time_seconds = wall_seconds;
    r.confidence = confidence;
    if (hits == 0) {
        r.zero_hits = true;
        r.ci_low = 0.0;
        r.ci_high = zero_hit_upper_bound(n, confidence);
    } else {
        const auto w = wilson_interval(hits, n, z_for_confidence(confidence));
        r.ci_low = w.low;
        r.ci_high = w.high;
    }
    return r;
}

}  // namespace qarea
