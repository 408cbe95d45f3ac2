#include "qarea/model.hpp"

#include <cmath>

namespace qarea {

QueueParams::QueueParams(double c) : c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw NonPositiveDrainRate("drain rate must be a positive finite number, got " +
                                   std::to_string(c));
    }
}

QueueParams validate_params(double c) { return QueueParams(c); }

GridPath::GridPath(double t0, double h, std::vector<double> values)
    : t0_(t0), h_(h), values_(std::move(values)) {
    if (!std::isfinite(t0_)) throw DomainError("grid origin must be finite");
    if (!(h_ > 0.0) || !std::isfinite(h_)) throw DomainError("grid step must be positive");
    if (values_.empty()) throw DomainError("grid needs at least one node");
}

double trapezoid_area(const GridPath& path) {
    const auto& v = path.values();
    if (v.size() < 2) return 0.0;
    double acc = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += v[i];
    return acc * path.h();
}

const char* branch_name(Branch b) {
    return b == Branch::Interior ? "Interior" : "Boundary";
}

}  // namespace qarea
