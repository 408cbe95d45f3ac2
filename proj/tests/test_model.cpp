#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <string>
#include <vector>

#include "qarea/model.hpp"

using namespace qarea;

TEST_CASE("validate_params accepts positive drain rates only") {
    CHECK(validate_params(1.0).c() == 1.0);
    CHECK(QueueParams(2.5).c() == 2.5);
    CHECK_THROWS_AS(validate_params(0.0), NonPositiveDrainRate);
    CHECK_THROWS_AS(validate_params(-2.5), NonPositiveDrainRate);
    CHECK_THROWS_AS(validate_params(std::numeric_limits<double>::quiet_NaN()),
                    NonPositiveDrainRate);
}

TEST_CASE("grid construction rejects degenerate inputs") {
    CHECK_THROWS_AS(GridPath(0.0, 0.0, {1.0}), DomainError);
    CHECK_THROWS_AS(GridPath(0.0, -1.0, {1.0}), DomainError);
    CHECK_THROWS_AS(GridPath(0.0, 1.0, {}), DomainError);

    const GridPath g(2.0, 0.5, {1.0, 2.0, 3.0});
    CHECK(g.size() == 3);
    CHECK(g.time_at(0) == 2.0);
    CHECK(g.time_at(2) == doctest::Approx(3.0));
    CHECK(g.t_end() == doctest::Approx(3.0));
}

TEST_CASE("trapezoid_area matches hand evaluations") {
    CHECK(trapezoid_area(GridPath(0.0, 0.25, {1.0, 1.0, 1.0, 1.0, 1.0})) ==
          doctest::Approx(1.0));
    CHECK(trapezoid_area(GridPath(0.0, 0.5, {0.0, 0.5, 1.0})) == doctest::Approx(0.5));
    CHECK(trapezoid_area(GridPath(0.0, 1.0, {0.0, 1.0, 0.0})) == doctest::Approx(1.0));
    CHECK(trapezoid_area(GridPath(0.0, 1.0, {5.0})) == 0.0);  // one node, no span
}

TEST_CASE("trapezoid_area is linear and positively homogeneous") {
    const std::vector<double> f{0.3, 1.7, 0.2, 2.5, 0.9};
    const std::vector<double> g{1.1, 0.0, 3.3, 0.4, 2.2};
    const double h = 0.25;
    std::vector<double> fg(f.size()), f3(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        fg[i] = f[i] + g[i];
        f3[i] = 3.0 * f[i];
    }
    const double af = trapezoid_area(GridPath(0.0, h, f));
    const double ag = trapezoid_area(GridPath(0.0, h, g));
    CHECK(trapezoid_area(GridPath(0.0, h, fg)) == doctest::Approx(af + ag));
    CHECK(trapezoid_area(GridPath(0.0, h, f3)) == doctest::Approx(3.0 * af));
    CHECK(af >= 0.0);
}

TEST_CASE("branch names are stable strings") {
    CHECK(std::string(branch_name(Branch::Interior)) == "Interior");
    CHECK(std::string(branch_name(Branch::Boundary)) == "Boundary");
}
