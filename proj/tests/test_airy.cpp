#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "qarea/airy.hpp"
#include "qarea/model.hpp"

using namespace qarea;

namespace {
// Reference values computed with 50-digit arbitrary-precision arithmetic.
struct Ref {
    double x;
    double ai;
};
const std::vector<Ref> kReference = {
    {0.0, 0.35502805388781723926},   {0.5, 0.23169360648083348977},
    {1.0, 0.13529241631288141552},   {2.0, 0.034924130423274379135},
    {4.0, 0.00095156385120480187362},{5.0, 0.00010834442813607441735},
    {6.0, 9.9476943602528895702e-6}, {7.0, 7.4921288639971670808e-7},
    {7.5, 1.9172560675134307516e-7}, {8.0, 4.6922076160992316256e-8},
    {8.5, 1.0997009755195506509e-8}, {9.0, 2.4711684308724898433e-9},
    {10.0, 1.1047532552898685934e-10},{12.0, 1.393184688875360839e-13},
    {15.0, 2.164962520737992299e-18},{20.0, 1.6916728686705403136e-27},
    {30.0, 3.2082175915504955711e-49},{50.0, 4.5849417240748284783e-104},
    {100.0, 2.6344821520881844896e-291},
};
}  // namespace

TEST_CASE("airy_ai matches high-precision references to 1e-10 relative") {
    for (const auto& ref : kReference) {
        CHECK(airy_ai(ref.x) == doctest::Approx(ref.ai).epsilon(1e-10));
    }
}

TEST_CASE("airy_ai rejects negative arguments") {
    CHECK_THROWS_AS(airy_ai(-0.5), DomainError);
    CHECK_THROWS_AS(airy_ai(-1e-12), DomainError);
}

TEST_CASE("airy_ai_value reports which branch evaluated") {
    CHECK(airy_ai_value(1.0).method == AiryMethod::PowerSeries);
    CHECK(airy_ai_value(20.0).method == AiryMethod::Asymptotic);
    CHECK(std::string(airy_method_name(AiryMethod::PowerSeries)) == "power_series");
    CHECK(std::string(airy_method_name(AiryMethod::Quadrature)) == "quadrature");
    CHECK(std::string(airy_method_name(AiryMethod::Asymptotic)) == "asymptotic");
}

TEST_CASE("series and expansion meet smoothly at the switch point") {
    const double xs = airy_switch_point();
    const double below = airy_ai(std::nextafter(xs, 0.0));
    const double above = airy_ai(std::nextafter(xs, 1e9));
    CHECK(std::abs(below / above - 1.0) <= 1e-10);
}

TEST_CASE("truncated asymptotic form behaves as documented") {
    // Order-1 correction is accurate to 1e-3 from x = 8 on.
    for (const auto& ref : kReference) {
        if (ref.x < 8.0) continue;
        CHECK(airy_ai_asymptotic(ref.x, 1) == doctest::Approx(ref.ai).epsilon(1e-3));
    }
    // Order-0 ratio approaches 1 for large argument.
    CHECK(airy_ai(30.0) / airy_ai_asymptotic(30.0, 0) == doctest::Approx(1.0).epsilon(1e-3));
    // The order-1 factor (1 - 5/48 x^{-3/2}) is strictly below 1.
    for (const double x : {0.5, 2.0, 8.0, 40.0}) {
        CHECK(airy_ai_asymptotic(x, 1) < airy_ai_asymptotic(x, 0));
    }
    CHECK_THROWS_AS(airy_ai_asymptotic(0.0, 1), DomainError);
    CHECK_THROWS_AS(airy_ai_asymptotic(-1.0, 0), DomainError);
}

TEST_CASE("certification quadrature agrees with the production evaluator") {
    for (const double x : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
        CHECK(std::abs(airy_ai(x) - airy_ai_certification(x)) <= 1e-8);
    }
}

TEST_CASE("scaled form cancels the exponential decay") {
    for (const double x : {0.5, 1.0, 5.0, 20.0, 100.0}) {
        CHECK(ai_scaled(x) == doctest::Approx(airy_ai(x) * std::exp(airy_zeta(x)))
                                  .epsilon(1e-10));
    }
    // Far beyond the underflow point of Ai itself, the scaled form stays finite.
    const double far = ai_scaled(1e6);
    CHECK(far > 0.0);
    CHECK(far < 1.0);
    CHECK(airy_zeta(4.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("Ai is strictly decreasing and log-concave on the grid") {
    std::vector<double> xs, log_ai;
    for (double x = 0.0; x <= 12.0; x += 0.25) {
        xs.push_back(x);
        log_ai.push_back(std::log(airy_ai(x)));
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        CHECK(log_ai[i] < log_ai[i - 1]);
    }
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        CHECK(log_ai[i + 1] - 2.0 * log_ai[i] + log_ai[i - 1] < 1e-12);
    }
}
