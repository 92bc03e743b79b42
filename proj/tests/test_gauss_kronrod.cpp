#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rcat/gauss_kronrod.hpp"

using rcat::quad::adaptive_gk15;

TEST_CASE("exact on smooth integrands") {
    auto r1 = adaptive_gk15([](double x) { return x * x; }, 0.0, 1.0, 1e-12, 1e-14, 50);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto r2 = adaptive_gk15([](double x) { return std::sin(x); }, 0.0,
                            std::numbers::pi, 1e-12, 1e-14, 50);
    CHECK(r2.converged);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r2.error >= std::abs(r2.value - 2.0));
}

TEST_CASE("oscillatory integrand needs and gets subdivisions") {
    auto r = adaptive_gk15([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0,
                           1e-12, 1e-14, 100);
    CHECK(r.converged);
    CHECK(r.intervals > 1);
    CHECK(r.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-12));
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    auto r = adaptive_gk15([](double x) { return std::cos(500.0 * x); }, 0.0, 10.0,
                           1e-14, 1e-16, 2);
    CHECK_FALSE(r.converged);
    CHECK(r.error > 0.0);
}

TEST_CASE("empty range") {
    auto r = adaptive_gk15([](double) { return 1.0; }, 2.0, 2.0, 1e-10, 1e-12, 10);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}
