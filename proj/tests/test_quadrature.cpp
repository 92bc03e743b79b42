#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rcat/quadrature.hpp"

using namespace rcat;

namespace {

QuadratureSettings tight() {
    QuadratureSettings s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-14;
    s.max_subdivisions = 400;
    return s;
}

}  // namespace

TEST_CASE("height limit closed form") {
    CHECK(height_limit(make_family(4, 1)) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(height_limit(make_family(3, 1)) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(height_limit(make_family(5, 1)) ==
          doctest::Approx(std::numbers::pi / 3).epsilon(1e-15));
    CHECK_THROWS_AS(height_limit(make_family(3, 2)), std::domain_error);
}

TEST_CASE("lambda: exact zero at rho=a, strictly increasing, below L") {
    const FamilyParams fp = make_family(4, 1);
    CHECK(lambda_height(fp, 1.0, 1.0).value == 0.0);
    CHECK(lambda_height(fp, 1.0, 1.0).error_estimate == 0.0);

    const double L = half_height(fp, 1.0).value;
    double prev = 0.0;
    for (double rho = 1.05; rho < 12.0; rho *= 1.3) {
        const double lam = lambda_height(fp, 1.0, rho).value;
        CHECK(lam > prev);
        CHECK(lam < L);
        prev = lam;
    }
    // rho -> infinity: lambda -> L from below
    CHECK(L - lambda_height(fp, 1.0, 40.0).value < 1e-12);
}

TEST_CASE("frozen reference values (40-digit oracle)") {
    const QuadratureSettings s = tight();
    CHECK(lambda_height(make_family(4, 1), 1.0, 2.0, s).value ==
          doctest::Approx(1.0386158808948349).epsilon(1e-11));
    CHECK(half_height(make_family(4, 1), 1.0, s).value ==
          doctest::Approx(1.3644961913128757).epsilon(1e-11));
    CHECK(half_height(make_family(3, 1), 0.5, s).value ==
          doctest::Approx(2.3060694609127015).epsilon(1e-11));
    CHECK(half_height(make_family(4, 1), 0.1, s).value ==
          doctest::Approx(0.36866455763095545).epsilon(1e-11));
    CHECK(half_height(make_family(6, 1), 2.0, s).value ==
          doctest::Approx(0.7672005480475972).epsilon(1e-11));
    CHECK(half_height(make_family(5, 2), 1.0, s).value ==
          doctest::Approx(2.0919598930693482).epsilon(1e-11));
    CHECK(half_height_derivative(make_family(4, 1), 1.0, s).value ==
          doctest::Approx(0.40173638246784478).epsilon(1e-11));
}

TEST_CASE("asymptotics: L(10) within 1e-3 of the limit, L(0+) -> 0") {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}}) {
        const FamilyParams fp = make_family(n, r);
        const double L10 = half_height(fp, 10.0).value;
        CHECK(std::abs(L10 - height_limit(fp)) < 1e-3);
        CHECK(L10 < height_limit(fp));
    }
    const FamilyParams fp = make_family(4, 1);
    CHECK(half_height(fp, 1e-6).value < half_height(fp, 1e-3).value);
    CHECK(half_height(fp, 1e-3).value < half_height(fp, 0.1).value);
    CHECK(half_height(fp, 1e-6).value < 1e-3);
}

TEST_CASE("derivative: positive, decaying, matching finite differences") {
    const FamilyParams fp = make_family(4, 1);
    const QuadratureSettings s = tight();

    const double d1 = half_height_derivative(fp, 1.0, s).value;
    const double d5 = half_height_derivative(fp, 5.0, s).value;
    const double d10 = half_height_derivative(fp, 10.0, s).value;
    CHECK(d1 > 0.0);
    CHECK(d5 > 0.0);
    CHECK(d10 > 0.0);
    CHECK(d5 < d1);
    CHECK(d10 < d5);
    CHECK(d10 < 1e-7);

    const double h = 1e-4;
    const double fd =
        (half_height(fp, 1.0 + h, s).value - half_height(fp, 1.0 - h, s).value) /
        (2.0 * h);
    CHECK(std::abs(d1 - fd) / d1 < 1e-6);
}

TEST_CASE("deficit is the complement of L") {
    for (double a : {0.1, 1.0, 5.0, 10.0}) {
        for (auto [n, r] : std::vector<std::pair<int, int>>{{4, 1}, {3, 1}, {6, 1}}) {
            const FamilyParams fp = make_family(n, r);
            const HeightValue L = half_height(fp, a);
            const HeightValue D = half_height_deficit(fp, a);
            const double gap = std::abs(L.value + D.value - height_limit(fp));
            CHECK(gap <= 10.0 * (L.error_estimate + D.error_estimate));
            CHECK(D.value > 0.0);
        }
    }
}

TEST_CASE("truncation bound is honest: a forced small v_max brackets the tail") {
    const FamilyParams fp = make_family(3, 1);  // q = 1/2, slow tail
    QuadratureSettings s;
    s.v_max = 50.0;
    // the certified remainder bound now exceeds the tolerance: reported,
    // with the truncated value and the bound attached
    bool threw = false;
    const double full = half_height(fp, 0.5).value;
    try {
        (void)half_height(fp, 0.5, s);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(std::abs(e.value - full) <= e.error_estimate);
        CHECK(e.value < full);  // truncation can only lose positive mass
    }
    CHECK(threw);
}

TEST_CASE("lambda_a / lambda_aa: frozen values and FD agreement") {
    const QuadratureSettings s = tight();
    const FamilyParams f41 = make_family(4, 1);
    const FamilyParams f31 = make_family(3, 1);

    CHECK(lambda_a(f41, 0.5, 1.5, s) ==
          doctest::Approx(0.5124948751692776).epsilon(1e-10));
    CHECK(lambda_aa(f41, 0.5, 1.5, s) ==
          doctest::Approx(-2.3354908217713914).epsilon(1e-9));
    CHECK(lambda_aa(f31, 0.3, 0.8, s) ==
          doctest::Approx(-5.5506917511799249).epsilon(1e-9));
    CHECK(lambda_aa(f41, 0.5, 1.5, s) < 0.0);
    CHECK(lambda_aa(f31, 0.3, 0.8, s) < 0.0);

    // finite-difference oracles, steps 1e-4 (first) and 1e-3 (second)
    struct Case {
        FamilyParams fp;
        double a, rho;
    };
    for (const Case& c : {Case{f41, 0.5, 1.5}, Case{f41, 1.2, 2.0}, Case{f31, 0.3, 0.8}}) {
        const double h1 = 1e-4, h2 = 1e-3;
        auto lam = [&](double a) { return lambda_height(c.fp, a, c.rho, s).value; };
        const double fd1 = (lam(c.a + h1) - lam(c.a - h1)) / (2.0 * h1);
        const double fd2 = (lam(c.a + h2) - 2.0 * lam(c.a) + lam(c.a - h2)) / (h2 * h2);
        const double an1 = lambda_a(c.fp, c.a, c.rho, s);
        const double an2 = lambda_aa(c.fp, c.a, c.rho, s);
        CHECK(std::abs(an1 - fd1) / std::abs(an1) < 1e-4);
        CHECK(std::abs(an2 - fd2) / std::abs(an2) < 1e-4);
    }
}

TEST_CASE("domain guards") {
    const FamilyParams f41 = make_family(4, 1);
    const FamilyParams cyl = make_family(3, 2);
    CHECK_THROWS_AS(lambda_height(cyl, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(lambda_height(f41, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(lambda_height(f41, -1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(lambda_height(f41, 101.0, 102.0), std::domain_error);
    CHECK_THROWS_AS(lambda_height(f41, 1.0, 101.0), std::domain_error);
    CHECK_THROWS_AS(half_height(cyl, 1.0), std::domain_error);
    CHECK_THROWS_AS(lambda_a(f41, 1.0, 1.0 + 1e-15), std::domain_error);
    CHECK_THROWS_AS(lambda_aa(f41, 1.0, 0.9), std::domain_error);

    QuadratureSettings bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(half_height(f41, 1.0, bad), std::domain_error);
}

TEST_CASE("error estimate contract and reported non-convergence") {
    const FamilyParams fp = make_family(4, 1);
    for (double a : {0.1, 1.0, 3.0}) {
        QuadratureSettings s;
        const HeightValue L = half_height(fp, a, s);
        CHECK(L.error_estimate <= s.rel_tol * std::abs(L.value) + s.abs_tol);
    }
    QuadratureSettings starved;
    starved.rel_tol = 1e-14;
    starved.abs_tol = 1e-16;
    starved.max_subdivisions = 2;
    bool threw = false;
    try {
        (void)half_height(fp, 1.0, starved);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(e.error_estimate > 0.0);
        CHECK(std::abs(e.value - 1.3644961913128757) < 1e-3);
        CHECK(std::string(e.what()).find("error estimate") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("lambda stays below L over the (a, rho/a) grid") {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{4, 1}, {3, 1}, {6, 2}}) {
        const FamilyParams fp = make_family(n, r);
        for (double a : {0.05, 0.3, 1.0, 3.0, 10.0}) {
            const HeightValue L = half_height(fp, a);
            double prev = -1.0, prev_rho = 0.0;
            for (double ratio : {1.0, 1.2, 1.5, 2.0, 5.0, 10.0, 50.0}) {
                const double rho = std::min(a * ratio, 99.0);
                if (rho <= prev_rho) continue;  // clamped at the domain cap
                const HeightValue lam = lambda_height(fp, a, rho);
                // two independent quadratures: the inequality holds up to
                // their combined reported errors
                const double slack = lam.error_estimate + L.error_estimate;
                CHECK(lam.value <= L.value + slack);
                CHECK(lam.value >= prev - slack);
                // strictness is testable only while the e^{-q rho} gap to L
                // is above double resolution
                if (rho < 8.0) {
                    CHECK(lam.value < L.value);
                    CHECK(lam.value > prev);
                }
                prev = lam.value;
                prev_rho = rho;
            }
        }
    }
}

TEST_CASE("L monotone on a coarse log grid for four regimes") {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {5, 1}, {6, 1}}) {
        const FamilyParams fp = make_family(n, r);
        const QuadratureSettings s = tight();
        double prev = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double a = 0.05 * std::pow(200.0, i / 11.0);
            const double L = half_height(fp, a, s).value;
            CHECK(L > prev);
            prev = L;
        }
    }
}
