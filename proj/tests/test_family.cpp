#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rcat/family.hpp"

using namespace rcat;

TEST_CASE("q and regime from (n, r)") {
    const FamilyParams f41 = make_family(4, 1);
    CHECK(f41.q == 1.0);
    CHECK(f41.regime == QRegime::at_least_one);

    const FamilyParams f31 = make_family(3, 1);
    CHECK(f31.q == 0.5);
    CHECK(f31.regime == QRegime::below_one);

    const FamilyParams f32 = make_family(3, 2);
    CHECK(f32.q == 0.0);
    CHECK(f32.regime == QRegime::cylinder);

    CHECK(make_family(5, 2).q == 2.0 / 3.0);
    CHECK(make_family(9, 1).q == 3.5);
    CHECK(make_family(2, 0).q == 1.0);
}

TEST_CASE("domain errors name the violated bound") {
    CHECK_THROWS_WITH_AS(make_family(1, 0), doctest::Contains("n >= 2"),
                         std::domain_error);
    CHECK_THROWS_WITH_AS(make_family(4, -1), doctest::Contains("r >= 0"),
                         std::domain_error);
    CHECK_THROWS_WITH_AS(make_family(4, 4), doctest::Contains("r <= n-1"),
                         std::domain_error);
}

TEST_CASE("q monotone: decreasing in r, increasing in n") {
    for (int n = 2; n <= 12; ++n)
        for (int r = 1; r <= n - 1; ++r)
            CHECK(make_family(n, r).q < make_family(n, r - 1).q);
    for (int r = 0; r <= 5; ++r)
        for (int n = std::max(r + 2, 3); n <= 12; ++n)
            CHECK(make_family(n, r).q > make_family(n - 1, r).q);
}
