#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rcat/curvature.hpp"

using namespace rcat;

namespace {

double binom(int n, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (n - i + 1) / i;
    return c;
}

}  // namespace

TEST_CASE("principal curvatures at and off the neck") {
    const FamilyParams fp = make_family(4, 1);
    const double a = 1.0;
    const ProfilePoint neck{0.0, a, 0.0, fp.q / std::tanh(a)};
    const Eigen::VectorXd k = principal_curvatures(fp, neck);
    const double coth = 1.0 / std::tanh(a);
    CHECK(k[0] == doctest::Approx(coth).epsilon(1e-15));
    CHECK(k[1] == k[0]);
    CHECK(k[2] == k[0]);
    CHECK(k[3] == doctest::Approx(-fp.q * coth).epsilon(1e-15));
    CHECK(coth == doctest::Approx(1.3130352854993313).epsilon(1e-15));

    // slice-like limit: huge slope kills all curvatures
    const ProfilePoint steep{0.0, 1.0, 1e8, 1.0};
    const Eigen::VectorXd ks = principal_curvatures(fp, steep);
    CHECK(std::abs(ks[0]) < 1e-7);
    CHECK(std::abs(ks[3]) < 1e-23);
}

TEST_CASE("k_n = -q k_1 along integrated members") {
    for (auto [n, r, a] : std::vector<std::tuple<int, int, double>>{
             {4, 1, 1.0}, {3, 1, 0.5}, {6, 2, 2.0}}) {
        const FamilyParams fp = make_family(n, r);
        const ProfileCurve c = integrate_profile(fp, a);
        for (std::size_t i = 0; i < c.samples.size(); i += 7) {
            const Eigen::VectorXd k = principal_curvatures(fp, c.samples[i]);
            CHECK(std::abs(k[fp.n - 1] + fp.q * k[0]) < 1e-9);
        }
    }
}

TEST_CASE("mean curvatures: worked example, umbilic identity, zero map") {
    Eigen::VectorXd k(4);
    k << 1.0, 1.0, 1.0, -1.0;
    const Eigen::VectorXd H = mean_curvatures(k);
    CHECK(H[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(H[1] == 0.0);
    CHECK(H[2] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(H[3] == doctest::Approx(-1.0).epsilon(1e-15));

    const double c = 0.7;
    Eigen::VectorXd umb = Eigen::VectorXd::Constant(5, c);
    const Eigen::VectorXd Hu = mean_curvatures(umb);
    for (int j = 1; j <= 5; ++j)
        CHECK(Hu[j - 1] == doctest::Approx(std::pow(c, j)).epsilon(1e-14));

    CHECK(mean_curvatures(Eigen::VectorXd::Zero(4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("newton tensors: base case, worked example, trace identity") {
    Eigen::VectorXd k(4);
    k << 1.0, 1.0, 1.0, -1.0;
    const auto eigs = newton_eigenvalues(k, 3);
    REQUIRE(eigs.size() == 4);
    CHECK(eigs[0].isApprox(Eigen::VectorXd::Ones(4)));
    CHECK(eigs[1][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eigs[1][1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eigs[1][2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eigs[1][3] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(eigs[1].minCoeff() > 0.0);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5;
        Eigen::VectorXd kk(n);
        for (int i = 0; i < n; ++i) kk[i] = dist(rng);
        const Eigen::VectorXd H = mean_curvatures(kk);
        const auto P = newton_eigenvalues(kk, n - 1);
        for (int j = 0; j <= n - 1; ++j) {
            const double tr = P[j].sum();
            const double expected = (n - j) * binom(n, j) * (j == 0 ? 1.0 : H[j - 1]);
            CHECK(tr == doctest::Approx(expected).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(newton_eigenvalues(k, 4), std::domain_error);
}

TEST_CASE("sign structure along members and by algebra") {
    const HjSignReport r41 = verify_hj_signs(make_family(4, 1), 1.0, 100);
    CHECK(r41.pass);
    CHECK(r41.violations == 0);
    CHECK(r41.max_abs_h_rp1 < 1e-9);
    CHECK(r41.max_kn_qk1_residual < 1e-9);
    CHECK(r41.min_newton_r_eigenvalue > 0.0);
    CHECK(r41.max_h_rp2 < 0.0);

    const HjSignReport r62 = verify_hj_signs(make_family(6, 2), 0.7, 100);
    CHECK(r62.pass);
    CHECK(r62.max_h_rp2 < 0.0);

    // pure algebra: k = (kappa, ..., kappa, -q kappa) forces the pattern
    for (auto [n, r] : std::vector<std::pair<int, int>>{{4, 1}, {6, 2}, {5, 1}, {7, 3}}) {
        const FamilyParams fp = make_family(n, r);
        Eigen::VectorXd k = Eigen::VectorXd::Constant(n, 1.3);
        k[n - 1] = -fp.q * 1.3;
        const Eigen::VectorXd H = mean_curvatures(k);
        for (int j = 1; j <= n; ++j) {
            if (j == r + 1)
                CHECK(std::abs(H[j - 1]) < 1e-12);
            else if (j < r + 1)
                CHECK(H[j - 1] > 1e-12);
            else
                CHECK(H[j - 1] < -1e-12);
        }
    }

    CHECK_THROWS_AS(verify_hj_signs(make_family(4, 3), 1.0, 10), std::domain_error);
    CHECK_THROWS_AS(verify_hj_signs(make_family(4, 0), 1.0, 10), std::domain_error);
}

TEST_CASE("profile equation residual vanishes along the family") {
    const FamilyParams fp = make_family(4, 1);
    const ProfileCurve c = integrate_profile(fp, 1.0);
    for (std::size_t i = 0; i < c.samples.size(); i += 11)
        CHECK(std::abs(profile_equation_residual(fp, c.samples[i])) < 1e-12);
}

TEST_CASE("curvature record bundles consistent data") {
    const FamilyParams fp = make_family(6, 2);
    const ProfilePoint p{0.0, 0.7, 0.0, fp.q / std::tanh(0.7)};
    const CurvatureRecord rec = curvature_record(fp, p);
    CHECK(rec.k.size() == 6);
    CHECK(rec.H.size() == 6);
    CHECK(rec.newton_eigs.size() == 6);
    CHECK(std::abs(rec.H[fp.r]) < 1e-12);
    CHECK(rec.newton_eigs[fp.r].minCoeff() > 0.0);
}

TEST_CASE("cylinder case: exact zeros") {
    const FamilyParams fp = make_family(3, 2);
    for (double c : {0.5, 1.0, 2.0}) {
        const CylinderReport rep = cylinder_case(fp, c);
        CHECK(rep.pass);
        CHECK(rep.equation_residual == 0.0);
        CHECK(rep.k_axis == 0.0);
        CHECK(rep.h_n == 0.0);
        CHECK(rep.k_tangent == doctest::Approx(1.0 / std::tanh(c)).epsilon(1e-15));
    }
    CHECK(cylinder_case(fp, 1.0).k_tangent ==
          doctest::Approx(1.3130352854993313).epsilon(1e-14));
    CHECK_THROWS_AS(cylinder_case(make_family(4, 1), 1.0), std::domain_error);
    CHECK_THROWS_AS(cylinder_case(fp, -1.0), std::domain_error);
}
