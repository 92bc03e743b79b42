#include "rcat/curvature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rcat {

namespace {

double binomial(int n, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (n - i + 1) / i;
    return c;
}

int sign_of(double x, double dead_band) {
    if (std::abs(x) < dead_band) return 0;
    return x > 0.0 ? 1 : -1;
}

}  // namespace

Eigen::VectorXd principal_curvatures(const FamilyParams& fp, const ProfilePoint& p) {
    check_profile_point(p);
    const double w = 1.0 / std::sqrt(1.0 + p.f_t * p.f_t);
    const double coth = 1.0 / std::tanh(p.f);
    Eigen::VectorXd k(fp.n);
    k.head(fp.n - 1).setConstant(coth * w);
    k[fp.n - 1] = -p.f_tt * w * w * w;
    return k;
}

Eigen::VectorXd elementary_symmetric(const Eigen::VectorXd& k) {
    const int n = static_cast<int>(k.size());
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j >= 1; --j) e[j] += k[i] * e[j - 1];
    return e;
}

Eigen::VectorXd mean_curvatures(const Eigen::VectorXd& k) {
    const int n = static_cast<int>(k.size());
    if (n < 1) throw std::domain_error("mean_curvatures: need at least one curvature");
    const Eigen::VectorXd e = elementary_symmetric(k);
    Eigen::VectorXd H(n);
    for (int j = 1; j <= n; ++j) H[j - 1] = e[j] / binomial(n, j);
    return H;
}

std::vector<Eigen::VectorXd> newton_eigenvalues(const Eigen::VectorXd& k, int up_to) {
    const int n = static_cast<int>(k.size());
    if (up_to > n - 1)
        throw std::domain_error("newton_eigenvalues: up_to must be <= n-1");
    const Eigen::VectorXd e = elementary_symmetric(k);
    std::vector<Eigen::VectorXd> out;
    out.reserve(up_to + 1);
    Eigen::VectorXd mu = Eigen::VectorXd::Ones(n);
    out.push_back(mu);
    for (int j = 1; j <= up_to; ++j) {
        // P_j = e_j I - A P_{j-1} diagonalizes with A: entrywise recursion.
        mu = e[j] - k.array() * mu.array();
        out.push_back(mu);
    }
    return out;
}

double profile_equation_residual(const FamilyParams& fp, const ProfilePoint& p) {
    check_profile_point(p);
    const double coth = 1.0 / std::tanh(p.f);
    const double w2 = 1.0 + p.f_t * p.f_t;
    const double r = fp.r;
    return -std::pow(coth, r) * p.f_tt * std::pow(w2, -(r + 3.0) / 2.0) +
           fp.q * std::pow(coth, r + 1.0) * std::pow(w2, -(r + 1.0) / 2.0);
}

CurvatureRecord curvature_record(const FamilyParams& fp, const ProfilePoint& p) {
    CurvatureRecord rec;
    rec.k = principal_curvatures(fp, p);
    rec.H = mean_curvatures(rec.k);
    rec.newton_eigs = newton_eigenvalues(rec.k, fp.n - 1);
    return rec;
}

HjSignReport verify_hj_signs(const FamilyParams& fp, double a, int n_samples,
                             const OdeSettings& s, const QuadratureSettings& qs) {
    if (fp.r < 1 || fp.r >= fp.n - 1)
        throw std::domain_error("verify_hj_signs: requires 1 <= r < n-1");
    if (n_samples < 1)
        throw std::domain_error("verify_hj_signs: n_samples must be >= 1");

    const ProfileCurve curve = integrate_profile(fp, a, s, qs);
    HjSignReport rep;
    rep.n_samples = n_samples;
    rep.min_newton_r_eigenvalue = std::numeric_limits<double>::infinity();
    rep.max_h_rp2 = -std::numeric_limits<double>::infinity();

    constexpr double kDeadBand = 1e-12;
    // Sampling stops short of the cap: the curvatures decay like e^{-q f}
    // toward the blow-up, so near it the top-order H_j drop below the
    // dead-band floor and carry no sign information.
    for (int i = 0; i < n_samples; ++i) {
        const double t = 0.9 * curve.t_stop * i / std::max(1, n_samples - 1);
        const ProfilePoint p = curve.at(t);
        const Eigen::VectorXd k = principal_curvatures(fp, p);
        const Eigen::VectorXd H = mean_curvatures(k);

        rep.max_abs_h_rp1 = std::max(rep.max_abs_h_rp1, std::abs(H[fp.r]));
        rep.max_kn_qk1_residual =
            std::max(rep.max_kn_qk1_residual, std::abs(k[fp.n - 1] + fp.q * k[0]));

        for (int j = 1; j <= fp.n; ++j) {
            if (j == fp.r + 1) continue;
            const int want = fp.r + 1 - j > 0 ? 1 : -1;
            if (sign_of(H[j - 1], kDeadBand) != want) {
                ++rep.violations;
                std::ostringstream msg;
                msg << "H_" << j << " = " << H[j - 1] << " at t=" << t
                    << " (expected sign " << want << ")";
                rep.findings.push_back(msg.str());
            }
        }

        const auto newton = newton_eigenvalues(k, fp.r);
        rep.min_newton_r_eigenvalue =
            std::min(rep.min_newton_r_eigenvalue, newton[fp.r].minCoeff());
        if (fp.r + 2 <= fp.n)
            rep.max_h_rp2 = std::max(rep.max_h_rp2, H[fp.r + 1]);
    }

    rep.pass = rep.violations == 0 && rep.max_abs_h_rp1 < 1e-9 &&
               rep.min_newton_r_eigenvalue > 0.0;
    if (rep.min_newton_r_eigenvalue <= 0.0)
        rep.findings.push_back("nonpositive P_r eigenvalue encountered");
    return rep;
}

CylinderReport cylinder_case(const FamilyParams& fp, double c) {
    if (fp.q != 0.0)
        throw std::domain_error("cylinder_case: requires q = 0 (n = r+1)");
    if (!(c > 0.0))
        throw std::domain_error("cylinder_case: require c > 0");

    CylinderReport rep;
    rep.c = c;
    const ProfilePoint p{0.0, c, 0.0, 0.0};
    rep.equation_residual = profile_equation_residual(fp, p);
    const Eigen::VectorXd k = principal_curvatures(fp, p);
    rep.k_tangent = k[0];
    rep.k_axis = k[fp.n - 1];
    rep.h_n = mean_curvatures(k)[fp.n - 1];
    rep.pass = rep.equation_residual == 0.0 && rep.k_axis == 0.0 && rep.h_n == 0.0;
    return rep;
}

}  // namespace rcat
