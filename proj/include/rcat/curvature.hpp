#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rcat/family.hpp"
#include "rcat/hyperbolic.hpp"
#include "rcat/profile.hpp"

namespace rcat {

/// Pointwise extrinsic data of a rotational hypersurface: principal
/// curvatures k (the first n-1 equal by symmetry), normalized mean
/// curvatures H_1..H_n, and the diagonal entries of the Newton tensors
/// P_0..P_{n-1} in the principal frame.
struct CurvatureRecord {
    Eigen::VectorXd k;
    Eigen::VectorXd H;
    std::vector<Eigen::VectorXd> newton_eigs;
};

/// Principal curvatures of the rotational immersion at a profile point:
///   k_1 = ... = k_{n-1} = coth(f) (1+f_t^2)^{-1/2},
///   k_n = -f_tt (1+f_t^2)^{-3/2}.
Eigen::VectorXd principal_curvatures(const FamilyParams& fp, const ProfilePoint& p);

/// Normalized mean curvatures H_j = e_j(k) / C(n,j), j = 1..n, via the
/// ascending elementary-symmetric recursion (no root finding involved).
Eigen::VectorXd mean_curvatures(const Eigen::VectorXd& k);

/// Elementary symmetric polynomials e_0..e_n of the entries of k.
Eigen::VectorXd elementary_symmetric(const Eigen::VectorXd& k);

/// Diagonal entries of the Newton tensors P_0..P_{up_to} in the principal
/// frame, from the recursion P_0 = I, P_{j+1} = C(n,j+1) H_{j+1} I - A P_j.
std::vector<Eigen::VectorXd> newton_eigenvalues(const Eigen::VectorXd& k, int up_to);

/// Left-hand side of the profile equation, (q+1) * H_{r+1} expressed in
/// (f, f_t, f_tt):
///   -coth^r(f) f_tt (1+f_t^2)^{-(r+3)/2} + q coth^{r+1}(f) (1+f_t^2)^{-(r+1)/2}.
/// Vanishes identically along the family and in the cylinder case.
double profile_equation_residual(const FamilyParams& fp, const ProfilePoint& p);

/// Full curvature data at one profile point.
CurvatureRecord curvature_record(const FamilyParams& fp, const ProfilePoint& p);

/// Sign-structure audit along one member: at n_samples heights,
/// sign(H_j) must equal sign(r+1-j) for j != r+1 (dead-band 1e-12) and
/// |H_{r+1}| < 1e-9; also monitors k_n + q k_1, the P_r eigenvalue
/// positivity, and H_{r+2} staying negative.
struct HjSignReport {
    int n_samples = 0;
    int violations = 0;
    double max_abs_h_rp1 = 0.0;
    double max_kn_qk1_residual = 0.0;
    double min_newton_r_eigenvalue = 0.0;
    double max_h_rp2 = 0.0;  // only meaningful when r+2 <= n
    bool pass = false;
    std::vector<std::string> findings;
};

HjSignReport verify_hj_signs(const FamilyParams& fp, double a, int n_samples,
                             const OdeSettings& s = {},
                             const QuadratureSettings& qs = {});

/// Cylinder regime n = r+1: the constant profile f = c solves the profile
/// equation with residual exactly zero, k_n = 0 and H_n = 0.
struct CylinderReport {
    double c = 0.0;
    double equation_residual = 0.0;
    double k_tangent = 0.0;  // the n-1 equal curvatures coth(c)
    double k_axis = 0.0;     // k_n
    double h_n = 0.0;
    bool pass = false;
};

CylinderReport cylinder_case(const FamilyParams& fp, double c);

}  // namespace rcat
