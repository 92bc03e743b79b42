#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "rcat/family.hpp"

namespace rcat {

/// Point of H^n x R in ball-model coordinates: |x| < 1, t unrestricted.
struct AmbientPoint {
    Eigen::VectorXd x;
    double t = 0.0;
};

/// Tangent vector of H^n x R at some point, split into the horizontal
/// (ball-coordinate) part and the vertical component.
struct AmbientVector {
    Eigen::VectorXd x;
    double t = 0.0;
};

/// One point of a profile curve: hyperbolic radius f(t) > 0 and its first
/// two t-derivatives. Radii and heights are geodesic lengths, not ball
/// coordinates.
struct ProfilePoint {
    double t = 0.0;
    double f = 0.0;
    double f_t = 0.0;
    double f_tt = 0.0;
};

inline void check_profile_point(const ProfilePoint& p) {
    if (!(p.f > 0.0))
        throw std::domain_error("ProfilePoint: require f > 0");
}

/// Conformal factor 2/(1-|x|^2) of the ball-model metric.
template <typename Derived>
double metric_factor(const Eigen::MatrixBase<Derived>& x) {
    const double n2 = x.squaredNorm();
    if (n2 > 1.0 - 1e-12)
        throw std::domain_error("metric_factor: |x| must be <= 1 - 1e-12");
    return 2.0 / (1.0 - n2);
}

/// Geodesic distance from the ball center to a ball-model point,
/// obtained by integrating the conformal factor radially.
template <typename Derived>
double distance_to_origin(const Eigen::MatrixBase<Derived>& x) {
    const double s = x.norm();
    if (s >= 1.0)
        throw std::domain_error("distance_to_origin: |x| must be < 1");
    return 2.0 * std::atanh(s);
}

/// Embed the rotational parametrization point: hyperbolic radius rho > 0
/// along the unit direction zeta, at height t. Ball radius is tanh(rho/2).
template <typename Derived>
AmbientPoint ball_embed(double rho, double t, const Eigen::MatrixBase<Derived>& zeta) {
    if (!(rho > 0.0))
        throw std::domain_error("ball_embed: require rho > 0");
    if (std::abs(zeta.norm() - 1.0) > 1e-12)
        throw std::domain_error("ball_embed: zeta must be a unit vector (tol 1e-12)");
    AmbientPoint p;
    p.x = std::tanh(rho / 2.0) * zeta;
    p.t = t;
    return p;
}

/// Unit normal of the rotational hypersurface at a profile point, in the
/// orientation with horizontal component along -zeta:
///   N = (1+f_t^2)^{-1/2} * ( -zeta / (2 cosh^2(f/2)),  f_t ).
/// Unit length holds in the product metric, not the Euclidean one.
template <typename Derived>
AmbientVector normal_vector(const ProfilePoint& p, const Eigen::MatrixBase<Derived>& zeta) {
    check_profile_point(p);
    if (std::abs(zeta.norm() - 1.0) > 1e-12)
        throw std::domain_error("normal_vector: zeta must be a unit vector (tol 1e-12)");
    const double c = std::cosh(p.f / 2.0);
    const double s = 1.0 / std::sqrt(1.0 + p.f_t * p.f_t);
    AmbientVector v;
    v.x = (-s / (2.0 * c * c)) * zeta;
    v.t = s * p.f_t;
    return v;
}

/// Product-metric norm of a tangent vector attached at `at`.
inline double product_metric_norm(const AmbientPoint& at, const AmbientVector& v) {
    const double factor = metric_factor(at.x);
    return std::sqrt(factor * factor * v.x.squaredNorm() + v.t * v.t);
}

}  // namespace rcat
