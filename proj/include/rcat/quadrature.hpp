#pragma once

#include <stdexcept>

#include "rcat/family.hpp"

namespace rcat {

/// Tolerances and budget for the height integrals. v_max = 0 picks the
/// truncation point for improper integrals automatically from the tail
/// bound; a positive value overrides it. All evaluation is deterministic.
struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;
    double v_max = 0.0;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::domain_error("QuadratureSettings: tolerances must be positive");
        if (max_subdivisions < 1)
            throw std::domain_error("QuadratureSettings: max_subdivisions must be >= 1");
    }
};

/// A computed height (or height derivative) together with the achieved
/// error estimate, which includes the certified truncation remainder for
/// improper integrals.
struct HeightValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Thrown when the adaptive quadrature cannot reach the requested
/// tolerances; carries the best value and the achieved error estimate.
struct QuadratureError : std::runtime_error {
    double value;
    double error_estimate;
    QuadratureError(const std::string& what, double v, double e)
        : std::runtime_error(what), value(v), error_estimate(e) {}
};

/// Supremum of the half-heights: pi*(r+1)/(2*(n-r-1)) = pi/(2q).
double height_limit(const FamilyParams& fp);

/// lambda(a, rho): height at which the profile through neck radius a
/// reaches hyperbolic radius rho,
///   integral over v in [1, sinh(rho)/sinh(a)] of
///   (v^{2q}-1)^{-1/2} * sinh(a) * (1+v^2 sinh^2 a)^{-1/2} dv.
/// Exactly zero at rho = a; strictly increasing in rho; < L(a).
HeightValue lambda_height(const FamilyParams& fp, double a, double rho,
                          const QuadratureSettings& s = {});

/// Half-height L(a) = lambda(a, infinity). Strictly increasing in a with
/// values in (0, height_limit).
HeightValue half_height(const FamilyParams& fp, double a,
                        const QuadratureSettings& s = {});

/// height_limit - L(a), computed from its own integral representation
///   integral of (v^{2q}-1)^{-1/2} * [1/v - sinh(a)(1+v^2 sinh^2 a)^{-1/2}] dv
/// whose integrand is evaluated without cancellation. For large a this is
/// far more accurate than subtracting two O(1) quantities, which matters
/// when differencing L across nearby arguments.
HeightValue half_height_deficit(const FamilyParams& fp, double a,
                                const QuadratureSettings& s = {});

/// dL/da = cosh(a) * integral over v in [1, inf) of
///   (v^{2q}-1)^{-1/2} (1+v^2 sinh^2 a)^{-3/2} dv  > 0.
HeightValue half_height_derivative(const FamilyParams& fp, double a,
                                   const QuadratureSettings& s = {});

/// First partial derivative of lambda with respect to the neck radius:
/// boundary term plus integral term,
///   -tanh(rho) coth(a) (W^{2q}-1)^{-1/2}
///   + cosh(a) * integral_1^W (v^{2q}-1)^{-1/2}(1+v^2 sinh^2 a)^{-3/2} dv,
/// with W = sinh(rho)/sinh(a). Refuses rho so close to a that the boundary
/// term is numerically singular (W^{2q}-1 < 1e-10).
double lambda_a(const FamilyParams& fp, double a, double rho,
                const QuadratureSettings& s = {});

/// Second partial derivative of lambda with respect to the neck radius:
///   tanh(rho)/sinh^2(a) * (W^{2q}-1)^{-3/2} *
///       [ W^{2q}(1 - q cosh^2 a - cosh^2 a/cosh^2 rho) + (cosh^2 a/cosh^2 rho - 1) ]
///   + sinh(a) * integral_1^W (v^{2q}-1)^{-1/2}(1+v^2 sinh^2 a)^{-5/2}
///                            (1 - v^2 - 2 v^2 cosh^2 a) dv.
/// Negative on the domain where the one-parameter family is concave in a
/// (all rho > a when q >= 1; rho <= arcosh(sqrt(1/(1-q))) when q < 1).
double lambda_aa(const FamilyParams& fp, double a, double rho,
                 const QuadratureSettings& s = {});

}  // namespace rcat
