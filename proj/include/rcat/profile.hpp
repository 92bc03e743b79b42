#pragma once

#include <vector>

#include "rcat/family.hpp"
#include "rcat/hyperbolic.hpp"
#include "rcat/quadrature.hpp"

namespace rcat {

/// Controls for the profile ODE integration.
struct OdeSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double f_cap = 30.0;
    long max_steps = 1000000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::domain_error("OdeSettings: tolerances must be positive");
        if (!(f_cap > 0.0))
            throw std::domain_error("OdeSettings: f_cap must be positive");
        if (max_steps < 1)
            throw std::domain_error("OdeSettings: max_steps must be >= 1");
    }
};

/// Numerically integrated profile f(a, t) for t >= 0: samples at every
/// accepted step, the stopping height t_stop (where f first reaches the
/// radius cap) and the half-height estimate
///   L_estimate = t_stop + [L(a) - lambda(a, f(t_stop))]
/// which completes the blow-up tail by quadrature. The t < 0 half is the
/// even reflection and is not stored.
struct ProfileCurve {
    FamilyParams family;
    double a = 0.0;
    std::vector<ProfilePoint> samples;
    double t_stop = 0.0;
    double L_estimate = 0.0;
    double L_error_estimate = 0.0;
    bool reached_cap = false;

    /// Profile state at height t in [0, t_stop] by cubic Hermite
    /// interpolation between accepted steps (f_tt re-evaluated from the ODE).
    ProfilePoint at(double t) const;
};

/// Solve f'' = q coth(f) (1 + f'^2), f(0) = a, f'(0) = 0 forward in t until
/// f reaches the cap. Rejects a < 1e-4 (coth blow-up makes smaller necks
/// numerically degenerate) and the cylinder regime q = 0.
ProfileCurve integrate_profile(const FamilyParams& fp, double a,
                               const OdeSettings& s = {},
                               const QuadratureSettings& qs = {});

/// Conserved-quantity defect sinh^q(f)/sqrt(1+f_t^2) - sinh^q(a), evaluated
/// in log space so the result is exact to roundoff even when sinh^q(f)
/// is astronomically large.
double first_integral_residual(const FamilyParams& fp, double a,
                               const ProfilePoint& p);

struct CrossValidation {
    double max_gap = 0.0;
    int n_points = 0;
    bool pass = false;
};

/// Independent two-route agreement check: along the integrated trajectory,
/// |lambda(a, f(t_i)) - t_i| must stay below 1e-6 (ODE route vs quadrature
/// route for the same curve).
CrossValidation cross_validate(const FamilyParams& fp, double a,
                               const OdeSettings& s = {},
                               const QuadratureSettings& qs = {});

}  // namespace rcat
