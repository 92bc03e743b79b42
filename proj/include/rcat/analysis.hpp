#pragma once

#include <string>
#include <vector>

#include "rcat/family.hpp"
#include "rcat/quadrature.hpp"

namespace rcat {

/// Solutions of the two-circle boundary value problem at height +-t0 and
/// radius R: the number of family members through the circles, their neck
/// radii (ascending, bracketing a0 in the two-solution case), and the
/// minimal reachable radius m0 = phi^{t0}(a0). `validated` is false when
/// the inputs leave the regime where the count statement is proven
/// (q < 1 with t0 or R beyond the thresholds); there the count comes from
/// a dense scan and is reported verbatim.
struct BvpResult {
    double t0 = 0.0;
    double R = 0.0;
    int count = 0;
    std::vector<double> roots;
    double m0 = 0.0;
    double a0 = 0.0;
    bool validated = true;
    std::string note;
};

/// One point of the envelope: minimal radius m(t) over the family and the
/// neck radius attaining it.
struct EnvelopePoint {
    double t = 0.0;
    double m = 0.0;
    double a_star = 0.0;
};

struct EnvelopeCurvePoint {
    EnvelopePoint point;
    double tangency_residual = 0.0;  // d/da phi^t at a_star, central difference
    bool ok = false;
    std::string status;
};

/// Upper-half crossing of two distinct profile curves.
struct ProfileIntersection {
    double rho = 0.0;
    double t = 0.0;
    double lambda_residual = 0.0;  // |lambda(a,rho) - lambda(b,rho)| at the crossing
};

/// phi^{t0}(a) = f(a, t0): radius at height t0 of the member with neck a,
/// found by inverting the strictly increasing lambda(a, .). Requires
/// L(a) > t0; the thrown message carries L(a). t0 = 0 returns a.
double phi(const FamilyParams& fp, double t0, double a,
           const QuadratureSettings& s = {});

/// Unique alpha with L(alpha) = t0, for 0 < t0 < height_limit.
/// |L(alpha) - t0| < 1e-10 on return.
double alpha_of(const FamilyParams& fp, double t0,
                const QuadratureSettings& s = {});

/// arcosh(sqrt(1/(1-q))), the radius below which lambda(., rho) is
/// strictly concave when q < 1. Not defined for q >= 1 (concavity then
/// holds for every rho).
double neck_threshold_M(const FamilyParams& fp);

/// Height threshold T below which the minimizer of phi^{t0} is provably
/// unique: the full height_limit when q >= 1, else lambda(A, M) where A
/// maximizes a -> lambda(a, M) on (0, M).
double height_threshold_T(const FamilyParams& fp,
                          const QuadratureSettings& s = {});

struct EnvelopeMin {
    double m0 = 0.0;
    double a0 = 0.0;
};

/// Minimum of phi^{t0} over (alpha, infinity) for 0 < t0 < T: bracket by a
/// geometric ladder, golden-section, then polish on the stationarity
/// condition lambda_a(a, phi(a)) = 0.
EnvelopeMin envelope_min(const FamilyParams& fp, double t0,
                         const QuadratureSettings& s = {});

/// Count and locate the rotational solutions through the circle pair
/// (t0, R): 0 / 1 / 2 by comparing R with m0 (tie tolerance
/// 1e-6 * max(1, m0)); two-solution roots by bisection on the monotone
/// flanks. Outside the validated regime the count comes from a dense scan.
BvpResult count_bvp_solutions(const FamilyParams& fp, double t0, double R,
                              const QuadratureSettings& s = {});

/// The single upper-half crossing of the profiles with necks a != b:
/// sign-scan of lambda(a,.) - lambda(b,.) on a geometric grid refined by
/// bisection. The full intersection set is this point and its t -> -t
/// mirror.
std::vector<ProfileIntersection> profile_intersections(
    const FamilyParams& fp, double a, double b,
    const QuadratureSettings& s = {});

/// Envelope over an ascending height grid inside (0, T); per-point failures
/// are recorded in the status instead of aborting the sweep.
std::vector<EnvelopeCurvePoint> envelope_curve(
    const FamilyParams& fp, const std::vector<double>& t_grid,
    const QuadratureSettings& s = {});

}  // namespace rcat
