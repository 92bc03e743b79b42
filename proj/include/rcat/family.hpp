#pragma once

#include <stdexcept>
#include <string>

namespace rcat {

/// Regime of the exponent q = (n-r-1)/(r+1).
///
/// q == 0 is the cylinder case (n = r+1); for q > 0 the family of
/// rotational hypersurfaces with H_{r+1} = 0 is a one-parameter family of
/// catenoid-like annuli, and several global statements (threshold T,
/// validated radius interval J_q) split at q = 1.
enum class QRegime { cylinder, below_one, at_least_one };

/// Ambient dimension n, curvature order r and the derived exponent
/// q = (n-r-1)/(r+1) that drives the profile ODE and every height integral.
struct FamilyParams {
    int n = 0;
    int r = 0;
    double q = 0.0;
    QRegime regime = QRegime::cylinder;
};

inline FamilyParams make_family(int n, int r) {
    if (n < 2)
        throw std::domain_error("make_family: require n >= 2, got n=" + std::to_string(n));
    if (r < 0)
        throw std::domain_error("make_family: require r >= 0, got r=" + std::to_string(r));
    if (r > n - 1)
        throw std::domain_error("make_family: require r <= n-1 = " + std::to_string(n - 1) +
                                ", got r=" + std::to_string(r));
    FamilyParams fp;
    fp.n = n;
    fp.r = r;
    fp.q = static_cast<double>(n - r - 1) / static_cast<double>(r + 1);
    fp.regime = fp.q == 0.0 ? QRegime::cylinder
              : fp.q < 1.0  ? QRegime::below_one
                            : QRegime::at_least_one;
    return fp;
}

inline const char* regime_name(QRegime r) {
    switch (r) {
        case QRegime::cylinder: return "q=0";
        case QRegime::below_one: return "0<q<1";
        case QRegime::at_least_one: return "q>=1";
    }
    return "?";
}

}  // namespace rcat
