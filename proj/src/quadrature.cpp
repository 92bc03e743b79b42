#include "rcat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rcat/gauss_kronrod.hpp"

namespace rcat {

namespace {

// sinh/cosh of the geodesic inputs stay in double range only for moderate
// arguments; the asymptotic regime of interest ends far below this cap.
constexpr double kInputCap = 100.0;

// Head/tail split point of the v-integrals. The integrable (v-1)^{-1/2}
// endpoint singularity lives in [1, kSplit]; beyond it the integrand is
// smooth and is integrated in the stretched variable v = kSplit*e^x.
constexpr double kSplit = 2.0;

void require_positive_q(const FamilyParams& fp, const char* who) {
    if (!(fp.q > 0.0))
        throw std::domain_error(std::string(who) +
                                ": requires q > 0 (n > r+1); the cylinder regime has no height integral");
}

void require_radius(double a, const char* who) {
    if (!(a > 0.0))
        throw std::domain_error(std::string(who) + ": require a > 0");
    if (a > kInputCap)
        throw std::domain_error(std::string(who) + ": a exceeds the cap " +
                                std::to_string(kInputCap) +
                                " (sinh overflow; the asymptotic regime is already reached)");
}

// (v^{2q} - 1)^{-1/2} with v = 1 + s^2, stable near s = 0.
inline double inv_sqrt_pow_head(double q, double s2) {
    return 1.0 / std::sqrt(std::expm1(2.0 * q * std::log1p(s2)));
}

inline double inv_sqrt_pow(double q, double v) {
    return 1.0 / std::sqrt(std::expm1(2.0 * q * std::log(v)));
}

// sinh(a) * (1 + v^2 sinh^2 a)^{-1/2}, overflow-safe.
inline double weight1(double S, double v) {
    const double z = v * S;
    if (z > 1e150) return 1.0 / v;
    return S / std::hypot(1.0, z);
}

// (1 + v^2 sinh^2 a)^{-3/2}
inline double weight3(double S, double v) {
    const double h = std::hypot(1.0, v * S);
    return 1.0 / (h * h * h);
}

// 1/v - sinh(a)(1+v^2 sinh^2 a)^{-1/2}  =  1 / (v h (h + v S)), h = hypot(1, vS).
// The right-hand form has no cancellation.
inline double weight_deficit(double S, double v) {
    const double z = v * S;
    const double h = std::hypot(1.0, z);
    return 1.0 / (v * h * (h + z));
}

struct Piece {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int intervals = 0;
};

Piece accumulate(const Piece& a, const quad::IntegrationResult& r) {
    Piece out = a;
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    out.intervals += r.intervals;
    return out;
}

// Integrate g(v) * (v^{2q}-1)^{-1/2} over [1, W]: head piece under
// v = 1+s^2 (removes the endpoint singularity), tail piece over
// [kSplit, W] under v = kSplit*e^x (resolves the wide smooth stretch).
// w_minus_1 is W-1 computed stably by the caller when W is close to 1.
template <typename G>
Piece integrate_v(double q, double w_minus_1, double w_upper, G&& g,
                  const QuadratureSettings& s) {
    Piece total;
    const double head_hi = std::min(w_minus_1, kSplit - 1.0);
    if (head_hi > 0.0) {
        auto head = [&](double sv) {
            const double s2 = sv * sv;
            const double v = 1.0 + s2;
            return 2.0 * sv * inv_sqrt_pow_head(q, s2) * g(v);
        };
        total = accumulate(total, quad::adaptive_gk15(head, 0.0, std::sqrt(head_hi),
                                                      s.rel_tol * 0.5, s.abs_tol * 0.25,
                                                      s.max_subdivisions));
    }
    if (w_upper > kSplit) {
        auto tail = [&](double x) {
            const double v = kSplit * std::exp(x);
            return v * inv_sqrt_pow(q, v) * g(v);
        };
        total = accumulate(total,
                           quad::adaptive_gk15(tail, 0.0, std::log(w_upper / kSplit),
                                               s.rel_tol * 0.5, s.abs_tol * 0.25,
                                               s.max_subdivisions));
    }
    return total;
}

// Truncation point V for an improper integral whose tail integrand is
// bounded by sqrt(2) * v^{-q-1-extra_decay} * scale for v >= 2^{1/(2q)}:
// remainder <= sqrt(2) * scale * V^{-(q+extra)} / (q+extra) < budget.
double pick_v_max(double q, double extra_decay, double scale, double budget,
                  const QuadratureSettings& s) {
    const double p = q + extra_decay;
    double v = std::exp(std::log(std::sqrt(2.0) * scale / (p * budget)) / p);
    v = std::max({v, std::pow(2.0, 1.0 / (2.0 * q)), kSplit * std::numbers::e});
    if (s.v_max > 0.0) v = std::max(s.v_max, kSplit * std::numbers::e);
    if (!std::isfinite(scale) || !std::isfinite(v))
        throw std::domain_error(
            "quadrature tail bound overflows; the neck radius is too close to "
            "the degenerate limit a = 0");
    return v;
}

double tail_bound(double q, double extra_decay, double scale, double v_max) {
    const double p = q + extra_decay;
    return std::sqrt(2.0) * scale * std::exp(-p * std::log(v_max)) / p;
}

HeightValue finish(const char* who, Piece total, double truncation,
                   const QuadratureSettings& s) {
    const double err = total.error + truncation;
    if (!total.converged || !std::isfinite(total.value) ||
        err > s.rel_tol * std::abs(total.value) + s.abs_tol) {
        std::ostringstream msg;
        msg << who << ": quadrature did not reach rel_tol=" << s.rel_tol
            << " abs_tol=" << s.abs_tol << "; achieved error estimate " << err
            << " at value " << total.value << " with " << total.intervals
            << " intervals";
        throw QuadratureError(msg.str(), total.value, err);
    }
    return {total.value, err};
}

// W - 1 = (sinh(rho) - sinh(a)) / sinh(a), stable for rho near a.
double upper_limit_minus_1(double a, double rho) {
    return 2.0 * std::cosh(0.5 * (rho + a)) * std::sinh(0.5 * (rho - a)) / std::sinh(a);
}

}  // namespace

double height_limit(const FamilyParams& fp) {
    require_positive_q(fp, "height_limit");
    return std::numbers::pi * (fp.r + 1) / (2.0 * (fp.n - fp.r - 1));
}

HeightValue lambda_height(const FamilyParams& fp, double a, double rho,
                          const QuadratureSettings& s) {
    require_positive_q(fp, "lambda_height");
    require_radius(a, "lambda_height");
    s.validate();
    if (rho < a)
        throw std::domain_error("lambda_height: require rho >= a");
    if (rho > kInputCap)
        throw std::domain_error("lambda_height: rho exceeds the cap " +
                                std::to_string(kInputCap));
    if (rho == a) return {0.0, 0.0};

    const double S = std::sinh(a);
    const double wm1 = upper_limit_minus_1(a, rho);
    Piece total = integrate_v(fp.q, wm1, 1.0 + wm1,
                              [S](double v) { return weight1(S, v); }, s);
    return finish("lambda_height", total, 0.0, s);
}

HeightValue half_height(const FamilyParams& fp, double a,
                        const QuadratureSettings& s) {
    require_positive_q(fp, "half_height");
    require_radius(a, "half_height");
    s.validate();

    const double S = std::sinh(a);
    // weight1 <= 1/v, so the tail integrand is <= sqrt(2) v^{-q-1}.
    const double v_max = pick_v_max(fp.q, 0.0, 1.0, 0.5 * s.abs_tol, s);
    Piece total = integrate_v(fp.q, v_max - 1.0, v_max,
                              [S](double v) { return weight1(S, v); }, s);
    return finish("half_height", total, tail_bound(fp.q, 0.0, 1.0, v_max), s);
}

HeightValue half_height_deficit(const FamilyParams& fp, double a,
                                const QuadratureSettings& s) {
    require_positive_q(fp, "half_height_deficit");
    require_radius(a, "half_height_deficit");
    s.validate();

    const double S = std::sinh(a);
    // weight_deficit <= v^{-3} S^{-2}
    const double v_max =
        pick_v_max(fp.q, 2.0, 1.0 / (S * S), 0.5 * s.abs_tol, s);
    Piece total = integrate_v(fp.q, v_max - 1.0, v_max,
                              [S](double v) { return weight_deficit(S, v); }, s);
    return finish("half_height_deficit", total,
                  tail_bound(fp.q, 2.0, 1.0 / (S * S), v_max), s);
}

HeightValue half_height_derivative(const FamilyParams& fp, double a,
                                   const QuadratureSettings& s) {
    require_positive_q(fp, "half_height_derivative");
    require_radius(a, "half_height_derivative");
    s.validate();

    const double S = std::sinh(a);
    const double C = std::cosh(a);
    // The cosh(a) prefactor is applied afterwards, so the raw integral has
    // to converge against a correspondingly smaller absolute budget.
    QuadratureSettings inner = s;
    inner.abs_tol = s.abs_tol / C;
    // weight3 <= (vS)^{-3}
    const double scale = 1.0 / (S * S * S);
    const double v_max = pick_v_max(fp.q, 2.0, scale, 0.5 * inner.abs_tol, inner);
    Piece total = integrate_v(fp.q, v_max - 1.0, v_max,
                              [S](double v) { return weight3(S, v); }, inner);
    total.value *= C;
    total.error *= C;
    return finish("half_height_derivative", total,
                  C * tail_bound(fp.q, 2.0, scale, v_max), s);
}

namespace {

// Shared validation for the neck-derivative formulas; returns
// E = W^{2q} - 1 with W = sinh(rho)/sinh(a).
double derivative_preamble(const FamilyParams& fp, double a, double rho,
                           const QuadratureSettings& s, const char* who) {
    require_positive_q(fp, who);
    require_radius(a, who);
    s.validate();
    if (!(rho > a))
        throw std::domain_error(std::string(who) + ": require rho > a");
    if (rho > kInputCap)
        throw std::domain_error(std::string(who) + ": rho exceeds the cap " +
                                std::to_string(kInputCap));
    const double W = std::sinh(rho) / std::sinh(a);
    const double E = std::expm1(2.0 * fp.q * std::log(W));
    if (E < 1e-10)
        throw std::domain_error(std::string(who) +
                                ": rho too close to a; boundary term singular "
                                "((sinh rho/sinh a)^{2q} - 1 < 1e-10)");
    return E;
}

}  // namespace

double lambda_a(const FamilyParams& fp, double a, double rho,
                const QuadratureSettings& s) {
    const double E = derivative_preamble(fp, a, rho, s, "lambda_a");
    const double S = std::sinh(a);
    const double C = std::cosh(a);
    const double boundary = -std::tanh(rho) * (C / S) / std::sqrt(E);

    QuadratureSettings inner = s;
    inner.abs_tol = s.abs_tol / C;
    const double wm1 = upper_limit_minus_1(a, rho);
    Piece total = integrate_v(fp.q, wm1, 1.0 + wm1,
                              [S](double v) { return weight3(S, v); }, inner);
    HeightValue integral = finish("lambda_a", total, 0.0, inner);
    return boundary + C * integral.value;
}

double lambda_aa(const FamilyParams& fp, double a, double rho,
                 const QuadratureSettings& s) {
    const double E = derivative_preamble(fp, a, rho, s, "lambda_aa");
    const double S = std::sinh(a);
    const double C = std::cosh(a);
    const double W2q = E + 1.0;
    const double cr = C / std::cosh(rho);
    const double c2 = cr * cr;
    const double boundary = std::tanh(rho) / (S * S) / (E * std::sqrt(E)) *
                            (W2q * (1.0 - fp.q * C * C - c2) + (c2 - 1.0));

    const double C2 = C * C;
    auto g = [S, C2](double v) {
        const double h = std::hypot(1.0, v * S);
        const double h2 = h * h;
        return (1.0 - v * v * (1.0 + 2.0 * C2)) / (h2 * h2 * h);
    };
    QuadratureSettings inner = s;
    inner.abs_tol = s.abs_tol / std::max(S, 1.0);
    const double wm1 = upper_limit_minus_1(a, rho);
    Piece total = integrate_v(fp.q, wm1, 1.0 + wm1, g, inner);
    HeightValue integral = finish("lambda_aa", total, 0.0, inner);
    return boundary + S * integral.value;
}

}  // namespace rcat
