#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace rcat::ode {

/// Embedded Dormand-Prince 5(4) step on a fixed-size state, with the
/// classic PI step-size controller. The caller owns the integration loop;
/// this class owns one step attempt and the next step-size proposal.
template <int N>
class Dopri5 {
  public:
    using State = Eigen::Matrix<double, N, 1>;

    struct Attempt {
        bool accepted = false;
        State y_new = State::Zero();
        State f_new = State::Zero();   // FSAL derivative at the new point
        State error = State::Zero();   // embedded local error estimate
        double h_next = 0.0;
    };

    Dopri5(double rel_tol, double abs_tol) : rel_(rel_tol), abs_(abs_tol) {}

    /// Initial step size from the standard curvature-free heuristic.
    template <typename F>
    double initial_step(F&& f, double t0, const State& y0) const {
        const State f0 = f(t0, y0);
        double d0 = 0.0, d1 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = abs_ + rel_ * std::abs(y0[i]);
            d0 = std::max(d0, std::abs(y0[i]) / sc);
            d1 = std::max(d1, std::abs(f0[i]) / sc);
        }
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        const State y1 = y0 + h0 * f0;
        const State f1 = f(t0 + h0, y1);
        double d2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = abs_ + rel_ * std::abs(y0[i]);
            d2 = std::max(d2, std::abs(f1[i] - f0[i]) / sc / h0);
        }
        const double dm = std::max(d1, d2);
        const double h1 = dm > 1e-15 ? std::pow(0.01 / dm, 0.2) : std::max(1e-6, h0 * 1e-3);
        return std::min(100.0 * h0, h1);
    }

    /// One attempted step from (t, y) with derivative f_at_y = f(t, y).
    template <typename F>
    Attempt try_step(F&& f, double t, const State& y, const State& f_at_y, double h) {
        const State& k1 = f_at_y;
        const State k2 = f(t + c2 * h, y + h * (a21 * k1));
        const State k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const State k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Attempt r;
        r.y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        r.f_new = f(t + h, r.y_new);  // k7 (FSAL)
        r.error = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.f_new);

        double err = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = abs_ + rel_ * std::max(std::abs(y[i]), std::abs(r.y_new[i]));
            const double q = r.error[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err)) err = 1e10;  // stage overflow: force rejection

        const double fac11 = std::pow(std::max(err, 1e-32), kAlpha);
        double fac = fac11 / std::pow(err_old_, kBeta);
        fac = std::max(1.0 / kFacMax, std::min(1.0 / kFacMin, fac / kSafety));
        double h_new = h / fac;

        if (err <= 1.0) {
            r.accepted = true;
            err_old_ = std::max(err, 1e-4);
            if (rejected_last_) h_new = std::min(std::abs(h_new), std::abs(h)) *
                                        (h > 0 ? 1.0 : -1.0);
            rejected_last_ = false;
        } else {
            r.accepted = false;
            h_new = h / std::min(1.0 / kFacMin, fac11 / kSafety);
            rejected_last_ = true;
        }
        r.h_next = h_new;
        return r;
    }

  private:
    double rel_, abs_;
    double err_old_ = 1e-4;
    bool rejected_last_ = false;

    static constexpr double kSafety = 0.9;
    static constexpr double kFacMin = 0.2;   // max shrink per step
    static constexpr double kFacMax = 10.0;  // max growth per step
    static constexpr double kBeta = 0.04;
    static constexpr double kAlpha = 0.2 - kBeta * 0.75;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

/// Cubic Hermite interpolation of (y, y') data on [0, h] at fraction u.
inline double hermite(double y0, double d0, double y1, double d1, double h, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}

}  // namespace rcat::ode
