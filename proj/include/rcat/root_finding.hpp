#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rcat::roots {

/// Bracketed bisection/secant hybrid. The bracket [lo, hi] must carry a
/// sign change; every iterate stays inside it, so convergence is certain
/// on monotone flanks. Stops when the bracket width falls below x_tol or
/// |f| below f_tol.
template <typename F>
double bisect_secant(F&& f, double lo, double hi, double f_lo, double f_hi,
                     double x_tol, double f_tol = 0.0, int max_iter = 200) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw std::invalid_argument("bisect_secant: bracket does not straddle a root");

    double x = lo, fx = f_lo;
    for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
        double cand = lo + (hi - lo) * (-f_lo) / (f_hi - f_lo);  // secant
        const double margin = 0.01 * (hi - lo);
        if (!(cand > lo + margin) || !(cand < hi - margin))
            cand = 0.5 * (lo + hi);  // secant stalled; bisect
        x = cand;
        fx = f(x);
        if (fx == 0.0 || std::abs(fx) <= f_tol) return x;
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

template <typename F>
double bisect_secant(F&& f, double lo, double hi, double x_tol,
                     double f_tol = 0.0, int max_iter = 200) {
    return bisect_secant(f, lo, hi, f(lo), f(hi), x_tol, f_tol, max_iter);
}

/// Golden-section minimization on [lo, hi]; assumes unimodality.
/// Returns (x_min, f(x_min)).
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi,
                                     double x_tol, int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace rcat::roots
