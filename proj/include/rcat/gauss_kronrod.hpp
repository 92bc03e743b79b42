#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace rcat::quad {

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK values).
// Odd-indexed abscissae are the Gauss nodes.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15KronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGK15GaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double lo, hi;
    double value;
    double error;
};

// One GK15 application on [lo, hi]; error estimate follows QUADPACK's
// scaled |K15 - G7| heuristic.
template <typename F>
Segment gk15(F&& f, double lo, double hi) {
    const double h = 0.5 * (hi - lo);
    const double c = 0.5 * (lo + hi);
    const double fc = f(c);

    double resk = kGK15KronrodW[7] * fc;
    double resg = kGK15GaussW[3] * fc;
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        fv1[j] = f(c - h * kGK15Nodes[j]);
        fv2[j] = f(c + h * kGK15Nodes[j]);
        const double sum = fv1[j] + fv2[j];
        resk += kGK15KronrodW[j] * sum;
        resabs += kGK15KronrodW[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kGK15GaussW[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kGK15KronrodW[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kGK15KronrodW[j] *
                  (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double ah = std::abs(h);
    resasc *= ah;
    resabs *= ah;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    return {lo, hi, resk * h, err};
}

}  // namespace detail

/// Globally adaptive GK15 integration of f over [lo, hi]: repeatedly bisect
/// the segment with the largest error estimate until
/// sum(err) <= max(abs_tol, rel_tol*|sum(value)|) or the subdivision budget
/// is exhausted. Fully deterministic; the final sums run over segments
/// sorted by position so the result does not depend on refinement order.
template <typename F>
IntegrationResult adaptive_gk15(F&& f, double lo, double hi, double rel_tol,
                                double abs_tol, int max_subdivisions) {
    IntegrationResult out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }
    std::vector<detail::Segment> segs;
    segs.reserve(static_cast<std::size_t>(max_subdivisions) + 1);
    segs.push_back(detail::gk15(f, lo, hi));

    auto totals = [&segs]() {
        double v = 0.0, e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return std::pair<double, double>(v, e);
    };

    auto [value, error] = totals();
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) &&
           static_cast<int>(segs.size()) < max_subdivisions) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const detail::Segment s = segs[worst];
        const double mid = 0.5 * (s.lo + s.hi);
        if (mid <= s.lo || mid >= s.hi) break;  // interval at roundoff width
        segs[worst] = detail::gk15(f, s.lo, mid);
        segs.push_back(detail::gk15(f, mid, s.hi));
        std::tie(value, error) = totals();
    }

    std::sort(segs.begin(), segs.end(),
              [](const detail::Segment& a, const detail::Segment& b) {
                  return a.lo < b.lo;
              });
    out.value = 0.0;
    out.error = 0.0;
    for (const auto& s : segs) {
        out.value += s.value;
        out.error += s.error;
    }
    out.intervals = static_cast<int>(segs.size());
    out.converged =
        out.error <= std::max(abs_tol, rel_tol * std::abs(out.value)) &&
        std::isfinite(out.value);
    return out;
}

}  // namespace rcat::quad
