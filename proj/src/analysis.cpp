#include "rcat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rcat/root_finding.hpp"

namespace rcat {

namespace {

// Tight settings for finite-difference probes, where evaluation noise
// enters divided by the step.
QuadratureSettings tightened(const QuadratureSettings& s) {
    QuadratureSettings t = s;
    t.rel_tol = std::min(s.rel_tol, 1e-12);
    t.abs_tol = std::min(s.abs_tol, 1e-14);
    t.max_subdivisions = std::max(s.max_subdivisions, 400);
    return t;
}

double phi_unchecked(const FamilyParams& fp, double t0, double a,
                     const QuadratureSettings& s) {
    // lambda(a, .) increases strictly from 0 to L(a) > t0: expand the
    // bracket upward, then hybrid root-finding.
    double lo = a, f_lo = -t0;
    double step = std::max(0.25, 0.25 * a);
    double hi = a + step, f_hi = lambda_height(fp, a, hi, s).value - t0;
    int guard = 0;
    while (f_hi < 0.0) {
        lo = hi;
        f_lo = f_hi;
        step *= 2.0;
        hi = a + step;
        if (++guard > 200)
            throw std::runtime_error("phi: failed to bracket the radius (lambda never reached t0)");
        f_hi = lambda_height(fp, a, hi, s).value - t0;
    }
    auto g = [&](double rho) { return lambda_height(fp, a, rho, s).value - t0; };
    return roots::bisect_secant(g, lo, hi, f_lo, f_hi, 1e-13 * std::max(1.0, hi));
}

}  // namespace

double phi(const FamilyParams& fp, double t0, double a,
           const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("phi: requires q > 0");
    if (t0 < 0.0)
        throw std::domain_error("phi: require t0 >= 0");
    if (t0 == 0.0) return a;  // f(a, 0) = a
    const HeightValue L = half_height(fp, a, s);
    if (L.value <= t0) {
        std::ostringstream msg;
        msg << "phi: the member with neck a=" << a << " never reaches height t0="
            << t0 << " (its half-height is L(a)=" << L.value << ")";
        throw std::domain_error(msg.str());
    }
    return phi_unchecked(fp, t0, a, s);
}

double alpha_of(const FamilyParams& fp, double t0, const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("alpha_of: requires q > 0");
    const double limit = height_limit(fp);
    if (!(t0 > 0.0) || t0 >= limit) {
        std::ostringstream msg;
        msg << "alpha_of: t0 must lie in (0, " << limit << "), got " << t0;
        throw std::domain_error(msg.str());
    }
    auto g = [&](double a) { return half_height(fp, a, s).value - t0; };
    double lo = 1e-8, hi = 1.0;
    double f_lo = g(lo);
    int guard = 0;
    while (f_lo > 0.0 && guard++ < 600) {
        lo /= 16.0;
        f_lo = g(lo);
    }
    double f_hi = g(hi);
    guard = 0;
    while (f_hi < 0.0) {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        if (hi > 100.0 || ++guard > 60)
            throw std::runtime_error("alpha_of: failed to bracket alpha below the input cap");
        f_hi = g(hi);
    }
    return roots::bisect_secant(g, lo, hi, f_lo, f_hi, 1e-15 * std::max(1.0, hi), 1e-11);
}

double neck_threshold_M(const FamilyParams& fp) {
    if (!(fp.q > 0.0) || fp.q >= 1.0)
        throw std::domain_error(
            "neck_threshold_M: defined only for 0 < q < 1 (for q >= 1 concavity holds for every rho)");
    return std::acosh(std::sqrt(1.0 / (1.0 - fp.q)));
}

double height_threshold_T(const FamilyParams& fp, const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("height_threshold_T: requires q > 0");
    if (fp.q >= 1.0) return height_limit(fp);

    const double M = neck_threshold_M(fp);
    // gamma(a) = lambda(a, M) is concave in a on (0, M) and vanishes at
    // both ends: golden-section for the bracket, then polish on the
    // analytic stationarity lambda_a(A, M) = 0.
    auto neg_gamma = [&](double a) { return -lambda_height(fp, a, M, s).value; };
    auto [a_gold, unused] = roots::golden_min(neg_gamma, 1e-6 * M, M * (1.0 - 1e-9),
                                              1e-9 * M);
    (void)unused;
    auto g = [&](double a) { return lambda_a(fp, a, M, s); };
    double lo = std::max(1e-7 * M, a_gold * 0.98);
    double hi = std::min(M * (1.0 - 1e-10), a_gold * 1.02);
    double f_lo = g(lo), f_hi = g(hi);
    int guard = 0;
    while ((f_lo > 0.0) == (f_hi > 0.0) && guard++ < 60) {
        lo = std::max(1e-7 * M, lo * 0.9);
        hi = std::min(M * (1.0 - 1e-10), hi * 1.1);
        f_lo = g(lo);
        f_hi = g(hi);
    }
    const double A = roots::bisect_secant(g, lo, hi, f_lo, f_hi, 1e-13 * M);
    return lambda_height(fp, A, M, s).value;
}

namespace {

struct MinBracket {
    double lo = 0.0, mid = 0.0, hi = 0.0;
    bool unimodal_ok = true;
};

// Walk a geometric ladder from just above alpha until phi increases past
// the running minimum.
MinBracket bracket_minimum(const FamilyParams& fp, double t0, double alpha,
                           const QuadratureSettings& s) {
    const double d0 = 1e-3 * std::max(alpha, 0.1);
    double prev_a = alpha + d0;
    double prev_phi = phi_unchecked(fp, t0, prev_a, s);
    double best_a = prev_a, best_phi = prev_phi;
    double before_best = prev_a;

    double d = d0;
    for (int k = 0; k < 200; ++k) {
        d *= 2.0;
        const double a = alpha + d;
        const double ph = phi_unchecked(fp, t0, a, s);
        if (ph < best_phi) {
            before_best = best_a;
            best_a = a;
            best_phi = ph;
        } else {
            return {before_best, best_a, a, true};
        }
    }
    return {before_best, best_a, best_a * 2.0, false};
}

EnvelopeMin envelope_min_validated(const FamilyParams& fp, double t0,
                                   const QuadratureSettings& s) {
    const double alpha = alpha_of(fp, t0, s);
    const MinBracket br = bracket_minimum(fp, t0, alpha, s);
    if (!br.unimodal_ok)
        throw std::runtime_error("envelope_min: could not bracket the minimum (phi kept decreasing)");

    auto obj = [&](double a) { return phi_unchecked(fp, t0, a, s); };
    auto [a_gold, m_gold] = roots::golden_min(obj, br.lo, br.hi, 1e-7 * std::max(1.0, br.hi));

    // Polish with the exact first-order condition: a0 minimizes phi iff
    // lambda_a(a, phi(a)) = 0 (the chain rule gives
    // phi' = -lambda_a / lambda_rho with lambda_rho > 0).
    auto stat = [&](double a) { return lambda_a(fp, a, obj(a), s); };
    double lo = std::max(br.lo, a_gold * (1.0 - 1e-3));
    double hi = std::min(br.hi, a_gold * (1.0 + 1e-3));
    double f_lo = stat(lo), f_hi = stat(hi);
    int guard = 0;
    while ((f_lo > 0.0) == (f_hi > 0.0) && guard++ < 40) {
        lo = std::max(br.lo, a_gold - (a_gold - lo) * 2.0);
        hi = std::min(br.hi, a_gold + (hi - a_gold) * 2.0);
        f_lo = stat(lo);
        f_hi = stat(hi);
        if (lo <= br.lo && hi >= br.hi) break;
    }
    double a0 = a_gold, m0 = m_gold;
    if ((f_lo > 0.0) != (f_hi > 0.0)) {
        a0 = roots::bisect_secant(stat, lo, hi, f_lo, f_hi, 1e-12 * std::max(1.0, a0));
        m0 = obj(a0);
    }
    return {m0, a0};
}

}  // namespace

EnvelopeMin envelope_min(const FamilyParams& fp, double t0,
                         const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("envelope_min: requires q > 0");
    const double T = height_threshold_T(fp, s);
    if (!(t0 > 0.0) || t0 >= T) {
        std::ostringstream msg;
        msg << "envelope_min: t0 must lie in (0, T) with T=" << T
            << "; uniqueness of the minimizer is not established beyond T for q < 1";
        throw std::domain_error(msg.str());
    }
    return envelope_min_validated(fp, t0, s);
}

namespace {

struct ScanResult {
    double m0 = 0.0, a0 = 0.0;
    std::vector<double> roots;  // refined crossings of phi = R
};

// Dense log-grid scan of phi on (alpha, a_hi): locates the grid minimum and
// every sign change of phi - R, each refined by bisection. Used as the
// unvalidated-regime path and as a brute-force oracle.
ScanResult scan_phi(const FamilyParams& fp, double t0, double R, int n_points,
                    const QuadratureSettings& s) {
    const double alpha = alpha_of(fp, t0, s);
    const double lo = alpha * (1.0 + 1e-4) + 1e-7;
    double hi = std::max(4.0 * alpha + 2.0, 10.0);
    // make sure the scan window sees the rising flank
    while (phi_unchecked(fp, t0, hi, s) <
               phi_unchecked(fp, t0, 0.5 * hi, s) &&
           hi < 90.0)
        hi *= 2.0;

    ScanResult out;
    std::vector<double> as(n_points), ps(n_points);
    const double ratio = std::log(hi / lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        as[i] = lo * std::exp(ratio * i);
        ps[i] = phi_unchecked(fp, t0, as[i], s);
    }
    int imin = 0;
    for (int i = 1; i < n_points; ++i)
        if (ps[i] < ps[imin]) imin = i;
    const int j0 = std::max(0, imin - 1), j1 = std::min(n_points - 1, imin + 1);
    auto obj = [&](double a) { return phi_unchecked(fp, t0, a, s); };
    auto [a_best, m_best] = roots::golden_min(obj, as[j0], as[j1], 1e-10 * as[j1]);
    out.a0 = a_best;
    out.m0 = m_best;

    if (R > 0.0) {
        auto g = [&](double a) { return phi_unchecked(fp, t0, a, s) - R; };
        for (int i = 0; i + 1 < n_points; ++i) {
            const double g0 = ps[i] - R, g1 = ps[i + 1] - R;
            if (g0 == 0.0) {
                out.roots.push_back(as[i]);
            } else if ((g0 > 0.0) != (g1 > 0.0)) {
                out.roots.push_back(roots::bisect_secant(g, as[i], as[i + 1], g0, g1,
                                                         1e-12 * as[i + 1]));
            }
        }
    }
    return out;
}

}  // namespace

BvpResult count_bvp_solutions(const FamilyParams& fp, double t0, double R,
                              const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("count_bvp_solutions: requires q > 0");
    if (!(R > 0.0))
        throw std::domain_error("count_bvp_solutions: require R > 0");
    const double limit = height_limit(fp);
    if (!(t0 > 0.0) || t0 >= limit)
        throw std::domain_error("count_bvp_solutions: t0 must lie in (0, height_limit)");

    BvpResult res;
    res.t0 = t0;
    res.R = R;

    const double T = height_threshold_T(fp, s);
    if (t0 >= T) {
        // q < 1 with t0 beyond T: uniqueness of the minimizer is open; scan
        // and report verbatim.
        ScanResult scan = scan_phi(fp, t0, R, 2000, s);
        res.m0 = scan.m0;
        res.a0 = scan.a0;
        res.roots = scan.roots;
        res.count = static_cast<int>(scan.roots.size());
        res.validated = false;
        res.note = "unvalidated-regime: t0 >= T for q < 1; counts from a 2000-point scan";
        return res;
    }

    const EnvelopeMin em = envelope_min_validated(fp, t0, s);
    res.m0 = em.m0;
    res.a0 = em.a0;
    const double tol = 1e-6 * std::max(1.0, em.m0);

    if (R < em.m0 - tol) {
        res.count = 0;
        return res;
    }
    if (std::abs(R - em.m0) <= tol) {
        res.count = 1;
        res.roots = {em.a0};
        return res;
    }

    const bool in_Jq = fp.q >= 1.0 || R <= neck_threshold_M(fp);
    if (!in_Jq) {
        ScanResult scan = scan_phi(fp, t0, R, 2000, s);
        res.roots = scan.roots;
        res.count = static_cast<int>(scan.roots.size());
        res.validated = false;
        res.note = "outside validated domain: q < 1 and R > M; count from a 2000-point scan";
        return res;
    }

    // Two roots on the two monotone flanks of the unimodal phi.
    const double alpha = alpha_of(fp, t0, s);
    auto g = [&](double a) { return phi_unchecked(fp, t0, a, s) - R; };

    double lo = alpha * (1.0 + 1e-7) + 1e-9;
    double f_lo = g(lo);
    int guard = 0;
    while (f_lo < 0.0 && guard++ < 60) {  // extremely close to alpha if needed
        lo = alpha + (lo - alpha) * 0.25;
        f_lo = g(lo);
    }
    const double a1 = roots::bisect_secant(g, lo, em.a0, f_lo, em.m0 - R,
                                           1e-12 * std::max(1.0, em.a0));

    double hi = em.a0 * 2.0 + 1.0;
    double f_hi = g(hi);
    guard = 0;
    while (f_hi < 0.0 && guard++ < 60) {
        hi = em.a0 + (hi - em.a0) * 2.0;
        f_hi = g(hi);
    }
    const double a2 = roots::bisect_secant(g, em.a0, hi, em.m0 - R, f_hi,
                                           1e-12 * std::max(1.0, hi));

    res.count = 2;
    res.roots = {a1, a2};
    return res;
}

std::vector<ProfileIntersection> profile_intersections(
    const FamilyParams& fp, double a, double b, const QuadratureSettings& s) {
    if (!(fp.q > 0.0))
        throw std::domain_error("profile_intersections: requires q > 0");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("profile_intersections: require a, b > 0");
    if (a == b)
        throw std::domain_error("profile_intersections: a = b names identical curves");

    const double small = std::min(a, b), big = std::max(a, b);
    // Delta(rho) = lambda(small, rho) - lambda(big, rho): positive just
    // above the larger neck, tending to L(small) - L(big) < 0.
    auto delta = [&](double rho) {
        return lambda_height(fp, small, rho, s).value -
               lambda_height(fp, big, rho, s).value;
    };

    // Both lambdas saturate at their half-heights exponentially fast, so
    // scanning to the domain cap sees every possible sign change.
    std::vector<ProfileIntersection> out;
    double d = 1e-3 * std::max(1.0, big);
    double prev_rho = big + d;
    double prev_delta = delta(prev_rho);
    for (int k = 0; k < 80 && prev_rho < 99.0; ++k) {
        d *= 2.0;
        const double rho = std::min(big + d, 99.0);
        const double dl = delta(rho);
        if ((prev_delta > 0.0) != (dl > 0.0)) {
            const double root = roots::bisect_secant(delta, prev_rho, rho, prev_delta,
                                                     dl, 1e-12 * rho);
            ProfileIntersection pi;
            pi.rho = root;
            pi.t = lambda_height(fp, small, root, s).value;
            pi.lambda_residual =
                std::abs(pi.t - lambda_height(fp, big, root, s).value);
            out.push_back(pi);
        }
        prev_rho = rho;
        prev_delta = dl;
    }
    return out;
}

std::vector<EnvelopeCurvePoint> envelope_curve(
    const FamilyParams& fp, const std::vector<double>& t_grid,
    const QuadratureSettings& s) {
    std::vector<EnvelopeCurvePoint> out;
    out.reserve(t_grid.size());
    const QuadratureSettings tight = tightened(s);
    for (double t : t_grid) {
        EnvelopeCurvePoint p;
        p.point.t = t;
        try {
            const EnvelopeMin em = envelope_min(fp, t, s);
            p.point.m = em.m0;
            p.point.a_star = em.a0;
            const double h = 1e-4 * std::max(1.0, em.a0);
            p.tangency_residual = (phi_unchecked(fp, t, em.a0 + h, tight) -
                                   phi_unchecked(fp, t, em.a0 - h, tight)) /
                                  (2.0 * h);
            p.ok = true;
        } catch (const std::exception& e) {
            p.ok = false;
            p.status = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace rcat
