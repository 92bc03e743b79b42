#include "rcat/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rcat/analysis.hpp"
#include "rcat/curvature.hpp"
#include "rcat/io.hpp"
#include "rcat/parallel.hpp"
#include "rcat/profile.hpp"
#include "rcat/quadrature.hpp"

namespace rcat {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

QuadratureSettings tight_quadrature() {
    QuadratureSettings s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-14;
    s.max_subdivisions = 400;
    return s;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

// Radius at height t0 through the ODE route: +inf when the member blows
// up below t0. Brute-force oracle for the lambda-inversion phi.
double phi_ode(const FamilyParams& fp, double t0, double a, const OdeSettings& s) {
    const ProfileCurve c = integrate_profile(fp, a, s);
    if (t0 > c.t_stop) return std::numeric_limits<double>::infinity();
    return c.at(t0).f;
}

// ---------------------------------------------------------------- checks --

CheckResult check_height_limit() {
    CheckResult c;
    c.name = "height-limit";
    c.reference = "L(a) -> pi(r+1)/(2(n-r-1)) as a -> infinity";
    c.tolerance = 1e-3;
    const auto t0 = Clock::now();
    const std::pair<int, int> cases[] = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}};
    double worst = 0.0, slowest = 0.0;
    std::ostringstream det;
    for (auto [n, r] : cases) {
        const FamilyParams fp = make_family(n, r);
        const auto tc = Clock::now();
        const double L10 = half_height(fp, 10.0).value;
        const double dt = elapsed(tc);
        const double dev = std::abs(L10 - height_limit(fp));
        worst = std::max(worst, dev);
        slowest = std::max(slowest, dt);
        det << "(" << n << "," << r << "): |L(10)-limit|=" << dev << " in " << dt
            << "s; ";
    }
    c.measured = worst;
    c.pass = worst < c.tolerance && slowest < 1.0;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_monotonicity(unsigned threads) {
    CheckResult c;
    c.name = "monotonicity";
    c.reference = "dL/da = cosh(a) int (v^{2q}-1)^{-1/2} (1+v^2 sinh^2 a)^{-3/2} dv > 0";
    c.tolerance = 1e-6;
    const auto t0 = Clock::now();
    const std::pair<int, int> cases[] = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}};
    const std::vector<double> grid = log_grid(0.05, 10.0, 50);
    const QuadratureSettings tq = tight_quadrature();
    const double h = 3e-5;

    double worst_fd = 0.0;
    double min_dlda = std::numeric_limits<double>::infinity();
    bool increasing = true;
    for (auto [n, r] : cases) {
        const FamilyParams fp = make_family(n, r);
        std::vector<double> L(grid.size()), dL(grid.size()), fd(grid.size());
        parallel_for(
            static_cast<int>(grid.size()),
            [&](int i) {
                const double a = grid[i];
                L[i] = half_height(fp, a, tq).value;
                // two passes: the first sizes the value so the second can
                // run with a relative-dominated absolute budget (at a = 10
                // the derivative is ~1e-9 while abs_tol floors near 1e-14)
                QuadratureSettings dq = tq;
                dq.abs_tol = std::max(1e-8 * half_height_derivative(fp, a, tq).value,
                                      1e-300);
                dL[i] = half_height_derivative(fp, a, dq).value;
                // FD through the cancellation-free deficit representation:
                // (L(a+h)-L(a-h))/2h = -(D(a+h)-D(a-h))/2h exactly, with a
                // shared truncation point so the tail bias cancels.
                QuadratureSettings fq = tq;
                const double D0 = half_height_deficit(fp, a, tq).value;
                fq.abs_tol = std::max(1e-10 * D0, 1e-300);
                // shared truncation point for both evaluations, chosen so the
                // certified remainder takes a quarter of the absolute budget
                const double S = std::sinh(a);
                fq.v_max = std::pow(
                    std::sqrt(2.0) / (0.25 * fq.abs_tol * S * S * (fp.q + 2.0)),
                    1.0 / (fp.q + 2.0));
                // 5-point central stencil: the h^2 term cancels, which
                // matters at small a where d^3L/da^3 grows like 1/a^2
                auto D = [&](double x) { return half_height_deficit(fp, x, fq).value; };
                fd[i] = -(-D(a + 2 * h) + 8 * D(a + h) - 8 * D(a - h) + D(a - 2 * h)) /
                        (12.0 * h);
            },
            threads);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            increasing = increasing && L[i + 1] > L[i];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            min_dlda = std::min(min_dlda, dL[i]);
            worst_fd = std::max(worst_fd, std::abs(dL[i] - fd[i]) / std::abs(dL[i]));
        }
    }
    c.measured = worst_fd;
    c.pass = increasing && min_dlda > 0.0 && worst_fd < c.tolerance;
    std::ostringstream det;
    det << "L increasing on all grids: " << (increasing ? "yes" : "NO")
        << "; min dL/da=" << min_dlda << "; worst FD relative mismatch=" << worst_fd;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

const std::pair<int, int> kOracleFamilies[] = {{3, 1}, {4, 1}, {6, 2}};
const double kOracleNecks[] = {0.1, 0.5, 1.0, 2.0};

CheckResult check_oracle_agreement(unsigned threads) {
    CheckResult c;
    c.name = "oracle-agreement";
    c.reference = "lambda(a, f(a,t)) = t along the maximal solution";
    c.tolerance = 1e-6;
    const auto t0 = Clock::now();
    struct Job {
        FamilyParams fp;
        double a;
    };
    std::vector<Job> jobs;
    for (auto [n, r] : kOracleFamilies)
        for (double a : kOracleNecks) jobs.push_back({make_family(n, r), a});
    std::vector<double> gaps(jobs.size());
    parallel_for(
        static_cast<int>(jobs.size()),
        [&](int i) { gaps[i] = cross_validate(jobs[i].fp, jobs[i].a).max_gap; },
        threads);
    c.measured = *std::max_element(gaps.begin(), gaps.end());
    c.pass = c.measured < c.tolerance;
    std::ostringstream det;
    det << "max |lambda(a, f(t)) - t| over " << jobs.size() << " members";
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_conservation(unsigned threads, double tolerance) {
    CheckResult c;
    c.name = "conservation";
    c.reference = "sinh^q(f) / sqrt(1+f_t^2) = sinh^q(a) for all t";
    c.tolerance = tolerance;
    const auto t0 = Clock::now();
    struct Job {
        FamilyParams fp;
        double a;
    };
    std::vector<Job> jobs;
    for (auto [n, r] : kOracleFamilies)
        for (double a : kOracleNecks) jobs.push_back({make_family(n, r), a});
    std::vector<double> worst(jobs.size(), 0.0);
    std::vector<int> steps(jobs.size(), 0);
    parallel_for(
        static_cast<int>(jobs.size()),
        [&](int i) {
            const ProfileCurve curve = integrate_profile(jobs[i].fp, jobs[i].a);
            steps[i] = static_cast<int>(curve.samples.size());
            for (const ProfilePoint& p : curve.samples)
                worst[i] = std::max(
                    worst[i],
                    std::abs(first_integral_residual(jobs[i].fp, jobs[i].a, p)));
        },
        threads);
    c.measured = *std::max_element(worst.begin(), worst.end());
    c.pass = c.measured < c.tolerance;
    int total = 0;
    for (int s : steps) total += s;
    std::ostringstream det;
    det << "max residual over " << total << " accepted steps";
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_sign_structure(unsigned threads) {
    CheckResult c;
    c.name = "sign-structure";
    c.reference = "H_j > 0 for j < r+1, H_{r+1} = 0, H_j < 0 for j > r+1";
    c.tolerance = 1e-9;
    const auto t0 = Clock::now();
    struct Job {
        FamilyParams fp;
        double a;
    };
    std::vector<Job> jobs;
    for (auto [n, r] : kOracleFamilies)
        for (double a : kOracleNecks) jobs.push_back({make_family(n, r), a});
    std::vector<HjSignReport> reports(jobs.size());
    parallel_for(
        static_cast<int>(jobs.size()),
        [&](int i) { reports[i] = verify_hj_signs(jobs[i].fp, jobs[i].a, 100); },
        threads);
    bool pass = true;
    double max_h = 0.0, max_kn = 0.0, min_pr = std::numeric_limits<double>::infinity();
    for (const auto& rep : reports) {
        pass = pass && rep.pass && rep.max_kn_qk1_residual < 1e-9;
        max_h = std::max(max_h, rep.max_abs_h_rp1);
        max_kn = std::max(max_kn, rep.max_kn_qk1_residual);
        min_pr = std::min(min_pr, rep.min_newton_r_eigenvalue);
    }
    c.measured = max_h;
    c.pass = pass;
    std::ostringstream det;
    det << "max |H_{r+1}|=" << max_h << "; max |k_n + q k_1|=" << max_kn
        << "; min P_r eigenvalue=" << min_pr;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_lambda_aa(unsigned threads) {
    CheckResult c;
    c.name = "lambda-aa-concavity";
    c.reference = "lambda_aa(a, rho) < 0 (all rho > a for q >= 1; rho <= M for q < 1)";
    c.tolerance = 1e-4;
    const auto t0 = Clock::now();
    const QuadratureSettings tq = tight_quadrature();

    struct Point {
        FamilyParams fp;
        double a, rho;
    };
    std::vector<Point> pts;
    {
        // q = 1: any rho > a.
        const FamilyParams fp41 = make_family(4, 1);
        const std::vector<double> as = log_grid(0.1, 2.0, 20);
        const std::vector<double> spreads = log_grid(0.05, 3.0, 20);
        for (double a : as)
            for (double d : spreads) pts.push_back({fp41, a, a + d});
        // q = 1/2: rho <= M = arcosh(sqrt(2)).
        const FamilyParams fp31 = make_family(3, 1);
        const double M = neck_threshold_M(fp31);
        for (int j = 0; j < 20; ++j) {
            const double rho = 0.15 + (M - 0.15) * j / 19.0;
            for (int i = 0; i < 20; ++i) {
                const double frac = 0.08 + (0.92 - 0.08) * i / 19.0;
                pts.push_back({fp31, frac * rho, rho});
            }
        }
    }
    std::vector<double> analytic(pts.size()), mismatch(pts.size());
    parallel_for(
        static_cast<int>(pts.size()),
        [&](int i) {
            const auto& p = pts[i];
            analytic[i] = lambda_aa(p.fp, p.a, p.rho, tq);
            // a-derivatives of lambda blow up like powers of 1/(rho - a)
            // at the corner, so the step shrinks with the corner distance;
            // the 5-point stencil keeps the truncation at O((h/d)^4).
            const double h = std::min(1e-3, (p.rho - p.a) / 20.0);
            auto lam = [&](double x) {
                return lambda_height(p.fp, x, p.rho, tq).value;
            };
            const double fd = (-lam(p.a + 2 * h) + 16 * lam(p.a + h) -
                               30 * lam(p.a) + 16 * lam(p.a - h) -
                               lam(p.a - 2 * h)) /
                              (12.0 * h * h);
            mismatch[i] = std::abs(analytic[i] - fd) / std::abs(analytic[i]);
        },
        threads);
    const double max_analytic = *std::max_element(analytic.begin(), analytic.end());
    const double worst = *std::max_element(mismatch.begin(), mismatch.end());
    c.measured = worst;
    c.pass = max_analytic < 0.0 && worst < c.tolerance;
    std::ostringstream det;
    det << pts.size() << " grid points; max lambda_aa=" << max_analytic
        << " (must be < 0); worst FD relative mismatch=" << worst;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_bvp(unsigned threads) {
    CheckResult c;
    c.name = "bvp-three-cases";
    c.reference = "no / exactly one / at least two members through (R, +-t0) as R vs m0";
    c.tolerance = 1e-8;
    const auto t0c = Clock::now();
    const FamilyParams fp = make_family(4, 1);
    const OdeSettings ode;
    bool pass = true;
    double worst_phi_residual = 0.0;
    std::ostringstream det;

    for (double t0 : {0.3, 0.7, 1.2}) {
        const EnvelopeMin em = envelope_min(fp, t0);

        const BvpResult below = count_bvp_solutions(fp, t0, 0.9 * em.m0);
        const BvpResult at = count_bvp_solutions(fp, t0, em.m0);
        const BvpResult above = count_bvp_solutions(fp, t0, 1.5 * em.m0);

        bool ok = below.count == 0 && at.count == 1 && above.count == 2;
        ok = ok && at.roots.size() == 1 && std::abs(at.roots[0] - em.a0) < 1e-6;
        ok = ok && above.roots.size() == 2 && above.roots[0] < em.a0 &&
             em.a0 < above.roots[1];
        if (above.roots.size() == 2) {
            for (double root : above.roots) {
                const double res = std::abs(phi(fp, t0, root) - 1.5 * em.m0);
                worst_phi_residual = std::max(worst_phi_residual, res);
                ok = ok && res < 1e-8;
            }
        }

        // Brute-force confirmation through the ODE route on a 2000-point
        // log grid over (alpha, 20].
        const double alpha = alpha_of(fp, t0);
        const int n_scan = 2000;
        const std::vector<double> as = log_grid(alpha * (1.0 + 1e-3), 20.0, n_scan);
        std::vector<double> radius(n_scan);
        parallel_for(
            n_scan, [&](int i) { radius[i] = phi_ode(fp, t0, as[i], ode); }, threads);
        double scan_min = std::numeric_limits<double>::infinity();
        for (double rv : radius) scan_min = std::min(scan_min, rv);
        int crossings_above = 0;
        for (int i = 0; i + 1 < n_scan; ++i)
            if ((radius[i] > 1.5 * em.m0) != (radius[i + 1] > 1.5 * em.m0))
                ++crossings_above;
        ok = ok && scan_min > 0.9 * em.m0;                    // confirms count 0
        ok = ok && std::abs(scan_min - em.m0) < 1e-4 * std::max(1.0, em.m0);
        ok = ok && crossings_above == 2;                      // confirms count 2
        det << "t0=" << t0 << ": m0=" << em.m0 << " a0=" << em.a0
            << " counts=" << below.count << "/" << at.count << "/" << above.count
            << " scan_min=" << scan_min << " scan_crossings=" << crossings_above
            << "; ";
        pass = pass && ok;
    }
    c.measured = worst_phi_residual;
    c.pass = pass;
    c.details = det.str();
    c.seconds = elapsed(t0c);
    return c;
}

CheckResult check_intersections() {
    CheckResult c;
    c.name = "pair-intersections";
    c.reference = "distinct profile curves cross at exactly two symmetric points";
    c.tolerance = 1e-8;
    const auto t0 = Clock::now();
    const FamilyParams fp = make_family(4, 1);
    bool pass = true;
    double worst = 0.0;
    std::ostringstream det;
    const std::pair<double, double> pairs[] = {{0.5, 1.0}, {0.3, 2.0}};
    for (auto [a, b] : pairs) {
        const auto crossings = profile_intersections(fp, a, b);
        pass = pass && crossings.size() == 1;
        if (!crossings.empty()) {
            worst = std::max(worst, crossings[0].lambda_residual);
            pass = pass && crossings[0].lambda_residual < 1e-8;
            det << "(a,b)=(" << a << "," << b << "): rho*=" << crossings[0].rho
                << " t*=" << crossings[0].t << " residual="
                << crossings[0].lambda_residual << "; ";
        }
    }
    c.measured = worst;
    c.pass = pass;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_cylinder() {
    CheckResult c;
    c.name = "cylinder-case";
    c.reference = "n = r+1: constant profiles, k_n = 0 and H_n = 0 exactly";
    c.tolerance = 0.0;
    const auto t0 = Clock::now();
    const FamilyParams fp = make_family(3, 2);
    bool pass = true;
    double worst = 0.0;
    std::ostringstream det;
    for (double cc : {0.5, 1.0, 2.0}) {
        const CylinderReport rep = cylinder_case(fp, cc);
        pass = pass && rep.pass;
        worst = std::max({worst, std::abs(rep.equation_residual), std::abs(rep.k_axis),
                          std::abs(rep.h_n)});
        det << "c=" << cc << ": residual=" << rep.equation_residual
            << " k_n=" << rep.k_axis << " H_n=" << rep.h_n << "; ";
    }
    c.measured = worst;
    c.pass = pass && worst == 0.0;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

CheckResult check_exports(const std::filesystem::path& work_dir) {
    CheckResult c;
    c.name = "export-integrity";
    c.reference = "deterministic exports: CSV round-trip, mesh bounds, byte-identity";
    c.tolerance = 1e-9;
    const auto t0 = Clock::now();
    namespace fs = std::filesystem;
    fs::create_directories(work_dir);

    bool pass = true;
    double max_h_rp1 = 0.0;
    std::ostringstream det;

    auto read_bytes = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    // Profile CSV: write the same configuration twice from scratch.
    {
        const FamilyParams fp = make_family(4, 1);
        const OdeSettings ode;
        const int n_t = 200;
        const fs::path p1 = work_dir / "profile_run1.csv";
        const fs::path p2 = work_dir / "profile_run2.csv";
        write_profile_csv(p1, make_profile_table(integrate_profile(fp, 1.0, ode), n_t, ode));
        write_profile_csv(p2, make_profile_table(integrate_profile(fp, 1.0, ode), n_t, ode));
        pass = pass && read_bytes(p1) == read_bytes(p2);

        const ProfileTable parsed = read_profile_csv(p1);
        pass = pass && parsed.rows.size() == static_cast<std::size_t>(2 * n_t + 1);
        pass = pass && parsed.metadata.at("n") == "4" && parsed.metadata.at("r") == "1";
        const int h_col = 6 + fp.r;  // H_{r+1} column
        const int res_col = 6 + fp.n;
        const int mid = n_t;
        pass = pass && parsed.rows[mid][0] == 0.0 && parsed.rows[mid][1] == 1.0 &&
               parsed.rows[mid][2] == 0.0;
        for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
            const auto& row = parsed.rows[i];
            pass = pass && row[1] > 0.0;
            max_h_rp1 = std::max(max_h_rp1, std::abs(row[h_col]));
            // rows are interpolated between accepted steps; the 1e-8
            // conservation bound applies to the steps themselves
            pass = pass && std::abs(row[res_col]) < 1e-6;
            const auto& mirror = parsed.rows[parsed.rows.size() - 1 - i];
            pass = pass && row[0] == -mirror[0] && row[1] == mirror[1] &&
                   row[2] == -mirror[2];
        }
        pass = pass && max_h_rp1 < 1e-9;
        det << "csv rows=" << parsed.rows.size() << " max|H_{r+1}|=" << max_h_rp1
            << "; ";
    }

    // Mesh OBJ: n = 2, r = 0 (q = 1).
    {
        const FamilyParams fp = make_family(2, 0);
        const OdeSettings ode;
        const int n_t = 40, n_theta = 64;
        const ProfileCurve curve = integrate_profile(fp, 0.8, ode);
        const MeshData mesh = make_mesh(curve, n_t, n_theta);
        pass = pass && static_cast<int>(mesh.vertices.size()) == (2 * n_t + 1) * n_theta;
        pass = pass && static_cast<int>(mesh.faces.size()) == 2 * n_t * n_theta;
        const double bound = std::tanh(ode.f_cap / 2.0);
        double max_r = 0.0;
        for (const auto& v : mesh.vertices)
            max_r = std::max(max_r, std::hypot(v[0], v[1]));
        pass = pass && max_r <= bound + 1e-12 && max_r < 1.0 && bound < 1.0;
        const fs::path m1 = work_dir / "mesh_run1.obj";
        const fs::path m2 = work_dir / "mesh_run2.obj";
        write_mesh_obj(m1, mesh, fp, 0.8, ode);
        write_mesh_obj(m2, make_mesh(integrate_profile(fp, 0.8, ode), n_t, n_theta),
                       fp, 0.8, ode);
        pass = pass && read_bytes(m1) == read_bytes(m2);
        det << "mesh max|x|=" << max_r << " bound=" << bound << "; ";
    }

    c.measured = max_h_rp1;
    c.pass = pass;
    c.details = det.str();
    c.seconds = elapsed(t0);
    return c;
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const VerificationOptions& opts) {
    const std::filesystem::path work =
        opts.work_dir.empty() ? std::filesystem::temp_directory_path() / "rcatenoid-verify"
                              : opts.work_dir;
    using CheckFn = std::function<CheckResult()>;
    const std::vector<std::pair<const char*, CheckFn>> plan = {
        {"height-limit", [&] { return check_height_limit(); }},
        {"monotonicity", [&] { return check_monotonicity(opts.threads); }},
        {"oracle-agreement", [&] { return check_oracle_agreement(opts.threads); }},
        {"conservation", [&] { return check_conservation(opts.threads, opts.conservation_tol); }},
        {"sign-structure", [&] { return check_sign_structure(opts.threads); }},
        {"lambda-aa-concavity", [&] { return check_lambda_aa(opts.threads); }},
        {"bvp-three-cases", [&] { return check_bvp(opts.threads); }},
        {"pair-intersections", [&] { return check_intersections(); }},
        {"cylinder-case", [&] { return check_cylinder(); }},
        {"export-integrity", [&] { return check_exports(work); }},
    };
    std::vector<CheckResult> checks;
    checks.reserve(plan.size());
    for (const auto& [name, fn] : plan) {
        // a failing check must not take the rest of the suite down with it
        try {
            checks.push_back(fn());
        } catch (const std::exception& e) {
            CheckResult broken;
            broken.name = name;
            broken.pass = false;
            broken.details = std::string("check aborted: ") + e.what();
            checks.push_back(broken);
        }
    }
    return checks;
}

std::string verification_report_json(const std::vector<CheckResult>& checks,
                                     const VerificationOptions& opts) {
    nlohmann::ordered_json report;
    report["config"]["version"] = kVersion;
    report["config"]["work_dir"] =
        (opts.work_dir.empty() ? std::filesystem::temp_directory_path() / "rcatenoid-verify"
                               : opts.work_dir)
            .string();
    report["config"]["threads"] = opts.threads;
    report["config"]["conservation_tol"] = opts.conservation_tol;
    report["checks"] = nlohmann::ordered_json::array();
    int passed = 0;
    double total_seconds = 0.0;
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["paper_ref"] = c.reference;
        jc["pass"] = c.pass;
        jc["measured"] = c.measured;
        jc["tolerance"] = c.tolerance;
        jc["seconds"] = c.seconds;
        jc["details"] = c.details;
        report["checks"].push_back(jc);
        passed += c.pass ? 1 : 0;
        total_seconds += c.seconds;
    }
    report["summary"]["total"] = checks.size();
    report["summary"]["passed"] = passed;
    report["summary"]["failed"] = checks.size() - passed;
    report["summary"]["all_pass"] = passed == static_cast<int>(checks.size());
    report["summary"]["seconds"] = total_seconds;
    return report.dump(2);
}

}  // namespace rcat
