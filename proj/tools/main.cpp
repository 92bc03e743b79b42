#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "rcat/analysis.hpp"
#include "rcat/curvature.hpp"
#include "rcat/io.hpp"
#include "rcat/parallel.hpp"
#include "rcat/profile.hpp"
#include "rcat/quadrature.hpp"
#include "rcat/verification.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonArgs {
    int n = 4;
    int r = 1;
    rcat::QuadratureSettings quad;
    rcat::OdeSettings ode;
    unsigned threads = 0;
};

void add_family_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--n", args.n, "Ambient hyperbolic dimension (>= 2)")->required();
    cmd->add_option("--r", args.r, "Curvature order (0 <= r <= n-1)")->required();
    cmd->add_option("--rel-tol", args.quad.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--abs-tol", args.quad.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--max-subdivisions", args.quad.max_subdivisions,
                    "Adaptive quadrature subdivision budget");
    cmd->add_option("--ode-rel-tol", args.ode.rel_tol, "ODE relative tolerance");
    cmd->add_option("--ode-abs-tol", args.ode.abs_tol, "ODE absolute tolerance");
    cmd->add_option("--f-cap", args.ode.f_cap,
                    "Radius at which the ODE integration stops and quadrature "
                    "completes the height");
}

std::ofstream open_output(const std::string& out) {
    const auto path = rcat::resolve_output_path(out);
    std::ofstream stream(path, std::ios::binary);
    if (!stream)
        throw std::runtime_error("cannot open output file " + path.string());
    return stream;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rcatenoid: rotational hypersurfaces with vanishing r-mean curvature in "
        "H^n x R -- heights, profiles, envelopes, curvature audits and exports"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML file");

    CommonArgs args;

    // ---- profile ----
    auto* profile_cmd = app.add_subcommand("profile", "Export one profile curve as CSV");
    profile_cmd->configurable()->fallthrough();
    double a = 1.0;
    int n_t = 200;
    std::string out_path;
    add_family_options(profile_cmd, args);
    profile_cmd->add_option("--a", a, "Neck radius")->required();
    profile_cmd->add_option("--nt", n_t, "Rows per half-height in the export");
    profile_cmd->add_option("--out", out_path, "Output CSV path")->required();

    // ---- length ----
    auto* length_cmd = app.add_subcommand("length", "Half-height L(a) and its derivative");
    length_cmd->configurable()->fallthrough();
    add_family_options(length_cmd, args);
    length_cmd->add_option("--a", a, "Neck radius")->required();

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "L and dL/da over a neck grid (CSV)");
    sweep_cmd->configurable()->fallthrough();
    double a_min = 0.05, a_max = 10.0;
    int count = 50;
    bool linear = false;
    add_family_options(sweep_cmd, args);
    sweep_cmd->add_option("--a-min", a_min, "Grid start");
    sweep_cmd->add_option("--a-max", a_max, "Grid end");
    sweep_cmd->add_option("--count", count, "Grid size");
    sweep_cmd->add_flag("--linear", linear, "Linear grid instead of logarithmic");
    sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();
    sweep_cmd->add_option("--threads", args.threads, "Worker threads (0 = auto)");

    // ---- bvp ----
    auto* bvp_cmd = app.add_subcommand(
        "bvp", "Count members through the circle pair at heights +-t0, radius R");
    bvp_cmd->configurable()->fallthrough();
    double t0 = 0.5, radius = 1.0;
    add_family_options(bvp_cmd, args);
    bvp_cmd->add_option("--t0", t0, "Half-distance of the two circles")->required();
    bvp_cmd->add_option("--R", radius, "Circle radius")->required();

    // ---- envelope ----
    auto* env_cmd = app.add_subcommand(
        "envelope", "Envelope m(t) of the family over a height grid (CSV)");
    env_cmd->configurable()->fallthrough();
    double t_min = 0.1, t_max = 1.0;
    add_family_options(env_cmd, args);
    env_cmd->add_option("--t-min", t_min, "Grid start (> 0)");
    env_cmd->add_option("--t-max", t_max, "Grid end (< T)");
    env_cmd->add_option("--count", count, "Grid size");
    env_cmd->add_option("--out", out_path, "Output CSV path")->required();
    env_cmd->add_option("--threads", args.threads, "Worker threads (0 = auto)");

    // ---- intersect ----
    auto* int_cmd = app.add_subcommand(
        "intersect", "Upper-half crossing of the profiles with necks a and b");
    int_cmd->configurable()->fallthrough();
    double b = 2.0;
    add_family_options(int_cmd, args);
    int_cmd->add_option("--a", a, "First neck radius")->required();
    int_cmd->add_option("--b", b, "Second neck radius")->required();

    // ---- curvature ----
    auto* curv_cmd = app.add_subcommand(
        "curvature", "Principal/mean curvatures and Newton spectra along one member");
    curv_cmd->configurable()->fallthrough();
    int samples = 9;
    add_family_options(curv_cmd, args);
    curv_cmd->add_option("--a", a, "Neck radius")->required();
    curv_cmd->add_option("--samples", samples, "Sample count along the half profile");
    curv_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

    // ---- mesh ----
    auto* mesh_cmd =
        app.add_subcommand("mesh", "Export the revolved surface as OBJ (n = 2 only)");
    mesh_cmd->configurable()->fallthrough();
    int n_theta = 128;
    add_family_options(mesh_cmd, args);
    mesh_cmd->add_option("--a", a, "Neck radius")->required();
    mesh_cmd->add_option("--nt", n_t, "Rows per half-height");
    mesh_cmd->add_option("--ntheta", n_theta, "Angular samples");
    mesh_cmd->add_option("--out", out_path, "Output OBJ path")->required();

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand(
        "verify", "Run the full verification suite and emit the JSON report");
    verify_cmd->configurable()->fallthrough();
    std::string report_path, work_dir;
    double conservation_tol = 1e-8;
    verify_cmd->add_option("--out", report_path, "Also write the report to this path");
    verify_cmd->add_option("--work-dir", work_dir, "Scratch directory for export checks");
    verify_cmd->add_option("--threads", args.threads, "Worker threads (0 = auto)");
    verify_cmd->add_option("--conservation-tol", conservation_tol,
                           "Tolerance of the conservation check (default 1e-8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2; --help exits 0
    }

    try {
        if (profile_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            const auto curve = rcat::integrate_profile(fp, a, args.ode, args.quad);
            rcat::write_profile_csv(rcat::resolve_output_path(out_path),
                                    rcat::make_profile_table(curve, n_t, args.ode));
        } else if (length_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            const auto L = rcat::half_height(fp, a, args.quad);
            const auto dL = rcat::half_height_derivative(fp, a, args.quad);
            ordered_json j;
            j["n"] = args.n;
            j["r"] = args.r;
            j["q"] = fp.q;
            j["a"] = a;
            j["L"] = L.value;
            j["L_error_estimate"] = L.error_estimate;
            j["dL_da"] = dL.value;
            j["dL_da_error_estimate"] = dL.error_estimate;
            j["height_limit"] = rcat::height_limit(fp);
            emit(j);
        } else if (sweep_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            if (count < 2) throw std::domain_error("sweep: count must be >= 2");
            std::vector<double> grid(count);
            for (int i = 0; i < count; ++i) {
                const double u = static_cast<double>(i) / (count - 1);
                grid[i] = linear ? a_min + (a_max - a_min) * u
                                 : a_min * std::exp(std::log(a_max / a_min) * u);
            }
            std::vector<rcat::HeightValue> L(count), dL(count);
            rcat::parallel_for(
                count,
                [&](int i) {
                    L[i] = rcat::half_height(fp, grid[i], args.quad);
                    dL[i] = rcat::half_height_derivative(fp, grid[i], args.quad);
                },
                args.threads);
            auto stream = open_output(out_path);
            stream << "# rcatenoid sweep export\n";
            stream << "# version=" << rcat::kVersion << "\n";
            stream << "# n=" << args.n << " r=" << args.r << " q=" << rcat::fmt17(fp.q)
                   << "\n";
            stream << "# a_min=" << rcat::fmt17(a_min) << " a_max=" << rcat::fmt17(a_max)
                   << " count=" << count << " grid=" << (linear ? "linear" : "log")
                   << "\n";
            stream << "# rel_tol=" << rcat::fmt17(args.quad.rel_tol)
                   << " abs_tol=" << rcat::fmt17(args.quad.abs_tol) << "\n";
            stream << "# height_limit=" << rcat::fmt17(rcat::height_limit(fp)) << "\n";
            stream << "a,L,L_error,dL_da,dL_da_error\n";
            for (int i = 0; i < count; ++i)
                stream << rcat::fmt17(grid[i]) << "," << rcat::fmt17(L[i].value) << ","
                       << rcat::fmt17(L[i].error_estimate) << ","
                       << rcat::fmt17(dL[i].value) << ","
                       << rcat::fmt17(dL[i].error_estimate) << "\n";
        } else if (bvp_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            const auto res = rcat::count_bvp_solutions(fp, t0, radius, args.quad);
            ordered_json j;
            j["n"] = args.n;
            j["r"] = args.r;
            j["t0"] = res.t0;
            j["R"] = res.R;
            j["count"] = res.count;
            j["roots"] = res.roots;
            j["m0"] = res.m0;
            j["a0"] = res.a0;
            j["validated"] = res.validated;
            j["note"] = res.note;
            emit(j);
        } else if (env_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            if (count < 2) throw std::domain_error("envelope: count must be >= 2");
            std::vector<double> t_grid(count);
            for (int i = 0; i < count; ++i)
                t_grid[i] = t_min + (t_max - t_min) * i / (count - 1);
            std::vector<rcat::EnvelopeCurvePoint> pts(count);
            rcat::parallel_for(
                count,
                [&](int i) {
                    const std::vector<double> one{t_grid[i]};
                    pts[i] = rcat::envelope_curve(fp, one, args.quad).front();
                },
                args.threads);
            auto stream = open_output(out_path);
            stream << "# rcatenoid envelope export\n";
            stream << "# version=" << rcat::kVersion << "\n";
            stream << "# n=" << args.n << " r=" << args.r << " q=" << rcat::fmt17(fp.q)
                   << "\n";
            stream << "# t_min=" << rcat::fmt17(t_min) << " t_max=" << rcat::fmt17(t_max)
                   << " count=" << count << "\n";
            stream << "# rel_tol=" << rcat::fmt17(args.quad.rel_tol)
                   << " abs_tol=" << rcat::fmt17(args.quad.abs_tol) << "\n";
            stream << "t,m,a_star,tangency_residual,ok\n";
            // even in t: emit the reflected half first
            for (int i = count - 1; i >= 0; --i) {
                const auto& p = pts[i];
                stream << rcat::fmt17(-p.point.t) << "," << rcat::fmt17(p.point.m) << ","
                       << rcat::fmt17(p.point.a_star) << ","
                       << rcat::fmt17(p.tangency_residual) << "," << (p.ok ? 1 : 0)
                       << "\n";
            }
            for (int i = 0; i < count; ++i) {
                const auto& p = pts[i];
                stream << rcat::fmt17(p.point.t) << "," << rcat::fmt17(p.point.m) << ","
                       << rcat::fmt17(p.point.a_star) << ","
                       << rcat::fmt17(p.tangency_residual) << "," << (p.ok ? 1 : 0)
                       << "\n";
            }
        } else if (int_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            const auto crossings = rcat::profile_intersections(fp, a, b, args.quad);
            ordered_json j;
            j["n"] = args.n;
            j["r"] = args.r;
            j["a"] = a;
            j["b"] = b;
            j["crossings"] = ordered_json::array();
            for (const auto& x : crossings) {
                ordered_json jx;
                jx["rho"] = x.rho;
                jx["t"] = x.t;
                jx["lambda_residual"] = x.lambda_residual;
                jx["mirror_t"] = -x.t;
                j["crossings"].push_back(jx);
            }
            emit(j);
        } else if (curv_cmd->parsed()) {
            const auto fp = rcat::make_family(args.n, args.r);
            const auto curve = rcat::integrate_profile(fp, a, args.ode, args.quad);
            std::ostringstream body;
            body << "# rcatenoid curvature export\n";
            body << "# version=" << rcat::kVersion << "\n";
            body << "# n=" << args.n << " r=" << args.r << " a=" << rcat::fmt17(a)
                 << "\n";
            body << "# ode_rel_tol=" << rcat::fmt17(args.ode.rel_tol)
                 << " ode_abs_tol=" << rcat::fmt17(args.ode.abs_tol)
                 << " samples=" << samples << "\n";
            body << "t,f,f_t,f_tt,k1,kn";
            for (int j = 1; j <= fp.n; ++j) body << ",H_" << j;
            for (int j = 0; j < fp.n; ++j) body << ",P" << j << "_min";
            body << "\n";
            for (int i = 0; i < samples; ++i) {
                const double t = curve.t_stop * i / std::max(1, samples - 1);
                const auto p = curve.at(t);
                const auto rec = rcat::curvature_record(fp, p);
                body << rcat::fmt17(p.t) << "," << rcat::fmt17(p.f) << ","
                     << rcat::fmt17(p.f_t) << "," << rcat::fmt17(p.f_tt) << ","
                     << rcat::fmt17(rec.k[0]) << "," << rcat::fmt17(rec.k[fp.n - 1]);
                for (int j = 0; j < fp.n; ++j) body << "," << rcat::fmt17(rec.H[j]);
                for (int j = 0; j < fp.n; ++j)
                    body << "," << rcat::fmt17(rec.newton_eigs[j].minCoeff());
                body << "\n";
            }
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                auto stream = open_output(out_path);
                stream << body.str();
            }
        } else if (mesh_cmd->parsed()) {
            if (args.n != 2) {
                std::cerr << "mesh: meshes are produced for n = 2 only; for n = "
                          << args.n << " use the profile export instead\n";
                return 2;
            }
            const auto fp = rcat::make_family(args.n, args.r);
            const auto curve = rcat::integrate_profile(fp, a, args.ode, args.quad);
            const auto mesh = rcat::make_mesh(curve, n_t, n_theta);
            rcat::write_mesh_obj(rcat::resolve_output_path(out_path), mesh, fp, a, args.ode);
        } else if (verify_cmd->parsed()) {
            rcat::VerificationOptions opts;
            opts.threads = args.threads;
            opts.conservation_tol = conservation_tol;
            if (!work_dir.empty()) opts.work_dir = work_dir;
            const auto checks = rcat::run_verification_suite(opts);
            const std::string report = rcat::verification_report_json(checks, opts);
            std::cout << report << "\n";
            if (!report_path.empty()) {
                auto stream = open_output(report_path);
                stream << report << "\n";
            }
            for (const auto& c : checks)
                if (!c.pass) return 1;
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
