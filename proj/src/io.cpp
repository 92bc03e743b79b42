#include "rcat/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rcat/curvature.hpp"

namespace rcat {

std::string fmt17(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, 17);
    if (ec != std::errc())
        throw std::runtime_error("fmt17: to_chars failed");
    return std::string(buf, ptr);
}

std::filesystem::path resolve_output_path(const std::filesystem::path& path) {
    if (path.is_absolute()) return path;
    if (const char* dir = std::getenv("RCAT_OUTPUT_DIR"); dir && *dir)
        return std::filesystem::path(dir) / path;
    return path;
}

ProfileTable make_profile_table(const ProfileCurve& curve, int n_t,
                                const OdeSettings& ode) {
    if (n_t < 1) throw std::domain_error("make_profile_table: n_t must be >= 1");
    const FamilyParams& fp = curve.family;

    ProfileTable table;
    table.metadata["version"] = kVersion;
    table.metadata["n"] = std::to_string(fp.n);
    table.metadata["r"] = std::to_string(fp.r);
    table.metadata["a"] = fmt17(curve.a);
    table.metadata["q"] = fmt17(fp.q);
    table.metadata["L_estimate"] = fmt17(curve.L_estimate);
    table.metadata["t_stop"] = fmt17(curve.t_stop);
    table.metadata["ode_rel_tol"] = fmt17(ode.rel_tol);
    table.metadata["ode_abs_tol"] = fmt17(ode.abs_tol);
    table.metadata["f_cap"] = fmt17(ode.f_cap);

    table.columns = {"t", "f", "f_t", "f_tt", "k1", "kn"};
    for (int j = 1; j <= fp.n; ++j) table.columns.push_back("H_" + std::to_string(j));
    table.columns.push_back("first_integral_residual");

    // Upper half on a uniform grid, then the even reflection: f, f_tt and
    // every curvature column are even in t while f_t flips sign.
    std::vector<std::vector<double>> upper;
    upper.reserve(n_t + 1);
    for (int i = 0; i <= n_t; ++i) {
        const double t = curve.t_stop * i / n_t;
        const ProfilePoint p = curve.at(t);
        const Eigen::VectorXd k = principal_curvatures(fp, p);
        const Eigen::VectorXd H = mean_curvatures(k);
        std::vector<double> row = {p.t, p.f, p.f_t, p.f_tt, k[0], k[fp.n - 1]};
        for (int j = 0; j < fp.n; ++j) row.push_back(H[j]);
        row.push_back(first_integral_residual(fp, curve.a, p));
        upper.push_back(std::move(row));
    }
    table.rows.reserve(2 * n_t + 1);
    for (int i = n_t; i >= 1; --i) {
        std::vector<double> row = upper[i];
        row[0] = -row[0];
        row[2] = -row[2];
        table.rows.push_back(std::move(row));
    }
    for (int i = 0; i <= n_t; ++i) table.rows.push_back(upper[i]);
    return table;
}

void write_profile_csv(const std::filesystem::path& path, const ProfileTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_profile_csv: cannot open " + path.string());
    for (const auto& [key, value] : table.metadata)
        out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << fmt17(row[c]);
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("write_profile_csv: write failed for " + path.string());
}

ProfileTable read_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_profile_csv: cannot open " + path.string());
    ProfileTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(' '));
                key.erase(key.find_last_not_of(' ') + 1);
                table.metadata[key] = line.substr(eq + 1);
            }
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || p != cell.data() + cell.size())
                throw std::runtime_error("read_profile_csv: bad number '" + cell + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

MeshData make_mesh(const ProfileCurve& curve, int n_t, int n_theta) {
    if (curve.family.n != 2)
        throw std::domain_error(
            "make_mesh: meshes exist for n = 2 only; use the profile export for higher n");
    if (n_t < 1 || n_theta < 3)
        throw std::domain_error("make_mesh: need n_t >= 1 and n_theta >= 3");

    MeshData mesh;
    mesh.n_t = n_t;
    mesh.n_theta = n_theta;
    const int rows = 2 * n_t + 1;
    mesh.vertices.reserve(static_cast<std::size_t>(rows) * n_theta);

    for (int i = 0; i < rows; ++i) {
        const int k = i - n_t;  // -n_t .. n_t
        const double t_abs = curve.t_stop * std::abs(k) / n_t;
        const ProfilePoint p = curve.at(t_abs);
        const double t = k < 0 ? -t_abs : t_abs;
        const double radius = std::tanh(p.f / 2.0);
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / n_theta;
            mesh.vertices.emplace_back(radius * std::cos(theta),
                                       radius * std::sin(theta), t);
        }
    }
    // Quad (i,j)-(i+1,j)-(i+1,j+1)-(i,j+1): edge along +t then +theta, so
    // the induced normal has horizontal component toward the axis.
    mesh.faces.reserve(static_cast<std::size_t>(rows - 1) * n_theta);
    for (int i = 0; i + 1 < rows; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            const int jn = (j + 1) % n_theta;
            mesh.faces.push_back({i * n_theta + j, (i + 1) * n_theta + j,
                                  (i + 1) * n_theta + jn, i * n_theta + jn});
        }
    }
    return mesh;
}

void write_mesh_obj(const std::filesystem::path& path, const MeshData& mesh,
                    const FamilyParams& fp, double a, const OdeSettings& ode) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_mesh_obj: cannot open " + path.string());
    out << "# rcatenoid mesh export\n";
    out << "# version=" << kVersion << "\n";
    out << "# n=" << fp.n << " r=" << fp.r << " a=" << fmt17(a) << "\n";
    out << "# ode_rel_tol=" << fmt17(ode.rel_tol) << " ode_abs_tol="
        << fmt17(ode.abs_tol) << " f_cap=" << fmt17(ode.f_cap) << "\n";
    out << "# vertices=" << mesh.vertices.size() << " faces=" << mesh.faces.size()
        << "\n";
    for (const auto& v : mesh.vertices)
        out << "v " << fmt17(v[0]) << " " << fmt17(v[1]) << " " << fmt17(v[2]) << "\n";
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << " "
            << f[3] + 1 << "\n";
    if (!out)
        throw std::runtime_error("write_mesh_obj: write failed for " + path.string());
}

}  // namespace rcat
