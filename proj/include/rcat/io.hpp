#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rcat/family.hpp"
#include "rcat/profile.hpp"

namespace rcat {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest-exact decimal rendering of a double: 17 significant digits,
/// locale-independent ('.' decimal point always), bit-reproducible.
std::string fmt17(double x);

/// Revolved surface data over a (t, theta) grid, ball-model coordinates.
/// theta is sampled on [0, 2pi) without duplication: the faces wrap, so
/// the grid is watertight in theta. Only the n = 2 ambient makes sense as
/// a mesh in 3-space.
struct MeshData {
    std::vector<Eigen::Vector3d> vertices;           // (x1, x2, t)
    std::vector<std::array<int, 4>> faces;           // quads, 0-based
    int n_t = 0;                                     // rows: 2*n_t + 1
    int n_theta = 0;                                 // columns
};

/// Densified profile table: rows at 2*n_t+1 heights (even reflection for
/// t < 0), with curvature columns and the conservation residual.
struct ProfileTable {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Build the profile export table from an integrated curve.
ProfileTable make_profile_table(const ProfileCurve& curve, int n_t,
                                const OdeSettings& ode);

/// Write the table as CSV: '#'-prefixed metadata lines, a column header
/// row, then comma-separated 17-digit values. UTF-8, LF line endings.
void write_profile_csv(const std::filesystem::path& path, const ProfileTable& table);

/// Parse back a profile CSV written by write_profile_csv.
ProfileTable read_profile_csv(const std::filesystem::path& path);

/// Revolve the profile into a quad mesh (requires n = 2).
MeshData make_mesh(const ProfileCurve& curve, int n_t, int n_theta);

/// Write the mesh as Wavefront OBJ: 'v x y z' with x,y the ball
/// coordinates and z = t; quad 'f' records wound counter-clockwise as seen
/// from the chosen normal side (horizontal component toward the axis).
void write_mesh_obj(const std::filesystem::path& path, const MeshData& mesh,
                    const FamilyParams& fp, double a, const OdeSettings& ode);

/// Apply the output-directory override from the environment (RCAT_OUTPUT_DIR)
/// to a relative path; absolute paths pass through.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

}  // namespace rcat
