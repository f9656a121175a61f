#ifndef FIRSTLOOK_WORLD_HPP_
#define FIRSTLOOK_WORLD_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "firstlook/geometry.hpp"

namespace firstlook {

// ---------------------------------------------------------------------------
// Surface meshes
// ---------------------------------------------------------------------------

using TriangleIndices = std::array<std::uint32_t, 3>;

struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<TriangleIndices> triangles;
    std::string generator{"file"};                 // plane | sine-wall | two-plane-corner | heightfield | file
    std::map<std::string, double> generator_params;

    bool empty() const { return triangles.empty(); }
    std::array<Vec3, 3> corners(std::size_t tri) const {
        const auto& t = triangles[tri];
        return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
    }
};

/// Validates indices and drops zero-area triangles. Throws InvalidParams on bad indices
/// or non-finite vertices.
SurfaceMesh sanitize_mesh(SurfaceMesh mesh);

/// OBJ (v/f subset) or ascii PLY, chosen by extension.
SurfaceMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);

enum class SurfaceKind { Plane, SineWall, TwoPlaneCorner, Heightfield };

std::optional<SurfaceKind> surface_kind_from_string(const std::string& s);
std::string to_string(SurfaceKind kind);

/// Generator parameters. Vertical walls face -x at x = offset and span [y_min, y_max] x
/// [z_min, z_max]; the corner turns away from the viewer at y_max by (180 - corner_angle).
struct SurfaceParams {
    double offset{20.0};
    double y_min{-50.0};
    double y_max{50.0};
    double z_min{0.0};
    double z_max{60.0};
    double cell{2.0};
    double amplitude{3.0};
    double wavelength{25.0};
    double corner_angle_deg{90.0};
    double leg_length{100.0};
    double roughness{0.0};  // std-dev of seeded jitter along the wall normal [m]
    // Heightfield only: heights[row][col] at origin + (col, row) * spacing.
    std::vector<std::vector<double>> heights;
    double spacing{1.0};
    Vec3 origin{Vec3::Zero()};
};

SurfaceMesh make_surface(SurfaceKind kind, const SurfaceParams& params, std::uint64_t seed);

/// Rigid translation of every vertex by direction * distance (direction is normalized).
SurfaceMesh recede_face(const SurfaceMesh& mesh, const Vec3& direction, double distance);

/// Area-uniform random samples on the mesh surface.
PointCloud sample_surface(const SurfaceMesh& mesh, std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Ray casting
// ---------------------------------------------------------------------------

struct RayHit {
    double t{0.0};
    std::size_t triangle{0};
};

/// Moller-Trumbore; returns t > 1e-9 for hits including triangle edges.
std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c);

/// Closest hit within max_range over all triangles (ties to the lowest triangle index).
std::optional<RayHit> raycast_brute_force(const SurfaceMesh& mesh, const Vec3& origin,
                                          const Vec3& dir, double max_range);

/// Bounding-volume hierarchy over a mesh. Results are identical to raycast_brute_force.
class MeshRaycaster {
public:
    explicit MeshRaycaster(SurfaceMesh mesh);

    std::optional<RayHit> cast(const Vec3& origin, const Vec3& dir, double max_range) const;
    const SurfaceMesh& mesh() const { return mesh_; }

private:
    struct Node {
        Aabb box;
        std::uint32_t begin{0};
        std::uint32_t count{0};   // > 0 for leaves
        std::uint32_t right{0};   // left child is always this + 1
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);

    SurfaceMesh mesh_;
    std::vector<std::uint32_t> order_;
    std::vector<Vec3> centroids_;
    std::vector<Node> nodes_;
};

// ---------------------------------------------------------------------------
// LiDAR and vehicle
// ---------------------------------------------------------------------------

struct LidarModel {
    double azimuth_fov_deg{360.0};
    double azimuth_res_deg{1.0};
    double elevation_fov_deg{45.0};
    double elevation_res_deg{1.0};
    double max_range{100.0};
    double range_noise_sigma{0.0};
    std::uint64_t seed{0};

    void validate() const;
};

/// Simulated LiDAR frame in world coordinates. Rays are laid out in the sensor frame
/// (azimuth centered on the heading, elevation centered on the horizon) and rotated by
/// pose.yaw. Noise is Gaussian along each ray, seeded by lidar.seed.
PointCloud scan(const MeshRaycaster& world, const Pose& pose, const LidarModel& lidar);
PointCloud scan(const SurfaceMesh& mesh, const Pose& pose, const LidarModel& lidar);

struct VehicleModel {
    double max_speed{8.0};     // [m/s]
    double max_yaw_rate{1.0};  // [rad/s]
    double tick_dt{1.0};       // [s]

    void validate() const;
};

/// First-order kinematic tracker: straight-line translation and shortest-arc yaw, both
/// rate-limited, never overshooting the reference.
Pose vehicle_step(const Pose& state, const Pose& reference, const VehicleModel& vehicle);

}  // namespace firstlook

#endif  // FIRSTLOOK_WORLD_HPP_
