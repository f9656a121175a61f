#ifndef FIRSTLOOK_TESTS_FIXTURES_HPP_
#define FIRSTLOOK_TESTS_FIXTURES_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "firstlook/geometry.hpp"
#include "firstlook/world.hpp"

namespace fixtures {

using firstlook::PointCloud;
using firstlook::SurfaceMesh;
using firstlook::Vec3;

// Dense point grid on the plane x = wall_x.
inline PointCloud wall_grid(double wall_x, double y0, double y1, double z0, double z1,
                            double spacing) {
    PointCloud c;
    for (double y = y0; y <= y1 + 1e-9; y += spacing) {
        for (double z = z0; z <= z1 + 1e-9; z += spacing) {
            c.points.emplace_back(wall_x, y, z);
        }
    }
    return c;
}

// Two half-planes meeting at (wall_x, corner_y): x = wall_x for y <= corner_y and
// y = corner_y for x >= wall_x.
inline PointCloud corner_grid(double wall_x, double corner_y, double extent, double z0, double z1,
                              double spacing) {
    PointCloud c;
    for (double y = corner_y - extent; y <= corner_y + 1e-9; y += spacing) {
        for (double z = z0; z <= z1 + 1e-9; z += spacing) c.points.emplace_back(wall_x, y, z);
    }
    for (double x = wall_x + spacing; x <= wall_x + extent + 1e-9; x += spacing) {
        for (double z = z0; z <= z1 + 1e-9; z += spacing) c.points.emplace_back(x, corner_y, z);
    }
    return c;
}

inline std::vector<Vec3> random_points(std::size_t n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Vec3> pts(n);
    for (auto& p : pts) p = Vec3(u(rng), u(rng), u(rng));
    return pts;
}

// Closed UV sphere with outward-facing triangles.
inline SurfaceMesh uv_sphere(const Vec3& center, double radius, int stacks, int slices) {
    SurfaceMesh m;
    const double pi = firstlook::kPi;
    m.vertices.push_back(center + Vec3(0, 0, radius));
    for (int i = 1; i < stacks; ++i) {
        const double phi = pi * i / stacks;
        for (int j = 0; j < slices; ++j) {
            const double th = 2.0 * pi * j / slices;
            m.vertices.push_back(center + radius * Vec3(std::sin(phi) * std::cos(th),
                                                        std::sin(phi) * std::sin(th),
                                                        std::cos(phi)));
        }
    }
    m.vertices.push_back(center - Vec3(0, 0, radius));
    const auto ring = [&](int i, int j) {
        return static_cast<std::uint32_t>(1 + (i - 1) * slices + (j % slices));
    };
    const auto bottom = static_cast<std::uint32_t>(m.vertices.size() - 1);
    for (int j = 0; j < slices; ++j) {
        m.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
        m.triangles.push_back({bottom, ring(stacks - 1, j + 1), ring(stacks - 1, j)});
    }
    for (int i = 1; i < stacks - 1; ++i) {
        for (int j = 0; j < slices; ++j) {
            m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    }
    return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("firstlook-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace fixtures

#endif  // FIRSTLOOK_TESTS_FIXTURES_HPP_
