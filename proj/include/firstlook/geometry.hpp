#ifndef FIRSTLOOK_GEOMETRY_HPP_
#define FIRSTLOOK_GEOMETRY_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace firstlook {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline bool is_finite(const Vec3& v) { return v.allFinite(); }

// Fixed summation order so that index queries and brute-force scans agree bit-for-bit.
inline double squared_distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    const double dz = a.z() - b.z();
    return dx * dx + dy * dy + dz * dz;
}

/// Position plus yaw. Roll and pitch are always zero for this vehicle model.
class Pose {
public:
    Pose() = default;
    Pose(const Vec3& position, double yaw) : position_(position), yaw_(normalize_angle(yaw)) {}

    const Vec3& position() const { return position_; }
    double yaw() const { return yaw_; }
    double roll() const { return 0.0; }
    double pitch() const { return 0.0; }

    void set_position(const Vec3& p) { position_ = p; }
    void set_yaw(double yaw) { yaw_ = normalize_angle(yaw); }

    /// Unit heading in the horizontal plane.
    Vec3 heading() const;

    bool operator==(const Pose& other) const {
        return position_ == other.position_ && yaw_ == other.yaw_;
    }

private:
    Vec3 position_{Vec3::Zero()};
    double yaw_{0.0};
};

/// Right-handed viewing frame: nu_x toward the surface, nu_y lateral (horizontal), nu_z up-ish.
struct EgoFrame {
    Vec3 nu_x{Vec3::UnitX()};
    Vec3 nu_y{Vec3::UnitY()};
    Vec3 nu_z{Vec3::UnitZ()};
};

enum class FrameId { World, Sensor };

struct PointCloud {
    std::vector<Vec3> points;
    FrameId frame{FrameId::World};

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

struct Aabb {
    Vec3 min{Vec3::Constant(0.0)};
    Vec3 max{Vec3::Constant(0.0)};

    bool contains(const Vec3& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
    Vec3 extent() const { return max - min; }
};

/// Bounding box of a non-empty point set.
Aabb bounding_box(const std::vector<Vec3>& points);

/// Uniform random subset of exactly target_count points (file order preserved).
/// Returns the cloud unchanged when it already has at most target_count points.
PointCloud downsample(const PointCloud& cloud, std::size_t target_count, std::uint64_t seed);

}  // namespace firstlook

#endif  // FIRSTLOOK_GEOMETRY_HPP_
