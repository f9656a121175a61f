#include <cmath>
#include <random>

#include "firstlook/error.hpp"
#include "firstlook/world.hpp"

namespace firstlook {

void LidarModel::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); };
    if (!(azimuth_fov_deg > 0.0 && azimuth_fov_deg <= 360.0)) fail("azimuth_fov_deg must be in (0, 360]");
    if (!(azimuth_res_deg > 0.0)) fail("azimuth_res_deg must be > 0");
    if (!(elevation_fov_deg >= 0.0 && elevation_fov_deg <= 180.0)) fail("elevation_fov_deg must be in [0, 180]");
    if (!(elevation_res_deg > 0.0)) fail("elevation_res_deg must be > 0");
    if (!(max_range > 0.0)) fail("max_range must be > 0");
    if (!(range_noise_sigma >= 0.0)) fail("range_noise_sigma must be >= 0");
}

PointCloud scan(const MeshRaycaster& world, const Pose& pose, const LidarModel& lidar) {
    PointCloud cloud;
    cloud.frame = FrameId::World;

    const bool full_circle = lidar.azimuth_fov_deg >= 360.0 - 1e-9;
    std::size_t n_az = static_cast<std::size_t>(std::floor(lidar.azimuth_fov_deg / lidar.azimuth_res_deg + 1e-9));
    if (!full_circle) {
        ++n_az;  // both edges of a partial sweep are sampled
    }
    const std::size_t n_el =
        static_cast<std::size_t>(std::floor(lidar.elevation_fov_deg / lidar.elevation_res_deg + 1e-9)) + 1;
    const double az0 = -lidar.azimuth_fov_deg / 2.0;
    const double el0 = -lidar.elevation_fov_deg / 2.0;

    std::mt19937_64 rng(lidar.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const Vec3& origin = pose.position();
    cloud.points.reserve(n_az * n_el / 4);

    for (std::size_t i = 0; i < n_el; ++i) {
        const double el = deg2rad(el0 + static_cast<double>(i) * lidar.elevation_res_deg);
        for (std::size_t j = 0; j < n_az; ++j) {
            const double az = pose.yaw() + deg2rad(az0 + static_cast<double>(j) * lidar.azimuth_res_deg);
            const Vec3 dir(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
            const auto hit = world.cast(origin, dir, lidar.max_range);
            if (!hit) {
                continue;
            }
            double range = hit->t;
            if (lidar.range_noise_sigma > 0.0) {
                range += lidar.range_noise_sigma * noise(rng);
            }
            cloud.points.push_back(origin + dir * range);
        }
    }
    return cloud;
}

PointCloud scan(const SurfaceMesh& mesh, const Pose& pose, const LidarModel& lidar) {
    return scan(MeshRaycaster(mesh), pose, lidar);
}

void VehicleModel::validate() const {
    if (!(max_speed > 0.0) || !(max_yaw_rate > 0.0) || !(tick_dt > 0.0)) {
        throw Error(ErrorCode::ValidationError,
                    "vehicle max_speed, max_yaw_rate and tick_dt must be > 0");
    }
}

Pose vehicle_step(const Pose& state, const Pose& reference, const VehicleModel& vehicle) {
    const Vec3 delta = reference.position() - state.position();
    const double dist = delta.norm();
    const double reach = vehicle.max_speed * vehicle.tick_dt;
    const Vec3 position =
        dist <= reach ? reference.position() : Vec3(state.position() + delta * (reach / dist));

    const double dyaw = normalize_angle(reference.yaw() - state.yaw());
    const double turn = vehicle.max_yaw_rate * vehicle.tick_dt;
    const double yaw =
        std::abs(dyaw) <= turn ? reference.yaw() : state.yaw() + std::copysign(turn, dyaw);
    return Pose(position, yaw);
}

}  // namespace firstlook
