#include "firstlook/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>

#include "firstlook/error.hpp"

namespace firstlook {

double normalize_angle(double radians) {
    double a = std::remainder(radians, 2.0 * kPi);
    if (a <= -kPi) {
        a += 2.0 * kPi;
    }
    return a;
}

Vec3 Pose::heading() const { return {std::cos(yaw_), std::sin(yaw_), 0.0}; }

Aabb bounding_box(const std::vector<Vec3>& points) {
    Aabb box{Vec3::Constant(std::numeric_limits<double>::infinity()),
             Vec3::Constant(-std::numeric_limits<double>::infinity())};
    for (const auto& p : points) {
        box.min = box.min.cwiseMin(p);
        box.max = box.max.cwiseMax(p);
    }
    return box;
}

PointCloud downsample(const PointCloud& cloud, std::size_t target_count, std::uint64_t seed) {
    if (target_count < 1) {
        throw Error(ErrorCode::InvalidTarget, "downsample target must be >= 1");
    }
    if (cloud.size() <= target_count) {
        return cloud;
    }
    std::mt19937_64 rng(seed);
    PointCloud out;
    out.frame = cloud.frame;
    out.points.reserve(target_count);
    // Selection sampling: uniform over subsets and keeps the source order.
    std::sample(cloud.points.begin(), cloud.points.end(), std::back_inserter(out.points),
                target_count, rng);
    return out;
}

}  // namespace firstlook
