#include <algorithm>
#include <cmath>

#include "firstlook/error.hpp"
#include "firstlook/metrics.hpp"

namespace firstlook {

CoverageGrid::CoverageGrid(double voxel_size) : voxel_size_(voxel_size) {
    if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
        throw Error(ErrorCode::InvalidParams, "voxel size must be > 0");
    }
}

VoxelKey CoverageGrid::key_of(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / voxel_size_)),
            static_cast<std::int64_t>(std::floor(p.y() / voxel_size_)),
            static_cast<std::int64_t>(std::floor(p.z() / voxel_size_))};
}

Vec3 CoverageGrid::center_of(const VoxelKey& k) const {
    return Vec3(static_cast<double>(k.x) + 0.5, static_cast<double>(k.y) + 0.5,
                static_cast<double>(k.z) + 0.5) *
           voxel_size_;
}

bool CoverageGrid::insert(const VoxelKey& k) { return observed_.insert(k).second; }

void CoverageGrid::add(const PointCloud& scan) {
    for (const auto& p : scan.points) {
        observed_.insert(key_of(p));
    }
}

CoverageGrid update_coverage(CoverageGrid grid, const PointCloud& scan) {
    grid.add(scan);
    return grid;
}

VoxelSet surface_voxels(const SurfaceMesh& mesh, double voxel_size) {
    const CoverageGrid keyer(voxel_size);
    VoxelSet out;
    const double spacing = voxel_size / 8.0;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto [a, b, c] = mesh.corners(i);
        const double longest = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
        const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(longest / spacing)));
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t u = 0; u <= n; ++u) {
            for (std::size_t v = 0; u + v <= n; ++v) {
                const double bu = static_cast<double>(u) * inv;
                const double bv = static_cast<double>(v) * inv;
                out.insert(keyer.key_of(a + (b - a) * bu + (c - a) * bv));
            }
        }
    }
    return out;
}

namespace {

VoxelSet target_voxels(const SurfaceMesh& mesh, const Aabb& roi, const CoverageGrid& grid) {
    VoxelSet target;
    for (const auto& k : surface_voxels(mesh, grid.voxel_size())) {
        if (roi.contains(grid.center_of(k))) {
            target.insert(k);
        }
    }
    if (target.empty()) {
        throw Error(ErrorCode::EmptyRoi, "region of interest contains no surface voxels");
    }
    return target;
}

}  // namespace

double coverage_fraction(const CoverageGrid& grid, const SurfaceMesh& ground_truth,
                         const Aabb& roi) {
    const VoxelSet target = target_voxels(ground_truth, roi, grid);
    std::size_t hits = 0;
    for (const auto& k : grid.observed()) {
        hits += target.count(k);
    }
    return static_cast<double>(hits) / static_cast<double>(target.size());
}

CoverageTracker::CoverageTracker(const SurfaceMesh& ground_truth, const Aabb& roi,
                                 double voxel_size)
    : grid_(voxel_size), target_(target_voxels(ground_truth, roi, grid_)) {}

void CoverageTracker::add(const PointCloud& scan) {
    for (const auto& p : scan.points) {
        const VoxelKey k = grid_.key_of(p);
        if (grid_.insert(k) && target_.count(k) != 0) {
            ++hits_;
        }
    }
}

double CoverageTracker::fraction() const {
    return static_cast<double>(hits_) / static_cast<double>(target_.size());
}

}  // namespace firstlook
