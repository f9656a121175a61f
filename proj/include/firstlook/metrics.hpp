#ifndef FIRSTLOOK_METRICS_HPP_
#define FIRSTLOOK_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <unordered_set>
#include <vector>

#include "firstlook/geometry.hpp"
#include "firstlook/world.hpp"

namespace firstlook {

// ---------------------------------------------------------------------------
// Cloud-to-cloud distance
// ---------------------------------------------------------------------------

/// Fixed bins of bin_width from 0 to max_distance plus one overflow bin.
struct DistanceHistogram {
    double bin_width{0.05};
    double max_distance{2.0};
    std::vector<std::size_t> counts;
    std::size_t overflow{0};
};

struct CloudComparison {
    std::size_t count{0};
    double mean{0.0};
    double max{0.0};
    double p98{0.0};            // 98th percentile distance
    double trimmed_mean_98{0.0};  // mean of distances at or below p98
    DistanceHistogram histogram;
};

/// Nearest-neighbor distance from every measured point into the reference.
/// Throws EmptyCloud when either cloud is empty.
CloudComparison cloud_to_cloud(const PointCloud& measured, const PointCloud& reference);

void write_histogram_csv(const DistanceHistogram& histogram, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Voxel coverage
// ---------------------------------------------------------------------------

struct VoxelKey {
    std::int64_t x{0}, y{0}, z{0};
    bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(k.y) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(k.z) + 0x85EBCA77C2B2AE63ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

using VoxelSet = std::unordered_set<VoxelKey, VoxelKeyHash>;

class CoverageGrid {
public:
    explicit CoverageGrid(double voxel_size);

    VoxelKey key_of(const Vec3& p) const;
    Vec3 center_of(const VoxelKey& k) const;

    /// Marks each point's voxel observed. Idempotent per voxel.
    void add(const PointCloud& scan);
    /// Returns true when the voxel was not observed before.
    bool insert(const VoxelKey& key);

    double voxel_size() const { return voxel_size_; }
    const VoxelSet& observed() const { return observed_; }
    std::size_t observed_count() const { return observed_.size(); }

private:
    double voxel_size_;
    VoxelSet observed_;
};

CoverageGrid update_coverage(CoverageGrid grid, const PointCloud& scan);

/// Voxels the mesh surface passes through, found by dense barycentric sampling with the
/// same floor() keying as scan points.
VoxelSet surface_voxels(const SurfaceMesh& mesh, double voxel_size);

/// Observed ground-truth voxels over ground-truth voxels, restricted to voxels whose centers
/// lie in the region of interest. Throws EmptyRoi when no surface voxel falls in the region.
double coverage_fraction(const CoverageGrid& grid, const SurfaceMesh& ground_truth,
                         const Aabb& roi);

/// Incremental coverage for the simulation loop; precomputes the ground-truth voxels once.
class CoverageTracker {
public:
    CoverageTracker(const SurfaceMesh& ground_truth, const Aabb& roi, double voxel_size);

    void add(const PointCloud& scan);
    double fraction() const;
    const CoverageGrid& grid() const { return grid_; }

private:
    CoverageGrid grid_;
    VoxelSet target_;
    std::size_t hits_{0};
};

}  // namespace firstlook

#endif  // FIRSTLOOK_METRICS_HPP_
