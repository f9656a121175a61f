#ifndef FIRSTLOOK_KD_INDEX_HPP_
#define FIRSTLOOK_KD_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "firstlook/geometry.hpp"

namespace firstlook {

struct Neighbor {
    Vec3 point;
    double distance{0.0};
    std::size_t point_id{0};
};

/// Balanced kd-tree over a snapshot of a point cloud.
///
/// Queries are exact: the answer always equals an exhaustive scan using
/// squared_distance(), with equidistant candidates resolved to the lowest
/// point index. The index keeps its own copy of the points, so the source
/// cloud may go out of scope after construction.
class KdIndex {
public:
    explicit KdIndex(const PointCloud& cloud);
    explicit KdIndex(std::vector<Vec3> points);

    Neighbor nearest(const Vec3& query) const;

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }

private:
    struct Node {
        // Leaves own [begin, end) of order_; inner nodes split on axis at value.
        std::uint32_t begin{0};
        std::uint32_t end{0};
        std::int32_t left{-1};
        std::int32_t right{-1};
        double split{0.0};
        int axis{-1};
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end, int depth);
    void search(std::int32_t node, const Vec3& q, double& best_d2, std::size_t& best_id) const;

    std::vector<Vec3> points_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

KdIndex build_index(const PointCloud& cloud);

inline Neighbor nearest_neighbor(const KdIndex& index, const Vec3& query) {
    return index.nearest(query);
}

}  // namespace firstlook

#endif  // FIRSTLOOK_KD_INDEX_HPP_
