#include "firstlook/kd_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "firstlook/error.hpp"

namespace firstlook {

namespace {
constexpr std::uint32_t kLeafSize = 8;
}

KdIndex::KdIndex(const PointCloud& cloud) : KdIndex(cloud.points) {}

KdIndex::KdIndex(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error(ErrorCode::EmptyCloud, "cannot build an index over an empty cloud");
    }
    if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidParams, "cloud too large for index");
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(order_.size()), 0);
}

std::int32_t KdIndex::build(std::uint32_t begin, std::uint32_t end, int depth) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize) {
        return id;
    }

    // Split along the widest extent of this node's points.
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (std::uint32_t i = begin; i < end; ++i) {
        lo = lo.cwiseMin(points_[order_[i]]);
        hi = hi.cwiseMax(points_[order_[i]]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    if (hi[axis] == lo[axis]) {
        return id;  // all coincident; keep as an oversized leaf
    }

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return points_[a][axis] < points_[b][axis];
                     });
    const double split = points_[order_[mid]][axis];

    const auto left = build(begin, mid, depth + 1);
    const auto right = build(mid, end, depth + 1);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

void KdIndex::search(std::int32_t node_id, const Vec3& q, double& best_d2,
                     std::size_t& best_id) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const std::uint32_t idx = order_[i];
            const double d2 = squared_distance(q, points_[idx]);
            if (d2 < best_d2 || (d2 == best_d2 && idx < best_id)) {
                best_d2 = d2;
                best_id = idx;
            }
        }
        return;
    }
    // Left subtree holds values <= split, right subtree values >= split.
    const double delta = q[node.axis] - node.split;
    const std::int32_t near = delta < 0.0 ? node.left : node.right;
    const std::int32_t far = delta < 0.0 ? node.right : node.left;
    search(near, q, best_d2, best_id);
    // Non-strict so that equidistant lower-index points across the plane are still visited.
    if (delta * delta <= best_d2) {
        search(far, q, best_d2, best_id);
    }
}

Neighbor KdIndex::nearest(const Vec3& query) const {
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_id = std::numeric_limits<std::size_t>::max();
    search(0, query, best_d2, best_id);
    return Neighbor{points_[best_id], std::sqrt(best_d2), best_id};
}

KdIndex build_index(const PointCloud& cloud) { return KdIndex(cloud); }

}  // namespace firstlook
