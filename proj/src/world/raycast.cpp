#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "firstlook/error.hpp"
#include "firstlook/world.hpp"

namespace firstlook {

namespace {

constexpr double kMinHitDistance = 1e-9;
constexpr std::uint32_t kLeafTriangles = 4;
constexpr double kBoxPad = 1e-7;

// Slab test; returns the entry distance or nullopt when the ray misses within [0, t_max].
std::optional<double> ray_box(const Aabb& box, const Vec3& o, const Vec3& d, double t_max) {
    double t0 = 0.0;
    double t1 = t_max;
    for (int i = 0; i < 3; ++i) {
        if (d[i] == 0.0) {
            if (o[i] < box.min[i] || o[i] > box.max[i]) {
                return std::nullopt;
            }
            continue;
        }
        const double inv = 1.0 / d[i];
        double near = (box.min[i] - o[i]) * inv;
        double far = (box.max[i] - o[i]) * inv;
        if (near > far) {
            std::swap(near, far);
        }
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1) {
            return std::nullopt;
        }
    }
    return t0;
}

bool better(double t, std::size_t tri, const std::optional<RayHit>& best) {
    return !best || t < best->t || (t == best->t && tri < best->triangle);
}

}  // namespace

std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 p = dir.cross(e2);
    const double det = e1.dot(p);
    if (std::abs(det) < 1e-15) {
        return std::nullopt;  // parallel to the triangle plane
    }
    const double inv_det = 1.0 / det;
    const Vec3 s = origin - a;
    const double u = s.dot(p) * inv_det;
    if (u < 0.0 || u > 1.0) {
        return std::nullopt;
    }
    const Vec3 q = s.cross(e1);
    const double v = dir.dot(q) * inv_det;
    if (v < 0.0 || u + v > 1.0) {
        return std::nullopt;
    }
    const double t = e2.dot(q) * inv_det;
    if (t <= kMinHitDistance) {
        return std::nullopt;
    }
    return t;
}

std::optional<RayHit> raycast_brute_force(const SurfaceMesh& mesh, const Vec3& origin,
                                          const Vec3& dir, double max_range) {
    std::optional<RayHit> best;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto [a, b, c] = mesh.corners(i);
        const auto t = intersect_triangle(origin, dir, a, b, c);
        if (t && *t <= max_range && better(*t, i, best)) {
            best = RayHit{*t, i};
        }
    }
    return best;
}

MeshRaycaster::MeshRaycaster(SurfaceMesh mesh) : mesh_(std::move(mesh)) {
    if (mesh_.empty()) {
        throw Error(ErrorCode::InvalidParams, "cannot ray cast against an empty mesh");
    }
    const auto n = static_cast<std::uint32_t>(mesh_.triangles.size());
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    centroids_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto [a, b, c] = mesh_.corners(i);
        centroids_.push_back((a + b + c) / 3.0);
    }
    nodes_.reserve(2 * n / kLeafTriangles + 1);
    build(0, n);
}

std::uint32_t MeshRaycaster::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    Aabb box{Vec3::Constant(std::numeric_limits<double>::infinity()),
             Vec3::Constant(-std::numeric_limits<double>::infinity())};
    Aabb cbox = box;
    for (std::uint32_t i = begin; i < end; ++i) {
        for (const auto& v : mesh_.corners(order_[i])) {
            box.min = box.min.cwiseMin(v);
            box.max = box.max.cwiseMax(v);
        }
        cbox.min = cbox.min.cwiseMin(centroids_[order_[i]]);
        cbox.max = cbox.max.cwiseMax(centroids_[order_[i]]);
    }
    // Padding keeps flat boxes (planar walls) robust against slab rounding.
    box.min.array() -= kBoxPad * (1.0 + box.min.cwiseAbs().array());
    box.max.array() += kBoxPad * (1.0 + box.max.cwiseAbs().array());
    nodes_[id].box = box;

    int axis = 0;
    const Vec3 extent = cbox.max - cbox.min;
    extent.maxCoeff(&axis);
    if (end - begin <= kLeafTriangles || extent[axis] <= 0.0) {
        nodes_[id].begin = begin;
        nodes_[id].count = end - begin;
        return id;
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return centroids_[a][axis] < centroids_[b][axis];
                     });
    build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[id].right = right;
    return id;
}

std::optional<RayHit> MeshRaycaster::cast(const Vec3& origin, const Vec3& dir,
                                          double max_range) const {
    std::optional<RayHit> best;
    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        const double limit = best ? best->t : max_range;
        const auto entry = ray_box(node.box, origin, dir, limit);
        if (!entry) {
            continue;
        }
        if (node.count > 0) {
            for (std::uint32_t i = node.begin; i < node.begin + node.count; ++i) {
                const std::uint32_t tri = order_[i];
                const auto [a, b, c] = mesh_.corners(tri);
                const auto t = intersect_triangle(origin, dir, a, b, c);
                if (t && *t <= max_range && better(*t, tri, best)) {
                    best = RayHit{*t, tri};
                }
            }
            continue;
        }
        const auto self = static_cast<std::uint32_t>(&node - nodes_.data());
        stack[top++] = node.right;
        stack[top++] = self + 1;
    }
    return best;
}

}  // namespace firstlook
