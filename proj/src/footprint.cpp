#include "firstlook/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firstlook/error.hpp"

namespace firstlook {

void CameraModel::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidCamera, msg); };
    if (!(alpha > 0.0 && alpha < kPi)) fail("alpha (horizontal fov) must be in (0, pi)");
    if (!(beta > 0.0 && beta < kPi)) fail("beta (vertical fov) must be in (0, pi)");
    if (!(gamma_h >= 0.0 && gamma_h <= 1.0)) fail("gamma_h must be in [0, 1]");
    if (!(gamma_v >= 0.0 && gamma_v <= 1.0)) fail("gamma_v must be in [0, 1]");
}

CameraModel CameraModel::from_degrees(double hfov_deg, double vfov_deg, double gamma_h,
                                      double gamma_v) {
    CameraModel c{deg2rad(hfov_deg), deg2rad(vfov_deg), gamma_h, gamma_v};
    c.validate();
    return c;
}

OverlapSteps overlap_steps(const CameraModel& camera, double range) {
    if (!std::isfinite(range) || range < 0.0) {
        throw Error(ErrorCode::InvalidRange, "range must be finite and non-negative");
    }
    // Written as 2 tan(a/2) r - 2 tan(a/2) r gamma in the original form; factored here.
    return {2.0 * std::tan(camera.alpha / 2.0) * range * (1.0 - camera.gamma_h),
            2.0 * std::tan(camera.beta / 2.0) * range * (1.0 - camera.gamma_v)};
}

double view_distance_deviation(const Vec3& p_nn, const Vec3& position, double d_view) {
    return (p_nn - position).norm() - d_view;
}

namespace {

bool is_orthonormal(const EgoFrame& f, double tol) {
    return std::abs(f.nu_x.norm() - 1.0) <= tol && std::abs(f.nu_y.norm() - 1.0) <= tol &&
           std::abs(f.nu_z.norm() - 1.0) <= tol && std::abs(f.nu_x.dot(f.nu_y)) <= tol &&
           std::abs(f.nu_x.dot(f.nu_z)) <= tol && std::abs(f.nu_y.dot(f.nu_z)) <= tol;
}

// Interval of rect b projected on axis u.
std::pair<double, double> project_interval(const FootprintRect& r, const Vec3& u) {
    const double c = r.center.dot(u);
    const double h = r.half_width * std::abs(r.axis_y.dot(u)) +
                     r.half_height * std::abs(r.axis_z.dot(u));
    return {c - h, c + h};
}

double overlap_along(const FootprintRect& a, const FootprintRect& b, const Vec3& axis,
                     double half_a, double half_b_own) {
    const double ca = a.center.dot(axis);
    const auto [b_lo, b_hi] = project_interval(b, axis);
    const double a_lo = ca - half_a;
    const double a_hi = ca + half_a;
    const double shared = std::min(a_hi, b_hi) - std::max(a_lo, b_lo);
    const double narrow = 2.0 * std::min(half_a, half_b_own);
    if (narrow <= 0.0) {
        // Zero-size footprints overlap fully only when they coincide.
        return (shared >= 0.0 && a.center.isApprox(b.center, 1e-12)) ? 1.0 : 0.0;
    }
    return std::clamp(shared / narrow, 0.0, 1.0);
}

}  // namespace

FootprintRect project_footprint(const Pose& pose, const EgoFrame& frame, double range,
                                const CameraModel& camera) {
    if (!is_orthonormal(frame, 1e-9)) {
        throw Error(ErrorCode::DegenerateFrame, "frame is not orthonormal within 1e-9");
    }
    if (!std::isfinite(range) || range < 0.0) {
        throw Error(ErrorCode::InvalidRange, "range must be finite and non-negative");
    }
    return FootprintRect{pose.position() + frame.nu_x * range,
                         std::tan(camera.alpha / 2.0) * range,
                         std::tan(camera.beta / 2.0) * range, frame.nu_y, frame.nu_z};
}

double lateral_overlap_fraction(const FootprintRect& a, const FootprintRect& b) {
    return overlap_along(a, b, a.axis_y, a.half_width, b.half_width);
}

double vertical_overlap_fraction(const FootprintRect& a, const FootprintRect& b) {
    return overlap_along(a, b, a.axis_z, a.half_height, b.half_height);
}

}  // namespace firstlook
