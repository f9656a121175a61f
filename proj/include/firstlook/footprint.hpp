#ifndef FIRSTLOOK_FOOTPRINT_HPP_
#define FIRSTLOOK_FOOTPRINT_HPP_

#include "firstlook/geometry.hpp"

namespace firstlook {

/// Pinhole camera footprint parameters: fields of view in radians, overlaps as fractions.
struct CameraModel {
    double alpha{0.0};    // horizontal field of view
    double beta{0.0};     // vertical field of view
    double gamma_h{0.0};  // desired horizontal overlap between consecutive views
    double gamma_v{0.0};  // desired vertical overlap

    /// Throws InvalidCamera unless 0 < fov < pi and 0 <= overlap <= 1.
    void validate() const;

    static CameraModel from_degrees(double hfov_deg, double vfov_deg, double gamma_h,
                                    double gamma_v);
};

struct OverlapSteps {
    double d_hov{0.0};
    double d_vov{0.0};
};

/// Lateral and vertical translation between consecutive views that leaves exactly the
/// desired overlap at the given range: 2 tan(fov/2) * range * (1 - overlap).
OverlapSteps overlap_steps(const CameraModel& camera, double range);

/// Signed standoff error: positive when the surface is farther than d_view.
double view_distance_deviation(const Vec3& p_nn, const Vec3& position, double d_view);

struct FootprintRect {
    Vec3 center{Vec3::Zero()};
    double half_width{0.0};
    double half_height{0.0};
    Vec3 axis_y{Vec3::UnitY()};  // spans the width
    Vec3 axis_z{Vec3::UnitZ()};  // spans the height
};

/// Flat image footprint at the given range along the viewing axis.
/// Throws DegenerateFrame if the frame is not orthonormal within 1e-9.
FootprintRect project_footprint(const Pose& pose, const EgoFrame& frame, double range,
                                const CameraModel& camera);

/// Shared width along a's lateral axis over the narrower footprint width, in [0, 1].
/// b is projected onto a's axes when the two are not coplanar.
double lateral_overlap_fraction(const FootprintRect& a, const FootprintRect& b);

/// Vertical counterpart of lateral_overlap_fraction.
double vertical_overlap_fraction(const FootprintRect& a, const FootprintRect& b);

}  // namespace firstlook

#endif  // FIRSTLOOK_FOOTPRINT_HPP_
