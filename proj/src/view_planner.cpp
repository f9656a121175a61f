#include "firstlook/view_planner.hpp"

#include <cmath>

#include "firstlook/error.hpp"

namespace firstlook {

void PlannerConfig::validate() const {
    if (!(d_view > 0.0) || !std::isfinite(d_view)) {
        throw Error(ErrorCode::ValidationError, "d_view must be > 0");
    }
    if (horizon_n < 1) {
        throw Error(ErrorCode::ValidationError, "horizon_n must be >= 1");
    }
    if (!(degeneracy_cos_limit > 0.0 && degeneracy_cos_limit < 1.0)) {
        throw Error(ErrorCode::ValidationError, "degeneracy_cos_limit must be in (0, 1)");
    }
    if (!(step_scale_limit > 0.0)) {
        throw Error(ErrorCode::ValidationError, "step_scale_limit must be > 0");
    }
}

std::string to_string(StepMode mode) {
    switch (mode) {
        case StepMode::HorizontalStep: return "horizontal";
        case StepMode::VerticalSwitch: return "vertical-switch";
        case StepMode::Hold: return "hold";
    }
    return "hold";
}

std::optional<StepMode> step_mode_from_string(const std::string& s) {
    if (s == "horizontal") return StepMode::HorizontalStep;
    if (s == "vertical-switch") return StepMode::VerticalSwitch;
    if (s == "hold") return StepMode::Hold;
    return std::nullopt;
}

EgoFrame compute_frame(const Vec3& position, const Vec3& p_nn, const Vec3& up,
                       double cos_limit) {
    const Vec3 view = p_nn - position;
    const double range = view.norm();
    if (!(range > 0.0)) {
        throw Error(ErrorCode::CoincidentPoints, "nearest point coincides with the position");
    }
    EgoFrame f;
    f.nu_x = view / range;
    if (std::abs(f.nu_x.dot(up)) >= cos_limit) {
        throw Error(ErrorCode::DegenerateViewDirection,
                    "view direction is (nearly) parallel to the up vector");
    }
    f.nu_y = up.cross(f.nu_x).normalized();
    f.nu_z = f.nu_x.cross(f.nu_y).normalized();
    return f;
}

PlanStep next_view_pose(const Pose& odom, const Vec3& p_nn, double d_insp, double d_hov,
                        double d_vov, const KdIndex& index, const PlannerConfig& config) {
    const EgoFrame frame =
        compute_frame(odom.position(), p_nn, Vec3::UnitZ(), config.degeneracy_cos_limit);
    if (Vec3(d_insp, d_hov, d_vov).norm() > config.step_scale_limit) {
        throw Error(ErrorCode::StepTooLarge, "step exceeds step_scale_limit");
    }
    const Vec3 position = odom.position() + frame.nu_x * d_insp + frame.nu_y * d_hov +
                          frame.nu_z * d_vov;

    // Re-evaluate the nearest surface point at the new position for the yaw reference.
    const Neighbor nn = index.nearest(position);
    const EgoFrame next =
        compute_frame(position, nn.point, Vec3::UnitZ(), config.degeneracy_cos_limit);

    PlanStep step;
    step.pose = Pose(position, std::atan2(next.nu_x.y(), next.nu_x.x()));
    step.p_nn = nn.point;
    step.range = nn.distance;
    step.d_insp = d_insp;
    step.d_hov_applied = d_hov;
    step.d_vov_applied = d_vov;
    return step;
}

PredictedPath predict_path(const Pose& odom, const KdIndex& index, const PlannerConfig& config,
                           const CameraModel& camera, const StepCommand& command) {
    PredictedPath path;
    path.steps.reserve(static_cast<std::size_t>(config.horizon_n));
    Pose current = odom;
    for (int k = 0; k < config.horizon_n; ++k) {
        StepMode mode = command.mode;
        int lateral_sign = command.lateral_sign;
        if (command.mode == StepMode::VerticalSwitch && k > 0) {
            mode = StepMode::HorizontalStep;
            lateral_sign = -command.lateral_sign;
        }
        try {
            const Neighbor nn = index.nearest(current.position());
            const double d_insp =
                view_distance_deviation(nn.point, current.position(), config.d_view);
            const OverlapSteps steps = overlap_steps(camera, nn.distance);
            double d_hov = 0.0;
            double d_vov = 0.0;
            if (mode == StepMode::HorizontalStep) {
                d_hov = lateral_sign >= 0 ? steps.d_hov : -steps.d_hov;
            } else if (mode == StepMode::VerticalSwitch) {
                d_vov = command.vertical_sign >= 0 ? steps.d_vov : -steps.d_vov;
            }
            PlanStep step = next_view_pose(current, nn.point, d_insp, d_hov, d_vov, index, config);
            step.mode = mode;
            current = step.pose;
            path.steps.push_back(step);
        } catch (const Error& e) {
            if (k == 0) {
                throw;
            }
            path.warning = "prediction truncated at step " + std::to_string(k + 1) + ": " +
                           e.what();
            break;
        }
    }
    return path;
}

PredictedPath predict_path(const Pose& odom, const PointCloud& cloud, const PlannerConfig& config,
                           const CameraModel& camera, const StepCommand& command) {
    if (cloud.empty()) {
        throw Error(ErrorCode::EmptyCloud, "cannot plan on an empty cloud");
    }
    return predict_path(odom, KdIndex(cloud), config, camera, command);
}

}  // namespace firstlook
