#ifndef FIRSTLOOK_VIEW_PLANNER_HPP_
#define FIRSTLOOK_VIEW_PLANNER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "firstlook/footprint.hpp"
#include "firstlook/geometry.hpp"
#include "firstlook/kd_index.hpp"

namespace firstlook {

struct PlannerConfig {
    double d_view{20.0};                 // desired standoff to the nearest surface point [m]
    int horizon_n{5};                    // number of predicted view-poses
    double degeneracy_cos_limit{0.999};  // reject view directions this close to vertical
    double step_scale_limit{40.0};       // max translation per step [m]

    void validate() const;
};

enum class StepMode { HorizontalStep, VerticalSwitch, Hold };

std::string to_string(StepMode mode);
std::optional<StepMode> step_mode_from_string(const std::string& s);

/// What the mission asks of one planning horizon.
///
/// HorizontalStep: lateral step with d_vov forced to zero.
/// VerticalSwitch: first step is vertical only (d_hov forced to zero); the rest of the
///   horizon continues laterally with lateral_sign negated.
/// Hold: standoff regulation only.
struct StepCommand {
    StepMode mode{StepMode::HorizontalStep};
    int lateral_sign{1};
    int vertical_sign{1};
};

struct PlanStep {
    Pose pose;
    Vec3 p_nn{Vec3::Zero()};  // nearest surface point re-queried at pose
    double range{0.0};        // |p_nn - pose|
    double d_insp{0.0};
    double d_hov_applied{0.0};
    double d_vov_applied{0.0};
    StepMode mode{StepMode::HorizontalStep};
};

/// Viewing frame from the vehicle position toward the nearest surface point.
/// nu_y and nu_z are normalized so lateral and vertical steps are metric.
/// Throws CoincidentPoints or DegenerateViewDirection.
EgoFrame compute_frame(const Vec3& position, const Vec3& p_nn, const Vec3& up = Vec3::UnitZ(),
                       double cos_limit = 0.999);

/// One view-pose update: translate in the frame at odom, then re-query the nearest
/// surface point at the new position and face it (yaw only).
PlanStep next_view_pose(const Pose& odom, const Vec3& p_nn, double d_insp, double d_hov,
                        double d_vov, const KdIndex& index, const PlannerConfig& config);

struct PredictedPath {
    std::vector<PlanStep> steps;
    std::optional<std::string> warning;  // set when the horizon was cut short
};

/// Recursive horizon prediction on a single cloud snapshot: every predicted pose is
/// treated as the next localization and the step sizes are recomputed from its own range.
PredictedPath predict_path(const Pose& odom, const KdIndex& index, const PlannerConfig& config,
                           const CameraModel& camera, const StepCommand& command);
PredictedPath predict_path(const Pose& odom, const PointCloud& cloud, const PlannerConfig& config,
                           const CameraModel& camera, const StepCommand& command);

}  // namespace firstlook

#endif  // FIRSTLOOK_VIEW_PLANNER_HPP_
