#ifndef FIRSTLOOK_INSPECTION_PLANNER_HPP_
#define FIRSTLOOK_INSPECTION_PLANNER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "firstlook/footprint.hpp"
#include "firstlook/kd_index.hpp"
#include "firstlook/mission.hpp"
#include "firstlook/view_planner.hpp"

namespace firstlook {

struct TickPlan {
    Pose reference;
    std::vector<PlanStep> predicted;
    std::optional<Neighbor> nn;      // nearest surface point at the odometry position
    std::optional<EgoFrame> frame;   // viewing frame at the odometry position
    StepCommand command;
    bool planned{false};             // true when the view planner produced the reference
    bool held{false};                // previous reference re-issued
    std::string diagnostic;
};

/// Online planner state: one instance per mission.
class InspectionPlanner {
public:
    InspectionPlanner(PlannerConfig config, CameraModel camera);

    /// One planning tick on the current LiDAR frame. Outside Inspect the reference comes
    /// from the mission executive. Empty frames and degenerate geometry hold the last
    /// reference and report a diagnostic instead of failing.
    TickPlan plan_tick(const Pose& odom, const PointCloud& cloud, const MissionContext& ctx,
                       const LandmarkRoute& route, const MissionSettings& settings);

    const PlannerConfig& config() const { return config_; }
    const CameraModel& camera() const { return camera_; }

private:
    PlannerConfig config_;
    CameraModel camera_;
    std::optional<Pose> last_reference_;
};

}  // namespace firstlook

#endif  // FIRSTLOOK_INSPECTION_PLANNER_HPP_
