#ifndef FIRSTLOOK_MISSION_HPP_
#define FIRSTLOOK_MISSION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "firstlook/geometry.hpp"
#include "firstlook/view_planner.hpp"

namespace firstlook {

/// Operator-authored advisory waypoints. They steer sweep direction and progress but are
/// never tracked literally while inspecting.
struct LandmarkRoute {
    std::vector<Vec3> landmarks;
    double locality_radius{1.0};

    void validate() const;
};

enum class MissionPhase { Transit, Inspect, ReturnHome, Done };

std::string to_string(MissionPhase phase);
std::optional<MissionPhase> mission_phase_from_string(const std::string& s);

enum class SweepMode { SinglePass, Lawnmower };

struct SweepConfig {
    SweepMode mode{SweepMode::SinglePass};
    int rows{1};                   // lawnmower rows, including the first
    double boundary_margin{0.0};   // [m] past the first/last landmark before switching
    int vertical_sign{1};          // +1 stacks rows upward along nu_z, -1 downward
};

struct MissionSettings {
    SweepConfig sweep;
    double transit_lookahead{10.0};  // [m] carrot distance toward the first landmark
    double home_tolerance{0.5};      // [m] arrival radius at the start pose
};

struct MissionContext {
    MissionPhase phase{MissionPhase::Transit};
    std::size_t active_landmark{0};
    int sweep_sign{1};
    Pose start_pose;
    StepMode step_mode{StepMode::HorizontalStep};  // mode issued on the previous tick
    int row{0};
    int vertical_switches{0};
};

MissionContext start_mission(const Pose& start_pose);

/// Captures landmarks whose locality contains the position, possibly several at once.
///
/// During Transit the locality is a sphere around landmark 0. While inspecting, the vehicle
/// keeps its standoff from the current surface rather than from the authored route, so the
/// locality is measured along the lateral axis nu_y only. Without a frame nothing is captured.
/// Capturing the last landmark moves the phase to ReturnHome unless terminate_on_last is false,
/// in which case the index stays on the last landmark.
MissionContext advance_landmarks(MissionContext ctx, const Vec3& position,
                                 const LandmarkRoute& route,
                                 const std::optional<EgoFrame>& frame = std::nullopt,
                                 bool terminate_on_last = true);

/// Signed progress of position along the horizontal route axis (first -> last landmark),
/// measured from the first landmark.
double route_progress(const Vec3& position, const LandmarkRoute& route);

/// Step mode and lateral direction for an Inspect tick. Pure; see apply_step.
StepCommand select_step(const MissionContext& ctx, const Pose& pose, const EgoFrame& frame,
                        const LandmarkRoute& route, const SweepConfig& sweep);

/// Records the command issued this tick (vertical switch reverses the sweep).
MissionContext apply_step(MissionContext ctx, const StepCommand& command);

/// Phase bookkeeping after planning: landmark capture, lawnmower completion, arrival home.
MissionContext update_mission(MissionContext ctx, const Pose& pose,
                              const std::optional<EgoFrame>& frame, const LandmarkRoute& route,
                              const MissionSettings& settings);

/// Reference handed to the vehicle for the current phase.
Pose mission_reference(const MissionContext& ctx, const Pose& pose,
                       const std::optional<Pose>& planner_reference, const LandmarkRoute& route,
                       const MissionSettings& settings);

}  // namespace firstlook

#endif  // FIRSTLOOK_MISSION_HPP_
