#include "firstlook/mission.hpp"

#include <cmath>

#include "firstlook/error.hpp"

namespace firstlook {

void LandmarkRoute::validate() const {
    if (landmarks.empty()) {
        throw Error(ErrorCode::ValidationError, "route needs at least one landmark");
    }
    for (const auto& l : landmarks) {
        if (!is_finite(l)) {
            throw Error(ErrorCode::ValidationError, "landmark coordinates must be finite");
        }
    }
    if (!(locality_radius > 0.0)) {
        throw Error(ErrorCode::ValidationError, "locality_radius must be > 0");
    }
}

std::string to_string(MissionPhase phase) {
    switch (phase) {
        case MissionPhase::Transit: return "transit";
        case MissionPhase::Inspect: return "inspect";
        case MissionPhase::ReturnHome: return "return-home";
        case MissionPhase::Done: return "done";
    }
    return "done";
}

std::optional<MissionPhase> mission_phase_from_string(const std::string& s) {
    if (s == "transit") return MissionPhase::Transit;
    if (s == "inspect") return MissionPhase::Inspect;
    if (s == "return-home") return MissionPhase::ReturnHome;
    if (s == "done") return MissionPhase::Done;
    return std::nullopt;
}

MissionContext start_mission(const Pose& start_pose) {
    MissionContext ctx;
    ctx.start_pose = start_pose;
    return ctx;
}

namespace {

int sign_or_positive(double v) { return v < 0.0 ? -1 : 1; }

Vec3 route_axis(const LandmarkRoute& route) {
    Vec3 d = route.landmarks.back() - route.landmarks.front();
    d.z() = 0.0;
    const double n = d.norm();
    return n > 0.0 ? Vec3(d / n) : Vec3::UnitX();
}

bool past_row_end(const MissionContext& ctx, const Vec3& position, const LandmarkRoute& route,
                  const SweepConfig& sweep) {
    const double s = route_progress(position, route);
    if (ctx.sweep_sign > 0) {
        const double end = route_progress(route.landmarks.back(), route);
        return s >= end + sweep.boundary_margin;
    }
    return s <= -sweep.boundary_margin;
}

}  // namespace

double route_progress(const Vec3& position, const LandmarkRoute& route) {
    return (position - route.landmarks.front()).dot(route_axis(route));
}

MissionContext advance_landmarks(MissionContext ctx, const Vec3& position,
                                 const LandmarkRoute& route, const std::optional<EgoFrame>& frame,
                                 bool terminate_on_last) {
    if (ctx.phase != MissionPhase::Transit && ctx.phase != MissionPhase::Inspect) {
        return ctx;
    }
    const bool transit = ctx.phase == MissionPhase::Transit;
    if (!transit && !frame) {
        return ctx;
    }
    auto within = [&](const Vec3& landmark) {
        const Vec3 delta = landmark - position;
        const double d = transit ? delta.norm() : std::abs(delta.dot(frame->nu_y));
        return d <= route.locality_radius;
    };
    while (ctx.active_landmark < route.landmarks.size() &&
           within(route.landmarks[ctx.active_landmark])) {
        if (ctx.active_landmark + 1 == route.landmarks.size()) {
            if (!terminate_on_last) {
                if (ctx.phase == MissionPhase::Transit) {
                    ctx.phase = MissionPhase::Inspect;
                }
                break;
            }
            ctx.active_landmark = route.landmarks.size();
            ctx.phase = MissionPhase::ReturnHome;
            break;
        }
        ++ctx.active_landmark;
        if (ctx.phase == MissionPhase::Transit) {
            ctx.phase = MissionPhase::Inspect;
        }
    }
    return ctx;
}

StepCommand select_step(const MissionContext& ctx, const Pose& pose, const EgoFrame& frame,
                        const LandmarkRoute& route, const SweepConfig& sweep) {
    StepCommand cmd;
    cmd.vertical_sign = sweep.vertical_sign >= 0 ? 1 : -1;
    if (sweep.mode == SweepMode::SinglePass) {
        const std::size_t idx = std::min(ctx.active_landmark, route.landmarks.size() - 1);
        cmd.mode = StepMode::HorizontalStep;
        cmd.lateral_sign =
            sign_or_positive((route.landmarks[idx] - pose.position()).dot(frame.nu_y));
        return cmd;
    }

    // Lawnmower: sweep_sign is relative to the route axis; map it onto nu_y.
    const int axis_sign = sign_or_positive(route_axis(route).dot(frame.nu_y));
    cmd.lateral_sign = ctx.sweep_sign * axis_sign;
    if (ctx.step_mode == StepMode::VerticalSwitch) {
        cmd.mode = StepMode::HorizontalStep;
    } else if (past_row_end(ctx, pose.position(), route, sweep)) {
        cmd.mode = ctx.row + 1 < sweep.rows ? StepMode::VerticalSwitch : StepMode::Hold;
    } else {
        cmd.mode = StepMode::HorizontalStep;
    }
    return cmd;
}

MissionContext apply_step(MissionContext ctx, const StepCommand& command) {
    ctx.step_mode = command.mode;
    if (command.mode == StepMode::VerticalSwitch) {
        ctx.sweep_sign = -ctx.sweep_sign;
        ++ctx.row;
        ++ctx.vertical_switches;
    }
    return ctx;
}

MissionContext update_mission(MissionContext ctx, const Pose& pose,
                              const std::optional<EgoFrame>& frame, const LandmarkRoute& route,
                              const MissionSettings& settings) {
    const bool lawnmower = settings.sweep.mode == SweepMode::Lawnmower;
    switch (ctx.phase) {
        case MissionPhase::Transit:
            ctx = advance_landmarks(ctx, pose.position(), route, frame, !lawnmower);
            break;
        case MissionPhase::Inspect:
            ctx = advance_landmarks(ctx, pose.position(), route, frame, !lawnmower);
            if (lawnmower && ctx.phase == MissionPhase::Inspect &&
                ctx.row + 1 >= settings.sweep.rows && ctx.step_mode != StepMode::VerticalSwitch &&
                past_row_end(ctx, pose.position(), route, settings.sweep)) {
                ctx.active_landmark = route.landmarks.size();
                ctx.phase = MissionPhase::ReturnHome;
            }
            break;
        case MissionPhase::ReturnHome:
            if ((pose.position() - ctx.start_pose.position()).norm() <= settings.home_tolerance) {
                ctx.phase = MissionPhase::Done;
            }
            break;
        case MissionPhase::Done:
            break;
    }
    return ctx;
}

Pose mission_reference(const MissionContext& ctx, const Pose& pose,
                       const std::optional<Pose>& planner_reference, const LandmarkRoute& route,
                       const MissionSettings& settings) {
    switch (ctx.phase) {
        case MissionPhase::Transit: {
            const Vec3 delta = route.landmarks.front() - pose.position();
            const double dist = delta.norm();
            if (dist <= 0.0) {
                return pose;
            }
            const Vec3 target = pose.position() + delta * (std::min(settings.transit_lookahead, dist) / dist);
            const double horizontal = std::hypot(delta.x(), delta.y());
            const double yaw = horizontal > 1e-6 ? std::atan2(delta.y(), delta.x()) : pose.yaw();
            return Pose(target, yaw);
        }
        case MissionPhase::Inspect:
            return planner_reference.value_or(pose);
        case MissionPhase::ReturnHome:
            return ctx.start_pose;
        case MissionPhase::Done:
            return pose;
    }
    return pose;
}

}  // namespace firstlook
