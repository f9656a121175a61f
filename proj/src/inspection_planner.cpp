#include "firstlook/inspection_planner.hpp"

#include "firstlook/error.hpp"

namespace firstlook {

InspectionPlanner::InspectionPlanner(PlannerConfig config, CameraModel camera)
    : config_(config), camera_(camera) {
    config_.validate();
    camera_.validate();
}

TickPlan InspectionPlanner::plan_tick(const Pose& odom, const PointCloud& cloud,
                                      const MissionContext& ctx, const LandmarkRoute& route,
                                      const MissionSettings& settings) {
    TickPlan plan;
    std::optional<KdIndex> index;
    if (!cloud.empty()) {
        index.emplace(cloud);
        plan.nn = index->nearest(odom.position());
        try {
            plan.frame = compute_frame(odom.position(), plan.nn->point, Vec3::UnitZ(),
                                       config_.degeneracy_cos_limit);
        } catch (const Error& e) {
            plan.diagnostic = e.what();
        }
    }

    if (ctx.phase != MissionPhase::Inspect) {
        plan.reference = mission_reference(ctx, odom, std::nullopt, route, settings);
        return plan;
    }

    auto hold = [&](const std::string& why) {
        plan.held = true;
        plan.diagnostic = why;
        plan.reference = last_reference_.value_or(odom);
        return plan;
    };
    if (!index) {
        return hold("empty LiDAR frame; holding previous reference");
    }
    if (!plan.frame) {
        return hold(plan.diagnostic + "; holding previous reference");
    }

    plan.command = select_step(ctx, odom, *plan.frame, route, settings.sweep);
    try {
        PredictedPath path = predict_path(odom, *index, config_, camera_, plan.command);
        plan.predicted = std::move(path.steps);
        if (path.warning) {
            plan.diagnostic = *path.warning;
        }
    } catch (const Error& e) {
        return hold(std::string(e.what()) + "; holding previous reference");
    }
    plan.planned = true;
    plan.reference = plan.predicted.front().pose;
    last_reference_ = plan.reference;
    return plan;
}

}  // namespace firstlook
