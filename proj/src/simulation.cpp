#include "firstlook/simulation.hpp"

#include <json.hpp>

#include "firstlook/cloud_io.hpp"
#include "firstlook/error.hpp"
#include "firstlook/inspection_planner.hpp"
#include "firstlook/metrics.hpp"
#include "text_io.hpp"

namespace firstlook {

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Done: return "done";
        case RunStatus::TickBudget: return "tick-budget";
        case RunStatus::Stalled: return "stalled";
    }
    return "stalled";
}

int exit_code(RunStatus status) { return status == RunStatus::Done ? 0 : 2; }

std::uint64_t tick_seed(std::uint64_t run_seed, std::size_t tick) {
    // splitmix64 finalizer
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(tick) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

MissionResult run_mission(const Scenario& s) {
    MissionResult result;
    result.world = build_world(s);
    const MeshRaycaster raycaster(result.world);

    Aabb roi = s.metrics.roi.value_or(bounding_box(result.world.vertices));
    if (!s.metrics.roi) {
        roi.min.array() -= s.metrics.voxel_size;
        roi.max.array() += s.metrics.voxel_size;
    }
    CoverageTracker coverage(result.world, roi, s.metrics.voxel_size);

    InspectionPlanner planner(s.planner, s.camera);
    MissionContext ctx = start_mission(s.start);
    Pose odom = s.start;

    RunLog& log = result.log;
    log.header.d_view = s.planner.d_view;
    log.header.camera = s.camera;
    log.header.tick_dt = s.vehicle.tick_dt;
    log.header.start = s.start;
    log.header.landmark_count = s.route.landmarks.size();

    std::size_t still_ticks = 0;
    result.status = RunStatus::TickBudget;
    for (std::size_t tick = 0; tick < s.run.max_ticks; ++tick) {
        TickRecord rec;
        rec.tick = tick;
        rec.time = static_cast<double>(tick) * s.vehicle.tick_dt;
        rec.phase = ctx.phase;
        rec.landmark = ctx.active_landmark;
        rec.odom = odom;

        LidarModel lidar = s.lidar;
        lidar.seed = tick_seed(s.run.seed, tick);
        const PointCloud cloud = scan(raycaster, odom, lidar);
        rec.scan_points = cloud.size();

        TickPlan plan = planner.plan_tick(odom, cloud, ctx, s.route, s.mission);
        if (ctx.phase == MissionPhase::Inspect) {
            coverage.add(cloud);
            result.observed.points.insert(result.observed.points.end(), cloud.points.begin(),
                                          cloud.points.end());
            if (plan.planned) {
                ctx = apply_step(ctx, plan.command);
            }
        }
        ctx = update_mission(ctx, odom, plan.frame, s.route, s.mission);
        const std::optional<Pose> planned =
            plan.planned || plan.held ? std::optional<Pose>(plan.reference) : std::nullopt;
        const Pose reference = mission_reference(ctx, odom, planned, s.route, s.mission);

        rec.next_phase = ctx.phase;
        rec.reference = reference;
        if (plan.nn) {
            rec.has_nn = true;
            rec.p_nn = plan.nn->point;
            rec.nn_range = plan.nn->distance;
        }
        rec.planned = plan.planned;
        rec.held = plan.held;
        if (plan.planned) {
            rec.mode = plan.command.mode;
            rec.lateral_sign = plan.command.lateral_sign;
            const PlanStep& first = plan.predicted.front();
            rec.d_insp = first.d_insp;
            rec.d_hov = first.d_hov_applied;
            rec.d_vov = first.d_vov_applied;
            for (const auto& step : plan.predicted) {
                rec.predicted.push_back({step.pose, step.range});
            }
        }
        rec.coverage = coverage.fraction();
        log.records.push_back(std::move(rec));

        if (ctx.phase == MissionPhase::Done) {
            result.status = RunStatus::Done;
            break;
        }
        const Pose next = vehicle_step(odom, reference, s.vehicle);
        still_ticks = (next.position() - odom.position()).norm() < 1e-6 ? still_ticks + 1 : 0;
        odom = next;
        if (still_ticks >= s.run.stall_ticks) {
            result.status = RunStatus::Stalled;
            break;
        }
    }
    result.observed.frame = FrameId::World;
    result.report = run_report(log);
    return result;
}

void write_outputs(const Scenario& s, const MissionResult& result,
                   const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string());
    }
    write_run_log(result.log, dir / "run_log.csv");
    {
        auto out = detail::open_for_write(dir / "report.json");
        out << report_to_json(result.report);
    }
    const PointCloud observed = result.observed.empty()
                                    ? result.observed
                                    : downsample(result.observed, s.metrics.observed_points,
                                                 s.run.seed);
    save_cloud(observed, dir / "observed_cloud.ply", CloudFormat::PlyAscii);

    if (!observed.empty()) {
        const PointCloud reference =
            sample_surface(result.world, s.metrics.reference_points, s.run.seed);
        const CloudComparison c2c = cloud_to_cloud(observed, reference);
        nlohmann::ordered_json j;
        j["measured_points"] = c2c.count;
        j["reference_points"] = reference.size();
        j["mean"] = c2c.mean;
        j["max"] = c2c.max;
        j["p98"] = c2c.p98;
        j["trimmed_mean_98"] = c2c.trimmed_mean_98;
        j["histogram_bin_width"] = c2c.histogram.bin_width;
        j["histogram"] = c2c.histogram.counts;
        j["histogram_overflow"] = c2c.histogram.overflow;
        auto out = detail::open_for_write(dir / "c2c.json");
        out << j.dump(2) << "\n";
        write_histogram_csv(c2c.histogram, dir / "c2c_histogram.csv");
    }
    write_trajectory_svg(result.log, s.route, dir / "trajectory.svg");
}

MetricsReport replay(const std::filesystem::path& log_path) {
    return run_report(read_run_log(log_path));
}

}  // namespace firstlook
