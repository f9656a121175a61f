#ifndef FIRSTLOOK_SIMULATION_HPP_
#define FIRSTLOOK_SIMULATION_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "firstlook/run_log.hpp"
#include "firstlook/scenario.hpp"

namespace firstlook {

enum class RunStatus { Done, TickBudget, Stalled };

std::string to_string(RunStatus status);

/// Process exit code for a run: 0 done, 2 aborted (tick budget or stall).
int exit_code(RunStatus status);

inline constexpr int kExitValidationError = 3;

struct MissionResult {
    RunLog log;
    MetricsReport report;
    RunStatus status{RunStatus::TickBudget};
    PointCloud observed;  // accumulated Inspect-phase scans (world frame)
    SurfaceMesh world;
};

/// Per-tick LiDAR seed derived from the run seed.
std::uint64_t tick_seed(std::uint64_t run_seed, std::size_t tick);

/// Headless mission: scan -> plan -> mission update -> vehicle -> log, until Done, the tick
/// budget runs out, or the vehicle has not moved for run.stall_ticks ticks.
MissionResult run_mission(const Scenario& scenario);

/// Writes run_log.csv, report.json, observed_cloud.ply, c2c.json, c2c_histogram.csv and
/// trajectory.svg into dir (created if needed).
void write_outputs(const Scenario& scenario, const MissionResult& result,
                   const std::filesystem::path& dir);

/// Recomputes the metrics report from a run log file without re-simulating.
MetricsReport replay(const std::filesystem::path& log_path);

/// Top-down and profile views of planned vs flown path with the landmarks.
void write_trajectory_svg(const RunLog& log, const LandmarkRoute& route,
                          const std::filesystem::path& path);

}  // namespace firstlook

#endif  // FIRSTLOOK_SIMULATION_HPP_
