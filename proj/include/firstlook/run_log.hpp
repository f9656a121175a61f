#ifndef FIRSTLOOK_RUN_LOG_HPP_
#define FIRSTLOOK_RUN_LOG_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "firstlook/footprint.hpp"
#include "firstlook/geometry.hpp"
#include "firstlook/mission.hpp"
#include "firstlook/view_planner.hpp"

namespace firstlook {

struct PredictedPose {
    Pose pose;
    double range{0.0};
};

/// One simulation tick. phase/landmark are the values the tick planned with;
/// next_phase is the phase after mission bookkeeping (which picked the reference).
struct TickRecord {
    std::size_t tick{0};
    double time{0.0};
    MissionPhase phase{MissionPhase::Transit};
    MissionPhase next_phase{MissionPhase::Transit};
    std::size_t landmark{0};
    Pose odom;
    Pose reference;
    bool has_nn{false};
    Vec3 p_nn{Vec3::Zero()};
    double nn_range{0.0};
    StepMode mode{StepMode::Hold};
    int lateral_sign{1};
    double d_insp{0.0};
    double d_hov{0.0};
    double d_vov{0.0};
    bool planned{false};
    bool held{false};
    std::size_t scan_points{0};
    double coverage{0.0};
    std::vector<PredictedPose> predicted;
};

/// Run constants needed to recompute metrics from the log alone.
struct RunLogHeader {
    double d_view{20.0};
    CameraModel camera;
    double tick_dt{1.0};
    Pose start;
    std::size_t landmark_count{0};
};

struct RunLog {
    RunLogHeader header;
    std::vector<TickRecord> records;
};

/// CSV with "# key=value" header lines; doubles are written in shortest round-trip form
/// so read_run_log(write_run_log(log)) reproduces every value exactly.
void write_run_log(const RunLog& log, const std::filesystem::path& path);
RunLog read_run_log(const std::filesystem::path& path);

extern const char* const kRunLogColumns;

struct SummaryStats {
    std::size_t count{0};
    double mean{0.0};
    double median{0.0};
    double p95{0.0};
    double min{0.0};
    double max{0.0};
    double rms{0.0};
};

SummaryStats summarize(std::vector<double> values);

struct MetricsReport {
    std::size_t ticks{0};
    double duration_s{0.0};
    bool completed{false};
    std::string final_phase;
    std::size_t final_landmark{0};
    std::size_t landmark_count{0};
    std::size_t inspect_ticks{0};
    double d_view{0.0};
    double gamma_h{0.0};
    SummaryStats view_distance_error;   // |nn range - d_view| over Inspect ticks
    SummaryStats signed_range_error;    // nn range - d_view over Inspect ticks
    SummaryStats lateral_overlap;       // consecutive Inspect poses after a lateral step
    std::size_t vertical_switches{0};
    std::size_t held_ticks{0};
    double path_length_m{0.0};
    double coverage_fraction{0.0};
};

/// Aggregates a run log. Throws EmptyLog for a log without records.
MetricsReport run_report(const RunLog& log);

/// Pretty-printed JSON.
std::string report_to_json(const MetricsReport& report);

}  // namespace firstlook

#endif  // FIRSTLOOK_RUN_LOG_HPP_
