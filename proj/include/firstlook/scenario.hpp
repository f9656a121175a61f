#ifndef FIRSTLOOK_SCENARIO_HPP_
#define FIRSTLOOK_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "firstlook/footprint.hpp"
#include "firstlook/mission.hpp"
#include "firstlook/view_planner.hpp"
#include "firstlook/world.hpp"

namespace firstlook {

struct RecedeDirective {
    Vec3 direction{Vec3::UnitX()};
    double distance{0.0};
};

struct WorldSpec {
    std::optional<SurfaceKind> kind;   // empty: load mesh_path
    SurfaceParams params;
    std::filesystem::path mesh_path;
    std::uint64_t seed{0};
    std::optional<RecedeDirective> recede;
};

struct RunSettings {
    std::size_t max_ticks{2000};
    std::uint64_t seed{1};
    std::filesystem::path output_dir{"firstlook-out"};
    std::size_t stall_ticks{25};
};

struct MetricsSettings {
    double voxel_size{1.0};
    std::optional<Aabb> roi;          // default: mesh bounds
    std::size_t reference_points{500000};
    std::size_t observed_points{200000};
};

struct Scenario {
    std::string name;
    WorldSpec world;
    LandmarkRoute route;
    CameraModel camera;
    PlannerConfig planner;
    LidarModel lidar;
    VehicleModel vehicle;
    Pose start;
    MissionSettings mission;
    RunSettings run;
    MetricsSettings metrics;
};

/// Parses and validates a YAML scenario. Relative paths resolve against the file's directory.
/// Throws ParseError (malformed text or unknown key, with line), ValidationError (which
/// invariant), or IoError.
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir = {});

/// Builds the simulated world: generator or mesh file, then the optional recession.
SurfaceMesh build_world(const Scenario& scenario);

/// Complete normalized scenario as YAML, defaults filled in. Re-parses to the same scenario.
std::string describe_scenario(const Scenario& scenario);

}  // namespace firstlook

#endif  // FIRSTLOOK_SCENARIO_HPP_
