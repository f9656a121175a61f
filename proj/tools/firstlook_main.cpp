// firstlook: headless runner for surface-adaptive inspection missions.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "firstlook/error.hpp"
#include "firstlook/scenario.hpp"
#include "firstlook/simulation.hpp"
#include "firstlook/world.hpp"

namespace fl = firstlook;

namespace {

int report_error(const fl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
        case fl::ErrorCode::ParseError:
        case fl::ErrorCode::ValidationError:
        case fl::ErrorCode::InvalidParams:
        case fl::ErrorCode::InvalidCamera:
            return fl::kExitValidationError;
        default:
            return 1;
    }
}

std::vector<std::vector<double>> read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw fl::Error(fl::ErrorCode::IoError, "cannot open grid " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void apply_param(fl::SurfaceParams& p, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw fl::Error(fl::ErrorCode::InvalidParams, "expected key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    double value = 0.0;
    try {
        value = std::stod(assignment.substr(eq + 1));
    } catch (const std::exception&) {
        throw fl::Error(fl::ErrorCode::InvalidParams, "non-numeric value for '" + key + "'");
    }
    const std::map<std::string, double*> fields = {
        {"offset", &p.offset},       {"y_min", &p.y_min},
        {"y_max", &p.y_max},         {"z_min", &p.z_min},
        {"z_max", &p.z_max},         {"cell", &p.cell},
        {"amplitude", &p.amplitude}, {"wavelength", &p.wavelength},
        {"corner_angle_deg", &p.corner_angle_deg},
        {"leg_length", &p.leg_length}, {"roughness", &p.roughness},
        {"spacing", &p.spacing}};
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw fl::Error(fl::ErrorCode::InvalidParams, "unknown surface parameter '" + key + "'");
    }
    *it->second = value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface-adaptive inspection planner: mission simulation and metrics"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::size_t max_ticks = 0;
    long long seed = -1;
    auto* run = app.add_subcommand("run", "Simulate a mission scenario and write logs, cloud, report and plot");
    run->add_option("scenario", scenario_path, "Scenario YAML file")->required();
    run->add_option("-o,--out", out_dir, "Output directory (default: run.output_dir of the scenario)");
    run->add_option("--max-ticks", max_ticks, "Override the tick budget");
    run->add_option("--seed", seed, "Override the run seed");

    std::string log_path;
    std::string report_out;
    auto* rep = app.add_subcommand("replay", "Recompute the metrics report from a run log");
    rep->add_option("log", log_path, "run_log.csv")->required();
    rep->add_option("-o,--out", report_out, "Write the report here instead of stdout");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Parse and validate a scenario");
    val->add_option("scenario", validate_path, "Scenario YAML file")->required();

    std::string kind;
    std::string mesh_out;
    std::vector<std::string> params;
    std::string grid_path;
    std::uint64_t surface_seed = 0;
    auto* gen = app.add_subcommand("gen-surface", "Generate a synthetic surface mesh (OBJ or PLY)");
    gen->add_option("kind", kind, "plane | sine-wall | two-plane-corner | heightfield")->required();
    gen->add_option("-o,--out", mesh_out, "Output mesh (.obj or .ply)")->required();
    gen->add_option("-p,--param", params, "Generator parameter key=value (repeatable)");
    gen->add_option("--grid", grid_path, "Heightfield CSV (one row of heights per line)");
    gen->add_option("--seed", surface_seed, "Seed for surface roughness");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            fl::Scenario s = fl::parse_scenario(scenario_path);
            if (max_ticks > 0) s.run.max_ticks = max_ticks;
            if (seed >= 0) s.run.seed = static_cast<std::uint64_t>(seed);
            const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(s.run.output_dir) : std::filesystem::path(out_dir);
            const fl::MissionResult result = fl::run_mission(s);
            fl::write_outputs(s, result, dir);
            std::cout << "status: " << fl::to_string(result.status) << "\n"
                      << "ticks: " << result.log.records.size() << "\n"
                      << "outputs: " << dir.string() << "\n";
            if (result.status != fl::RunStatus::Done) {
                std::cerr << "error: "
                          << fl::Error(fl::ErrorCode::RuntimeAbort,
                                       "mission aborted (" + fl::to_string(result.status) +
                                           "); log flushed to " + (dir / "run_log.csv").string())
                                 .what()
                          << "\n";
            }
            return fl::exit_code(result.status);
        }
        if (*rep) {
            const std::string text = fl::report_to_json(fl::replay(log_path));
            if (report_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(report_out) << text;
            }
            return 0;
        }
        if (*val) {
            const fl::Scenario s = fl::parse_scenario(validate_path);
            std::cout << fl::describe_scenario(s);
            return 0;
        }
        if (*gen) {
            const auto k = fl::surface_kind_from_string(kind);
            if (!k) {
                throw fl::Error(fl::ErrorCode::InvalidParams, "unknown surface kind '" + kind + "'");
            }
            fl::SurfaceParams p;
            for (const auto& a : params) apply_param(p, a);
            if (!grid_path.empty()) p.heights = read_grid_csv(grid_path);
            const fl::SurfaceMesh mesh = fl::make_surface(*k, p, surface_seed);
            fl::save_mesh(mesh, mesh_out);
            std::cout << "wrote " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
                      << " triangles to " << mesh_out << "\n";
            return 0;
        }
    } catch (const fl::Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
