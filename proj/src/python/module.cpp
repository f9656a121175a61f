// Python bindings: point clouds cross the boundary as (N, 3) float64 arrays.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "firstlook/error.hpp"
#include "firstlook/footprint.hpp"
#include "firstlook/geometry.hpp"
#include "firstlook/kd_index.hpp"
#include "firstlook/metrics.hpp"
#include "firstlook/run_log.hpp"
#include "firstlook/scenario.hpp"
#include "firstlook/simulation.hpp"
#include "firstlook/view_planner.hpp"
#include "firstlook/world.hpp"

namespace py = pybind11;
using namespace firstlook;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& a) {
    if (a.ndim() != 2 || a.shape(1) != 3) {
        throw py::value_error("expected an (N, 3) array");
    }
    PointCloud cloud;
    const auto r = a.unchecked<2>();
    cloud.points.reserve(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) {
        cloud.points.emplace_back(r(i, 0), r(i, 1), r(i, 2));
    }
    return cloud;
}

Array to_array(const PointCloud& cloud) {
    Array out({static_cast<py::ssize_t>(cloud.points.size()), py::ssize_t{3}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        for (int j = 0; j < 3; ++j) w(static_cast<py::ssize_t>(i), j) = cloud.points[i][j];
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_firstlook, m) {
    m.doc() = "Surface-adaptive inspection view planning and simulation";

    py::exception<Error>(m, "FirstLookError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object cls = py::module_::import("firstlook._firstlook").attr("FirstLookError");
            py::object exc = cls(e.what());
            exc.attr("code") = to_string(e.code());
            PyErr_SetObject(cls.ptr(), exc.ptr());
        }
    });

    py::class_<Pose>(m, "Pose")
        .def(py::init<const Vec3&, double>(), py::arg("position"), py::arg("yaw") = 0.0)
        .def_property_readonly("position", &Pose::position)
        .def_property_readonly("yaw", &Pose::yaw)
        .def("__repr__", [](const Pose& p) {
            return "Pose(" + std::to_string(p.position().x()) + ", " +
                   std::to_string(p.position().y()) + ", " + std::to_string(p.position().z()) +
                   ", yaw=" + std::to_string(p.yaw()) + ")";
        });

    py::class_<EgoFrame>(m, "EgoFrame")
        .def_readonly("nu_x", &EgoFrame::nu_x)
        .def_readonly("nu_y", &EgoFrame::nu_y)
        .def_readonly("nu_z", &EgoFrame::nu_z);

    py::class_<CameraModel>(m, "CameraModel")
        .def_static("from_degrees", &CameraModel::from_degrees, py::arg("hfov_deg"),
                    py::arg("vfov_deg"), py::arg("gamma_h"), py::arg("gamma_v"))
        .def_readwrite("alpha", &CameraModel::alpha)
        .def_readwrite("beta", &CameraModel::beta)
        .def_readwrite("gamma_h", &CameraModel::gamma_h)
        .def_readwrite("gamma_v", &CameraModel::gamma_v)
        .def("validate", &CameraModel::validate);

    m.def(
        "overlap_steps",
        [](const CameraModel& camera, double range) {
            const OverlapSteps s = overlap_steps(camera, range);
            return py::make_tuple(s.d_hov, s.d_vov);
        },
        py::arg("camera"), py::arg("range"), "Returns (d_hov, d_vov).");

    m.def("compute_frame", &compute_frame, py::arg("position"), py::arg("p_nn"),
          py::arg("up") = Vec3(Vec3::UnitZ()), py::arg("cos_limit") = 0.999);

    py::class_<KdIndex>(m, "KdIndex")
        .def(py::init([](const Array& pts) { return KdIndex(to_cloud(pts)); }))
        .def("__len__", &KdIndex::size)
        .def(
            "nearest",
            [](const KdIndex& index, const Vec3& q) {
                const Neighbor n = index.nearest(q);
                return py::make_tuple(n.point, n.distance, n.point_id);
            },
            py::arg("query"), "Returns (point, distance, point_id).");

    py::class_<PlannerConfig>(m, "PlannerConfig")
        .def(py::init<>())
        .def_readwrite("d_view", &PlannerConfig::d_view)
        .def_readwrite("horizon_n", &PlannerConfig::horizon_n)
        .def_readwrite("degeneracy_cos_limit", &PlannerConfig::degeneracy_cos_limit)
        .def_readwrite("step_scale_limit", &PlannerConfig::step_scale_limit);

    py::enum_<StepMode>(m, "StepMode")
        .value("HorizontalStep", StepMode::HorizontalStep)
        .value("VerticalSwitch", StepMode::VerticalSwitch)
        .value("Hold", StepMode::Hold);

    py::class_<StepCommand>(m, "StepCommand")
        .def(py::init([](StepMode mode, int lateral_sign, int vertical_sign) {
                 return StepCommand{mode, lateral_sign, vertical_sign};
             }),
             py::arg("mode") = StepMode::HorizontalStep, py::arg("lateral_sign") = 1,
             py::arg("vertical_sign") = 1);

    py::class_<PlanStep>(m, "PlanStep")
        .def_readonly("pose", &PlanStep::pose)
        .def_readonly("p_nn", &PlanStep::p_nn)
        .def_readonly("range", &PlanStep::range)
        .def_readonly("d_insp", &PlanStep::d_insp)
        .def_readonly("d_hov_applied", &PlanStep::d_hov_applied)
        .def_readonly("d_vov_applied", &PlanStep::d_vov_applied)
        .def_readonly("mode", &PlanStep::mode);

    m.def(
        "predict_path",
        [](const Pose& odom, const Array& cloud, const PlannerConfig& config,
           const CameraModel& camera, const StepCommand& command) {
            return predict_path(odom, to_cloud(cloud), config, camera, command).steps;
        },
        py::arg("odom"), py::arg("cloud"), py::arg("config"), py::arg("camera"),
        py::arg("command") = StepCommand{});

    py::enum_<SurfaceKind>(m, "SurfaceKind")
        .value("Plane", SurfaceKind::Plane)
        .value("SineWall", SurfaceKind::SineWall)
        .value("TwoPlaneCorner", SurfaceKind::TwoPlaneCorner)
        .value("Heightfield", SurfaceKind::Heightfield);

    py::class_<SurfaceParams>(m, "SurfaceParams")
        .def(py::init<>())
        .def_readwrite("offset", &SurfaceParams::offset)
        .def_readwrite("y_min", &SurfaceParams::y_min)
        .def_readwrite("y_max", &SurfaceParams::y_max)
        .def_readwrite("z_min", &SurfaceParams::z_min)
        .def_readwrite("z_max", &SurfaceParams::z_max)
        .def_readwrite("cell", &SurfaceParams::cell)
        .def_readwrite("amplitude", &SurfaceParams::amplitude)
        .def_readwrite("wavelength", &SurfaceParams::wavelength)
        .def_readwrite("corner_angle_deg", &SurfaceParams::corner_angle_deg)
        .def_readwrite("leg_length", &SurfaceParams::leg_length)
        .def_readwrite("roughness", &SurfaceParams::roughness);

    py::class_<SurfaceMesh>(m, "SurfaceMesh")
        .def_property_readonly("vertices",
                               [](const SurfaceMesh& mesh) { return to_array(PointCloud{mesh.vertices, FrameId::World}); })
        .def_property_readonly("triangle_count",
                               [](const SurfaceMesh& mesh) { return mesh.triangles.size(); })
        .def("save", [](const SurfaceMesh& mesh, const std::filesystem::path& p) { save_mesh(mesh, p); });

    m.def("make_surface", &make_surface, py::arg("kind"), py::arg("params") = SurfaceParams{},
          py::arg("seed") = 0);
    m.def("load_mesh", &load_mesh, py::arg("path"));
    m.def("recede_face", &recede_face, py::arg("mesh"), py::arg("direction"), py::arg("distance"));

    py::class_<LidarModel>(m, "LidarModel")
        .def(py::init<>())
        .def_readwrite("azimuth_fov_deg", &LidarModel::azimuth_fov_deg)
        .def_readwrite("azimuth_res_deg", &LidarModel::azimuth_res_deg)
        .def_readwrite("elevation_fov_deg", &LidarModel::elevation_fov_deg)
        .def_readwrite("elevation_res_deg", &LidarModel::elevation_res_deg)
        .def_readwrite("max_range", &LidarModel::max_range)
        .def_readwrite("range_noise_sigma", &LidarModel::range_noise_sigma)
        .def_readwrite("seed", &LidarModel::seed);

    m.def(
        "scan",
        [](const SurfaceMesh& mesh, const Pose& pose, const LidarModel& lidar) {
            return to_array(scan(mesh, pose, lidar));
        },
        py::arg("mesh"), py::arg("pose"), py::arg("lidar") = LidarModel{});

    m.def(
        "cloud_to_cloud",
        [](const Array& measured, const Array& reference) {
            const CloudComparison c = cloud_to_cloud(to_cloud(measured), to_cloud(reference));
            py::dict d;
            d["count"] = c.count;
            d["mean"] = c.mean;
            d["max"] = c.max;
            d["p98"] = c.p98;
            d["trimmed_mean_98"] = c.trimmed_mean_98;
            d["histogram"] = c.histogram.counts;
            d["overflow"] = c.histogram.overflow;
            return d;
        },
        py::arg("measured"), py::arg("reference"));

    m.def(
        "downsample",
        [](const Array& cloud, std::size_t target, std::uint64_t seed) {
            return to_array(downsample(to_cloud(cloud), target, seed));
        },
        py::arg("cloud"), py::arg("target_count"), py::arg("seed") = 0);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("camera", &Scenario::camera)
        .def_readonly("planner", &Scenario::planner)
        .def("describe", &describe_scenario);

    m.def("parse_scenario", &parse_scenario, py::arg("path"));
    m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"),
          py::arg("base_dir") = std::filesystem::path{});

    m.def(
        "run_mission",
        [](const Scenario& scenario, std::optional<std::filesystem::path> out_dir) {
            const MissionResult r = run_mission(scenario);
            if (out_dir) write_outputs(scenario, r, *out_dir);
            return py::make_tuple(to_string(r.status), report_to_json(r.report));
        },
        py::arg("scenario"), py::arg("out_dir") = std::nullopt,
        "Runs the mission; returns (status, report_json). Writes outputs if out_dir is given.");

    m.def(
        "replay", [](const std::filesystem::path& log) { return report_to_json(replay(log)); },
        py::arg("log_path"), "Recomputes the report JSON from a run log.");
}
