#include "firstlook/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "firstlook/error.hpp"

namespace firstlook {

namespace {

std::string where(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? "line " + std::to_string(mark.line + 1) : "line ?";
}

[[noreturn]] void invalid(const YAML::Node& node, const std::string& key, const std::string& msg) {
    throw Error(ErrorCode::ValidationError, where(node) + ": " + key + ": " + msg);
}

// Reads a mapping and rejects any key outside the allowed set.
class Section {
public:
    Section(const YAML::Node& node, std::string path, std::set<std::string> allowed)
        : node_(node), path_(std::move(path)) {
        if (!node_ || node_.IsNull()) {
            return;
        }
        if (!node_.IsMap()) {
            throw Error(ErrorCode::ParseError, where(node_) + ": '" + path_ + "' must be a mapping");
        }
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (allowed.count(key) == 0) {
                throw Error(ErrorCode::ParseError,
                            where(kv.first) + ": unknown key '" + qualified(key) + "'");
            }
        }
    }

    bool has(const std::string& key) const { return node_ && node_.IsMap() && node_[key]; }
    YAML::Node get(const std::string& key) const {
        return has(key) ? node_[key] : YAML::Node();
    }
    std::string qualified(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    template <typename T>
    T value(const std::string& key, T fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const YAML::Node n = node_[key];
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::ParseError,
                        where(n) + ": '" + qualified(key) + "' has the wrong type");
        }
    }

    Vec3 vec3(const std::string& key, const Vec3& fallback) const {
        if (!has(key)) {
            return fallback;
        }
        return parse_vec3(node_[key], qualified(key));
    }

    static Vec3 parse_vec3(const YAML::Node& n, const std::string& name) {
        if (!n.IsSequence() || n.size() != 3) {
            throw Error(ErrorCode::ParseError, where(n) + ": '" + name + "' must be [x, y, z]");
        }
        try {
            return {n[0].as<double>(), n[1].as<double>(), n[2].as<double>()};
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::ParseError, where(n) + ": '" + name + "' must be numeric");
        }
    }

    const YAML::Node& node() const { return node_; }

private:
    YAML::Node node_;
    std::string path_;
};

template <typename Fn>
void check(const YAML::Node& node, const std::string& key, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::InvalidCamera ||
            e.code() == ErrorCode::InvalidParams) {
            invalid(node, key, e.what());
        }
        throw;
    }
}

void parse_world(const Section& root, const std::filesystem::path& base, Scenario& s) {
    if (!root.has("world")) {
        invalid(root.node(), "world", "missing required section");
    }
    const Section w(root.get("world"), "world",
                    {"surface", "mesh", "seed", "recede", "offset", "y_min", "y_max", "z_min",
                     "z_max", "cell", "amplitude", "wavelength", "corner_angle_deg", "leg_length",
                     "roughness", "heights", "spacing", "origin"});
    const auto surface = w.value<std::string>("surface", "plane");
    if (surface == "file") {
        if (!w.has("mesh")) {
            invalid(w.node(), "world.mesh", "required when surface is 'file'");
        }
        s.world.mesh_path = w.value<std::string>("mesh", "");
        if (s.world.mesh_path.is_relative()) {
            s.world.mesh_path = base / s.world.mesh_path;
        }
        if (!std::filesystem::exists(s.world.mesh_path)) {
            invalid(w.get("mesh"), "world.mesh", "file not found: " + s.world.mesh_path.string());
        }
    } else {
        const auto kind = surface_kind_from_string(surface);
        if (!kind) {
            invalid(w.get("surface"), "world.surface", "unknown surface kind '" + surface + "'");
        }
        s.world.kind = kind;
    }
    auto& p = s.world.params;
    p.offset = w.value("offset", p.offset);
    p.y_min = w.value("y_min", p.y_min);
    p.y_max = w.value("y_max", p.y_max);
    p.z_min = w.value("z_min", p.z_min);
    p.z_max = w.value("z_max", p.z_max);
    p.cell = w.value("cell", p.cell);
    p.amplitude = w.value("amplitude", p.amplitude);
    p.wavelength = w.value("wavelength", p.wavelength);
    p.corner_angle_deg = w.value("corner_angle_deg", p.corner_angle_deg);
    p.leg_length = w.value("leg_length", p.leg_length);
    p.roughness = w.value("roughness", p.roughness);
    p.spacing = w.value("spacing", p.spacing);
    p.origin = w.vec3("origin", p.origin);
    p.heights = w.value("heights", p.heights);
    s.world.seed = w.value<std::uint64_t>("seed", 0);

    if (w.has("recede")) {
        const Section r(w.get("recede"), "world.recede", {"direction", "distance"});
        RecedeDirective rd;
        rd.direction = r.vec3("direction", rd.direction);
        rd.distance = r.value("distance", 0.0);
        if (!(rd.distance >= 0.0)) {
            invalid(r.get("distance"), "world.recede.distance", "must be >= 0");
        }
        if (!(rd.direction.norm() > 0.0)) {
            invalid(r.get("direction"), "world.recede.direction", "must be non-zero");
        }
        s.world.recede = rd;
    }
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    const Section root(doc, "",
                       {"name", "world", "route", "camera", "planner", "lidar", "vehicle",
                        "mission", "run", "metrics"});
    Scenario s;
    s.name = root.value<std::string>("name", "scenario");
    parse_world(root, base_dir, s);

    const Section cam(root.get("camera"), "camera", {"hfov_deg", "vfov_deg", "gamma_h", "gamma_v"});
    s.camera.alpha = deg2rad(cam.value("hfov_deg", 69.4));
    s.camera.beta = deg2rad(cam.value("vfov_deg", 45.0));
    s.camera.gamma_h = cam.value("gamma_h", 0.8);
    s.camera.gamma_v = cam.value("gamma_v", 0.8);
    if (!(s.camera.gamma_h >= 0.0 && s.camera.gamma_h <= 1.0)) {
        invalid(cam.get("gamma_h"), "camera.gamma_h", "gamma_h must be in [0, 1]");
    }
    if (!(s.camera.gamma_v >= 0.0 && s.camera.gamma_v <= 1.0)) {
        invalid(cam.get("gamma_v"), "camera.gamma_v", "gamma_v must be in [0, 1]");
    }
    check(cam.node(), "camera", [&] { s.camera.validate(); });

    const Section pl(root.get("planner"), "planner",
                     {"d_view", "horizon", "degeneracy_cos_limit", "step_scale_limit"});
    s.planner.d_view = pl.value("d_view", s.planner.d_view);
    s.planner.horizon_n = pl.value("horizon", s.planner.horizon_n);
    s.planner.degeneracy_cos_limit = pl.value("degeneracy_cos_limit", s.planner.degeneracy_cos_limit);
    s.planner.step_scale_limit = pl.value("step_scale_limit", 2.0 * s.planner.d_view);
    check(pl.node(), "planner", [&] { s.planner.validate(); });

    if (!root.has("route")) {
        invalid(root.node(), "route", "missing required section");
    }
    const Section rt(root.get("route"), "route", {"landmarks", "locality_radius"});
    if (!rt.has("landmarks")) {
        invalid(rt.node(), "route.landmarks", "missing required key");
    }
    const YAML::Node lms = rt.get("landmarks");
    if (!lms.IsSequence() || lms.size() == 0) {
        invalid(lms, "route.landmarks", "must be a non-empty list of [x, y, z]");
    }
    for (std::size_t i = 0; i < lms.size(); ++i) {
        s.route.landmarks.push_back(
            Section::parse_vec3(lms[i], "route.landmarks[" + std::to_string(i) + "]"));
    }
    const double default_radius = 0.75 * overlap_steps(s.camera, s.planner.d_view).d_hov;
    s.route.locality_radius = rt.value("locality_radius", default_radius);
    check(rt.node(), "route", [&] { s.route.validate(); });

    const Section li(root.get("lidar"), "lidar",
                     {"azimuth_fov_deg", "azimuth_res_deg", "elevation_fov_deg",
                      "elevation_res_deg", "max_range", "range_noise_sigma"});
    s.lidar.azimuth_fov_deg = li.value("azimuth_fov_deg", s.lidar.azimuth_fov_deg);
    s.lidar.azimuth_res_deg = li.value("azimuth_res_deg", s.lidar.azimuth_res_deg);
    s.lidar.elevation_fov_deg = li.value("elevation_fov_deg", s.lidar.elevation_fov_deg);
    s.lidar.elevation_res_deg = li.value("elevation_res_deg", s.lidar.elevation_res_deg);
    s.lidar.max_range = li.value("max_range", s.lidar.max_range);
    s.lidar.range_noise_sigma = li.value("range_noise_sigma", s.lidar.range_noise_sigma);
    check(li.node(), "lidar", [&] { s.lidar.validate(); });

    const Section ve(root.get("vehicle"), "vehicle",
                     {"max_speed", "max_yaw_rate", "tick_dt", "start", "start_yaw_deg"});
    s.vehicle.max_speed = ve.value("max_speed", s.vehicle.max_speed);
    s.vehicle.max_yaw_rate = ve.value("max_yaw_rate", s.vehicle.max_yaw_rate);
    s.vehicle.tick_dt = ve.value("tick_dt", s.vehicle.tick_dt);
    check(ve.node(), "vehicle", [&] { s.vehicle.validate(); });
    s.start = Pose(ve.vec3("start", Vec3::Zero()), deg2rad(ve.value("start_yaw_deg", 0.0)));

    const Section mi(root.get("mission"), "mission",
                     {"mode", "rows", "boundary_margin", "vertical_direction",
                      "transit_lookahead", "home_tolerance"});
    const auto mode = mi.value<std::string>("mode", "single-pass");
    if (mode == "single-pass") {
        s.mission.sweep.mode = SweepMode::SinglePass;
    } else if (mode == "lawnmower") {
        s.mission.sweep.mode = SweepMode::Lawnmower;
    } else {
        invalid(mi.get("mode"), "mission.mode", "expected 'single-pass' or 'lawnmower'");
    }
    s.mission.sweep.rows = mi.value("rows", 1);
    s.mission.sweep.boundary_margin = mi.value("boundary_margin", 0.0);
    const auto vdir = mi.value<std::string>("vertical_direction", "up");
    if (vdir != "up" && vdir != "down") {
        invalid(mi.get("vertical_direction"), "mission.vertical_direction", "expected 'up' or 'down'");
    }
    s.mission.sweep.vertical_sign = vdir == "up" ? 1 : -1;
    s.mission.transit_lookahead = mi.value("transit_lookahead", s.mission.transit_lookahead);
    s.mission.home_tolerance = mi.value("home_tolerance", s.mission.home_tolerance);
    if (s.mission.sweep.rows < 1) {
        invalid(mi.get("rows"), "mission.rows", "must be >= 1");
    }
    if (!(s.mission.sweep.boundary_margin >= 0.0)) {
        invalid(mi.get("boundary_margin"), "mission.boundary_margin", "must be >= 0");
    }
    if (!(s.mission.transit_lookahead > 0.0)) {
        invalid(mi.get("transit_lookahead"), "mission.transit_lookahead", "must be > 0");
    }
    if (!(s.mission.home_tolerance > 0.0)) {
        invalid(mi.get("home_tolerance"), "mission.home_tolerance", "must be > 0");
    }
    if (s.mission.sweep.mode == SweepMode::Lawnmower) {
        Vec3 span = s.route.landmarks.back() - s.route.landmarks.front();
        span.z() = 0.0;
        if (s.route.landmarks.size() < 2 || span.norm() <= 0.0) {
            invalid(lms, "route.landmarks",
                    "lawnmower mode needs two landmarks with horizontal separation");
        }
    }

    const Section ru(root.get("run"), "run", {"max_ticks", "seed", "output_dir", "stall_ticks"});
    s.run.max_ticks = ru.value<std::size_t>("max_ticks", s.run.max_ticks);
    s.run.seed = ru.value<std::uint64_t>("seed", s.run.seed);
    s.run.output_dir = ru.value<std::string>("output_dir", s.run.output_dir.string());
    s.run.stall_ticks = ru.value<std::size_t>("stall_ticks", s.run.stall_ticks);
    if (s.run.max_ticks < 1) {
        invalid(ru.get("max_ticks"), "run.max_ticks", "must be >= 1");
    }
    if (s.run.stall_ticks < 1) {
        invalid(ru.get("stall_ticks"), "run.stall_ticks", "must be >= 1");
    }

    const Section me(root.get("metrics"), "metrics",
                     {"voxel_size", "roi", "reference_points", "observed_points"});
    s.metrics.voxel_size = me.value("voxel_size", s.metrics.voxel_size);
    s.metrics.reference_points = me.value<std::size_t>("reference_points", s.metrics.reference_points);
    s.metrics.observed_points = me.value<std::size_t>("observed_points", s.metrics.observed_points);
    if (!(s.metrics.voxel_size > 0.0)) {
        invalid(me.get("voxel_size"), "metrics.voxel_size", "must be > 0");
    }
    if (s.metrics.reference_points < 1 || s.metrics.observed_points < 1) {
        invalid(me.node(), "metrics", "point budgets must be >= 1");
    }
    if (me.has("roi")) {
        const Section roi(me.get("roi"), "metrics.roi", {"min", "max"});
        Aabb box{roi.vec3("min", Vec3::Zero()), roi.vec3("max", Vec3::Zero())};
        if (!(box.max.array() > box.min.array()).all()) {
            invalid(me.get("roi"), "metrics.roi", "max must exceed min on every axis");
        }
        s.metrics.roi = box;
    }

    // Surface parameters are validated by running the generator once.
    if (s.world.kind) {
        check(root.get("world"), "world", [&] { make_surface(*s.world.kind, s.world.params, s.world.seed); });
    }
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open scenario " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_text(buf.str(), path.parent_path());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " +
                                  std::string(e.what()).substr(to_string(e.code()).size() + 2));
    }
}

SurfaceMesh build_world(const Scenario& s) {
    SurfaceMesh mesh = s.world.kind ? make_surface(*s.world.kind, s.world.params, s.world.seed)
                                    : load_mesh(s.world.mesh_path);
    if (s.world.recede && s.world.recede->distance > 0.0) {
        mesh = recede_face(mesh, s.world.recede->direction, s.world.recede->distance);
    }
    return mesh;
}

namespace {

YAML::Emitter& operator<<(YAML::Emitter& out, const Vec3& v) {
    return out << YAML::Flow << YAML::BeginSeq << v.x() << v.y() << v.z() << YAML::EndSeq;
}

template <typename T>
void kv(YAML::Emitter& out, const char* key, const T& value) {
    out << YAML::Key << key << YAML::Value << value;
}

}  // namespace

std::string describe_scenario(const Scenario& s) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    kv(out, "name", s.name);

    out << YAML::Key << "world" << YAML::Value << YAML::BeginMap;
    const auto& p = s.world.params;
    if (s.world.kind) {
        kv(out, "surface", to_string(*s.world.kind));
        kv(out, "seed", s.world.seed);
        kv(out, "offset", p.offset);
        kv(out, "y_min", p.y_min);
        kv(out, "y_max", p.y_max);
        kv(out, "z_min", p.z_min);
        kv(out, "z_max", p.z_max);
        kv(out, "cell", p.cell);
        kv(out, "amplitude", p.amplitude);
        kv(out, "wavelength", p.wavelength);
        kv(out, "corner_angle_deg", p.corner_angle_deg);
        kv(out, "leg_length", p.leg_length);
        kv(out, "roughness", p.roughness);
        if (*s.world.kind == SurfaceKind::Heightfield) {
            kv(out, "spacing", p.spacing);
            kv(out, "origin", p.origin);
            out << YAML::Key << "heights" << YAML::Value << YAML::BeginSeq;
            for (const auto& row : p.heights) out << YAML::Flow << row;
            out << YAML::EndSeq;
        }
    } else {
        kv(out, "surface", std::string("file"));
        kv(out, "mesh", std::filesystem::absolute(s.world.mesh_path).string());
    }
    if (s.world.recede) {
        out << YAML::Key << "recede" << YAML::Value << YAML::BeginMap;
        kv(out, "direction", s.world.recede->direction);
        kv(out, "distance", s.world.recede->distance);
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::Key << "camera" << YAML::Value << YAML::BeginMap;
    kv(out, "hfov_deg", rad2deg(s.camera.alpha));
    kv(out, "vfov_deg", rad2deg(s.camera.beta));
    kv(out, "gamma_h", s.camera.gamma_h);
    kv(out, "gamma_v", s.camera.gamma_v);
    out << YAML::EndMap;

    out << YAML::Key << "planner" << YAML::Value << YAML::BeginMap;
    kv(out, "d_view", s.planner.d_view);
    kv(out, "horizon", s.planner.horizon_n);
    kv(out, "degeneracy_cos_limit", s.planner.degeneracy_cos_limit);
    kv(out, "step_scale_limit", s.planner.step_scale_limit);
    out << YAML::EndMap;

    out << YAML::Key << "route" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "landmarks" << YAML::Value << YAML::BeginSeq;
    for (const auto& l : s.route.landmarks) out << l;
    out << YAML::EndSeq;
    kv(out, "locality_radius", s.route.locality_radius);
    out << YAML::EndMap;

    out << YAML::Key << "lidar" << YAML::Value << YAML::BeginMap;
    kv(out, "azimuth_fov_deg", s.lidar.azimuth_fov_deg);
    kv(out, "azimuth_res_deg", s.lidar.azimuth_res_deg);
    kv(out, "elevation_fov_deg", s.lidar.elevation_fov_deg);
    kv(out, "elevation_res_deg", s.lidar.elevation_res_deg);
    kv(out, "max_range", s.lidar.max_range);
    kv(out, "range_noise_sigma", s.lidar.range_noise_sigma);
    out << YAML::EndMap;

    out << YAML::Key << "vehicle" << YAML::Value << YAML::BeginMap;
    kv(out, "max_speed", s.vehicle.max_speed);
    kv(out, "max_yaw_rate", s.vehicle.max_yaw_rate);
    kv(out, "tick_dt", s.vehicle.tick_dt);
    kv(out, "start", s.start.position());
    kv(out, "start_yaw_deg", rad2deg(s.start.yaw()));
    out << YAML::EndMap;

    out << YAML::Key << "mission" << YAML::Value << YAML::BeginMap;
    kv(out, "mode", std::string(s.mission.sweep.mode == SweepMode::Lawnmower ? "lawnmower" : "single-pass"));
    kv(out, "rows", s.mission.sweep.rows);
    kv(out, "boundary_margin", s.mission.sweep.boundary_margin);
    kv(out, "vertical_direction", std::string(s.mission.sweep.vertical_sign > 0 ? "up" : "down"));
    kv(out, "transit_lookahead", s.mission.transit_lookahead);
    kv(out, "home_tolerance", s.mission.home_tolerance);
    out << YAML::EndMap;

    out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
    kv(out, "max_ticks", s.run.max_ticks);
    kv(out, "seed", s.run.seed);
    kv(out, "output_dir", s.run.output_dir.string());
    kv(out, "stall_ticks", s.run.stall_ticks);
    out << YAML::EndMap;

    out << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
    kv(out, "voxel_size", s.metrics.voxel_size);
    kv(out, "reference_points", s.metrics.reference_points);
    kv(out, "observed_points", s.metrics.observed_points);
    if (s.metrics.roi) {
        out << YAML::Key << "roi" << YAML::Value << YAML::BeginMap;
        kv(out, "min", s.metrics.roi->min);
        kv(out, "max", s.metrics.roi->max);
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace firstlook
