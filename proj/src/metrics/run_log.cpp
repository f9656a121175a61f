#include "firstlook/run_log.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "../text_io.hpp"
#include "firstlook/error.hpp"

namespace firstlook {

const char* const kRunLogColumns =
    "tick,time,phase,next_phase,landmark,odom_x,odom_y,odom_z,odom_yaw,ref_x,ref_y,ref_z,ref_yaw,"
    "has_nn,nn_x,nn_y,nn_z,nn_range,mode,lateral_sign,d_insp,d_hov,d_vov,planned,held,"
    "scan_points,coverage,predicted";

namespace {

constexpr std::size_t kColumnCount = 28;
using detail::format_double;

std::string pose_fields(const Pose& p) {
    return format_double(p.position().x()) + ',' + format_double(p.position().y()) + ',' +
           format_double(p.position().z()) + ',' + format_double(p.yaw());
}

std::string predicted_field(const std::vector<PredictedPose>& steps) {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) out += '|';
        const auto& s = steps[i];
        out += format_double(s.pose.position().x()) + ';' + format_double(s.pose.position().y()) +
               ';' + format_double(s.pose.position().z()) + ';' + format_double(s.pose.yaw()) +
               ';' + format_double(s.range);
    }
    return out;
}

}  // namespace

void write_run_log(const RunLog& log, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    const auto& h = log.header;
    out << "# firstlook-run-log v1\n"
        << "# d_view=" << format_double(h.d_view) << "\n"
        << "# alpha=" << format_double(h.camera.alpha) << "\n"
        << "# beta=" << format_double(h.camera.beta) << "\n"
        << "# gamma_h=" << format_double(h.camera.gamma_h) << "\n"
        << "# gamma_v=" << format_double(h.camera.gamma_v) << "\n"
        << "# tick_dt=" << format_double(h.tick_dt) << "\n"
        << "# start=" << format_double(h.start.position().x()) << ';'
        << format_double(h.start.position().y()) << ';' << format_double(h.start.position().z())
        << ';' << format_double(h.start.yaw()) << "\n"
        << "# landmarks=" << h.landmark_count << "\n"
        << kRunLogColumns << "\n";
    for (const auto& r : log.records) {
        out << r.tick << ',' << format_double(r.time) << ',' << to_string(r.phase) << ','
            << to_string(r.next_phase) << ',' << r.landmark << ',' << pose_fields(r.odom) << ','
            << pose_fields(r.reference) << ',' << (r.has_nn ? 1 : 0) << ','
            << format_double(r.p_nn.x()) << ',' << format_double(r.p_nn.y()) << ','
            << format_double(r.p_nn.z()) << ',' << format_double(r.nn_range) << ','
            << to_string(r.mode) << ',' << r.lateral_sign << ',' << format_double(r.d_insp) << ','
            << format_double(r.d_hov) << ',' << format_double(r.d_vov) << ','
            << (r.planned ? 1 : 0) << ',' << (r.held ? 1 : 0) << ',' << r.scan_points << ','
            << format_double(r.coverage) << ',' << predicted_field(r.predicted) << "\n";
    }
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write failure on " + path.string());
    }
}

RunLog read_run_log(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    RunLog log;
    std::map<std::string, std::string> meta;
    std::string line;
    std::size_t line_no = 0;
    bool saw_columns = false;
    std::size_t record_no = 0;

    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no) +
                                               " (record " + std::to_string(record_no) +
                                               "): " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        if (!saw_columns) {
            if (body.front() == '#') {
                const auto eq = body.find('=');
                if (eq != std::string_view::npos) {
                    meta[std::string(detail::trim(body.substr(1, eq - 1)))] =
                        std::string(detail::trim(body.substr(eq + 1)));
                }
                continue;
            }
            if (body != kRunLogColumns) {
                fail("unexpected column header");
            }
            saw_columns = true;
            continue;
        }

        const auto f = detail::split(body, ',');
        if (f.size() != kColumnCount) {
            fail("expected " + std::to_string(kColumnCount) + " fields, found " +
                 std::to_string(f.size()));
        }
        try {
            TickRecord r;
            auto num = [&](std::size_t i) { return detail::parse_double(f[i], line_no); };
            auto integer = [&](std::size_t i) { return detail::parse_int(f[i], line_no); };
            auto phase = [&](std::size_t i) {
                const auto p = mission_phase_from_string(std::string(f[i]));
                if (!p) fail("unknown phase '" + std::string(f[i]) + "'");
                return *p;
            };
            r.tick = static_cast<std::size_t>(integer(0));
            r.time = num(1);
            r.phase = phase(2);
            r.next_phase = phase(3);
            r.landmark = static_cast<std::size_t>(integer(4));
            r.odom = Pose(Vec3(num(5), num(6), num(7)), num(8));
            r.reference = Pose(Vec3(num(9), num(10), num(11)), num(12));
            r.has_nn = integer(13) != 0;
            r.p_nn = Vec3(num(14), num(15), num(16));
            r.nn_range = num(17);
            const auto mode = step_mode_from_string(std::string(f[18]));
            if (!mode) fail("unknown step mode '" + std::string(f[18]) + "'");
            r.mode = *mode;
            r.lateral_sign = static_cast<int>(integer(19));
            r.d_insp = num(20);
            r.d_hov = num(21);
            r.d_vov = num(22);
            r.planned = integer(23) != 0;
            r.held = integer(24) != 0;
            r.scan_points = static_cast<std::size_t>(integer(25));
            r.coverage = num(26);
            if (!f[27].empty()) {
                for (const auto step : detail::split(f[27], '|')) {
                    const auto v = detail::split(step, ';');
                    if (v.size() != 5) fail("malformed predicted step");
                    PredictedPose pp;
                    pp.pose = Pose(Vec3(detail::parse_double(v[0], line_no),
                                        detail::parse_double(v[1], line_no),
                                        detail::parse_double(v[2], line_no)),
                                   detail::parse_double(v[3], line_no));
                    pp.range = detail::parse_double(v[4], line_no);
                    r.predicted.push_back(pp);
                }
            }
            log.records.push_back(std::move(r));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError &&
                std::string(e.what()).find("(record") != std::string::npos) {
                throw;
            }
            fail(e.what());
        }
        ++record_no;
    }
    if (!saw_columns) {
        fail("missing column header");
    }

    auto meta_num = [&](const std::string& key) {
        const auto it = meta.find(key);
        if (it == meta.end()) {
            throw Error(ErrorCode::ParseError, path.string() + ": missing header key '" + key + "'");
        }
        return detail::parse_double(it->second, 0);
    };
    log.header.d_view = meta_num("d_view");
    log.header.camera = CameraModel{meta_num("alpha"), meta_num("beta"), meta_num("gamma_h"),
                                    meta_num("gamma_v")};
    log.header.tick_dt = meta_num("tick_dt");
    log.header.landmark_count = static_cast<std::size_t>(meta_num("landmarks"));
    if (const auto it = meta.find("start"); it != meta.end()) {
        const auto v = detail::split(it->second, ';');
        if (v.size() != 4) {
            throw Error(ErrorCode::ParseError, path.string() + ": malformed start pose");
        }
        log.header.start = Pose(Vec3(detail::parse_double(v[0], 0), detail::parse_double(v[1], 0),
                                     detail::parse_double(v[2], 0)),
                                detail::parse_double(v[3], 0));
    }
    return log;
}

SummaryStats summarize(std::vector<double> values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    double sq = 0.0;
    for (const double v : values) {
        sum += v;
        sq += v * v;
    }
    const auto n = static_cast<double>(values.size());
    s.mean = sum / n;
    s.rms = std::sqrt(sq / n);
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * n));
    s.p95 = values[std::max<std::size_t>(rank, 1) - 1];
    return s;
}

MetricsReport run_report(const RunLog& log) {
    if (log.records.empty()) {
        throw Error(ErrorCode::EmptyLog, "run log has no records");
    }
    const auto& h = log.header;
    MetricsReport rep;
    rep.ticks = log.records.size();
    rep.duration_s = static_cast<double>(log.records.size()) * h.tick_dt;
    rep.final_phase = to_string(log.records.back().next_phase);
    rep.completed = log.records.back().next_phase == MissionPhase::Done;
    rep.landmark_count = h.landmark_count;
    rep.d_view = h.d_view;
    rep.gamma_h = h.camera.gamma_h;
    rep.coverage_fraction = log.records.back().coverage;

    std::vector<double> abs_err;
    std::vector<double> signed_err;
    std::vector<double> overlap;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        if (i > 0) {
            rep.path_length_m +=
                (r.odom.position() - log.records[i - 1].odom.position()).norm();
        }
        if (r.phase != MissionPhase::Inspect) {
            continue;
        }
        ++rep.inspect_ticks;
        rep.final_landmark = r.landmark;
        if (r.held) ++rep.held_ticks;
        if (r.planned && r.mode == StepMode::VerticalSwitch) ++rep.vertical_switches;
        if (!r.has_nn) {
            continue;
        }
        abs_err.push_back(std::abs(r.nn_range - h.d_view));
        signed_err.push_back(r.nn_range - h.d_view);

        // Achieved overlap between this pose and the next one after a lateral step.
        if (i + 1 >= log.records.size() || !r.planned || r.mode != StepMode::HorizontalStep) {
            continue;
        }
        const auto& next = log.records[i + 1];
        if (next.phase != MissionPhase::Inspect || !next.has_nn) {
            continue;
        }
        try {
            const auto fa = compute_frame(r.odom.position(), r.p_nn);
            const auto fb = compute_frame(next.odom.position(), next.p_nn);
            const auto a = project_footprint(r.odom, fa, r.nn_range, h.camera);
            const auto b = project_footprint(next.odom, fb, next.nn_range, h.camera);
            overlap.push_back(lateral_overlap_fraction(a, b));
        } catch (const Error&) {
            // degenerate geometry on either side; no overlap sample
        }
    }
    if (rep.inspect_ticks == 0) {
        rep.final_landmark = log.records.back().landmark;
    }
    rep.view_distance_error = summarize(std::move(abs_err));
    rep.signed_range_error = summarize(std::move(signed_err));
    rep.lateral_overlap = summarize(std::move(overlap));
    return rep;
}

namespace {

nlohmann::ordered_json stats_json(const SummaryStats& s) {
    return {{"count", s.count}, {"mean", s.mean}, {"median", s.median}, {"p95", s.p95},
            {"min", s.min},     {"max", s.max},   {"rms", s.rms}};
}

}  // namespace

std::string report_to_json(const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["ticks"] = r.ticks;
    j["duration_s"] = r.duration_s;
    j["completed"] = r.completed;
    j["final_phase"] = r.final_phase;
    j["final_landmark"] = r.final_landmark;
    j["landmark_count"] = r.landmark_count;
    j["inspect_ticks"] = r.inspect_ticks;
    j["d_view"] = r.d_view;
    j["gamma_h"] = r.gamma_h;
    j["view_distance_error"] = stats_json(r.view_distance_error);
    j["signed_range_error"] = stats_json(r.signed_range_error);
    j["lateral_overlap"] = stats_json(r.lateral_overlap);
    j["vertical_switches"] = r.vertical_switches;
    j["held_ticks"] = r.held_ticks;
    j["path_length_m"] = r.path_length_m;
    j["coverage_fraction"] = r.coverage_fraction;
    return j.dump(2) + "\n";
}

}  // namespace firstlook
