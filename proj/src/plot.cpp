#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "firstlook/error.hpp"
#include "firstlook/simulation.hpp"
#include "text_io.hpp"

namespace firstlook {

namespace {

constexpr double kPanelW = 520.0;
constexpr double kPanelH = 420.0;
constexpr double kMargin = 40.0;

struct Panel {
    double x0, y0;          // panel origin in svg coordinates
    double min_u, min_v;    // data bounds
    double scale;

    std::pair<double, double> map(double u, double v) const {
        return {x0 + kMargin + (u - min_u) * scale, y0 + kPanelH - kMargin - (v - min_v) * scale};
    }
};

Panel fit(double x0, double y0, const std::vector<std::pair<double, double>>& pts) {
    double lu = std::numeric_limits<double>::infinity(), lv = lu;
    double hu = -lu, hv = -lu;
    for (const auto& [u, v] : pts) {
        lu = std::min(lu, u);
        hu = std::max(hu, u);
        lv = std::min(lv, v);
        hv = std::max(hv, v);
    }
    if (pts.empty()) {
        lu = lv = 0.0;
        hu = hv = 1.0;
    }
    const double span = std::max({hu - lu, hv - lv, 1e-6});
    return {x0, y0, lu, lv, std::min(kPanelW, kPanelH) * 0.85 / span};
}

std::string polyline(const Panel& p, const std::vector<std::pair<double, double>>& pts,
                     const char* color, double width) {
    std::ostringstream out;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
        << "\" points=\"";
    for (const auto& [u, v] : pts) {
        const auto [x, y] = p.map(u, v);
        out << x << ',' << y << ' ';
    }
    out << "\"/>\n";
    return out.str();
}

}  // namespace

void write_trajectory_svg(const RunLog& log, const LandmarkRoute& route,
                          const std::filesystem::path& path) {
    std::vector<std::pair<double, double>> flown_xy, planned_xy, marks_xy;
    std::vector<std::pair<double, double>> flown_sz, planned_sz, marks_sz;
    // Profile view: horizontal arc length of the flown path against altitude.
    double arc = 0.0;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto& r = log.records[i];
        if (i > 0) {
            const Vec3 d = r.odom.position() - log.records[i - 1].odom.position();
            arc += std::hypot(d.x(), d.y());
        }
        flown_xy.emplace_back(r.odom.position().x(), r.odom.position().y());
        flown_sz.emplace_back(arc, r.odom.position().z());
        if (r.phase == MissionPhase::Inspect) {
            planned_xy.emplace_back(r.reference.position().x(), r.reference.position().y());
            planned_sz.emplace_back(arc, r.reference.position().z());
        }
    }
    double larc = 0.0;
    for (std::size_t i = 0; i < route.landmarks.size(); ++i) {
        const auto& l = route.landmarks[i];
        if (i > 0) {
            const Vec3 d = l - route.landmarks[i - 1];
            larc += std::hypot(d.x(), d.y());
        }
        marks_xy.emplace_back(l.x(), l.y());
        marks_sz.emplace_back(larc, l.z());
    }

    auto all = [](std::initializer_list<const std::vector<std::pair<double, double>>*> sets) {
        std::vector<std::pair<double, double>> out;
        for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
        return out;
    };
    const Panel top = fit(0.0, 0.0, all({&flown_xy, &planned_xy, &marks_xy}));
    const Panel side = fit(kPanelW, 0.0, all({&flown_sz, &planned_sz, &marks_sz}));

    auto out = detail::open_for_write(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanelW << "\" height=\""
        << kPanelH + 30 << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">top-down (x, y)</text>\n"
        << "<text x=\"" << kPanelW + kMargin << "\" y=\"20\" font-size=\"14\">"
        << "profile (horizontal distance, z)</text>\n";
    for (const auto* p : {&top, &side}) {
        out << "<rect x=\"" << p->x0 + 10 << "\" y=\"30\" width=\"" << kPanelW - 20
            << "\" height=\"" << kPanelH - 40 << "\" fill=\"none\" stroke=\"#999\"/>\n";
    }
    out << polyline(top, planned_xy, "#2a9d3a", 1.5) << polyline(top, flown_xy, "#e07020", 2.0)
        << polyline(side, planned_sz, "#2a9d3a", 1.5) << polyline(side, flown_sz, "#e07020", 2.0);
    for (const auto& [panel, marks] : {std::pair{&top, &marks_xy}, std::pair{&side, &marks_sz}}) {
        for (const auto& [u, v] : *marks) {
            const auto [x, y] = panel->map(u, v);
            out << "<circle cx=\"" << x << "\" cy=\"" << y
                << "\" r=\"5\" fill=\"#8b1a1a\" fill-opacity=\"0.8\"/>\n";
        }
    }
    out << "<text x=\"" << kMargin << "\" y=\"" << kPanelH + 20 << "\" font-size=\"12\">"
        << "orange: flown, green: planned reference, maroon: landmarks</text>\n</svg>\n";
    if (!out) {
        throw Error(ErrorCode::IoError, "write failure on " + path.string());
    }
}

}  // namespace firstlook
