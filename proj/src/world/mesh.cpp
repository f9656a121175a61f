#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "../text_io.hpp"
#include "firstlook/error.hpp"
#include "firstlook/world.hpp"

namespace firstlook {

SurfaceMesh sanitize_mesh(SurfaceMesh mesh) {
    for (const auto& v : mesh.vertices) {
        if (!is_finite(v)) {
            throw Error(ErrorCode::InvalidParams, "mesh has a non-finite vertex");
        }
    }
    std::vector<TriangleIndices> kept;
    kept.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        for (const auto i : t) {
            if (i >= mesh.vertices.size()) {
                throw Error(ErrorCode::InvalidParams,
                            "triangle index " + std::to_string(i) + " out of range");
            }
        }
        const Vec3& a = mesh.vertices[t[0]];
        const double area2 = (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a).norm();
        if (area2 > 1e-12) {
            kept.push_back(t);
        }
    }
    mesh.triangles = std::move(kept);
    return mesh;
}

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void add_polygon(SurfaceMesh& mesh, const std::vector<long long>& idx, std::size_t line,
                 const std::filesystem::path& path) {
    if (idx.size() < 3) {
        throw Error(ErrorCode::ParseError,
                    path.string() + " line " + std::to_string(line) + ": face needs 3 vertices");
    }
    for (const auto i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= mesh.vertices.size()) {
            throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line) +
                                                   ": vertex index out of range");
        }
    }
    for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        mesh.triangles.push_back({static_cast<std::uint32_t>(idx[0]),
                                  static_cast<std::uint32_t>(idx[k]),
                                  static_cast<std::uint32_t>(idx[k + 1])});
    }
}

SurfaceMesh load_obj(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    SurfaceMesh mesh;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_ws(detail::trim(line));
        if (tokens.empty() || tokens[0].front() == '#') {
            continue;
        }
        if (tokens[0] == "v") {
            if (tokens.size() < 4) {
                throw Error(ErrorCode::ParseError, path.string() + " line " +
                                                       std::to_string(line_no) +
                                                       ": vertex needs 3 coordinates");
            }
            mesh.vertices.emplace_back(detail::parse_double(tokens[1], line_no),
                                       detail::parse_double(tokens[2], line_no),
                                       detail::parse_double(tokens[3], line_no));
        } else if (tokens[0] == "f") {
            std::vector<long long> idx;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                const auto slash = tokens[i].find('/');
                long long v = detail::parse_int(tokens[i].substr(0, slash), line_no);
                // OBJ is 1-based; negative indices count back from the latest vertex.
                v = v < 0 ? static_cast<long long>(mesh.vertices.size()) + v : v - 1;
                idx.push_back(v);
            }
            add_polygon(mesh, idx, line_no, path);
        }
        // vn, vt, o, g, s, usemtl and friends are ignored.
    }
    return mesh;
}

SurfaceMesh load_ply_mesh(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    std::vector<std::vector<long long>> faces;
    auto vertices = detail::read_ply(in, path, true, &faces);
    SurfaceMesh mesh;
    mesh.vertices = std::move(vertices.points);
    for (const auto& f : faces) {
        add_polygon(mesh, f, 0, path);
    }
    return mesh;
}

}  // namespace

SurfaceMesh load_mesh(const std::filesystem::path& path) {
    const auto ext = lower_extension(path);
    SurfaceMesh mesh;
    if (ext == ".obj") {
        mesh = load_obj(path);
    } else if (ext == ".ply") {
        mesh = load_ply_mesh(path);
    } else {
        throw Error(ErrorCode::ParseError, "unsupported mesh extension '" + ext + "'");
    }
    mesh.generator = "file";
    return sanitize_mesh(std::move(mesh));
}

void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
    const auto ext = lower_extension(path);
    auto out = detail::open_for_write(path);
    auto xyz = [](const Vec3& v, char sep) {
        return detail::format_double(v.x()) + sep + detail::format_double(v.y()) + sep +
               detail::format_double(v.z());
    };
    if (ext == ".obj") {
        out << "# generator " << mesh.generator << "\n";
        for (const auto& v : mesh.vertices) {
            out << "v " << xyz(v, ' ') << "\n";
        }
        for (const auto& t : mesh.triangles) {
            out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
        }
    } else if (ext == ".ply") {
        out << "ply\nformat ascii 1.0\ncomment generator " << mesh.generator << "\n"
            << "element vertex " << mesh.vertices.size() << "\n"
            << "property double x\nproperty double y\nproperty double z\n"
            << "element face " << mesh.triangles.size() << "\n"
            << "property list uchar int vertex_indices\nend_header\n";
        for (const auto& v : mesh.vertices) {
            out << xyz(v, ' ') << "\n";
        }
        for (const auto& t : mesh.triangles) {
            out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
        }
    } else {
        throw Error(ErrorCode::IoError, "unsupported mesh extension '" + ext + "'");
    }
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write failure on " + path.string());
    }
}

std::optional<SurfaceKind> surface_kind_from_string(const std::string& s) {
    if (s == "plane") return SurfaceKind::Plane;
    if (s == "sine-wall") return SurfaceKind::SineWall;
    if (s == "two-plane-corner") return SurfaceKind::TwoPlaneCorner;
    if (s == "heightfield" || s == "heightfield-from-grid") return SurfaceKind::Heightfield;
    return std::nullopt;
}

std::string to_string(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Plane: return "plane";
        case SurfaceKind::SineWall: return "sine-wall";
        case SurfaceKind::TwoPlaneCorner: return "two-plane-corner";
        case SurfaceKind::Heightfield: return "heightfield";
    }
    return "plane";
}

namespace {

struct Column {
    double x, y;
    Vec3 normal;  // horizontal, toward the observer side
};

std::size_t cells_for(double length, double cell) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / cell - 1e-9)));
}

// Extrudes a horizontal polyline of columns vertically into a triangle sheet.
SurfaceMesh extrude_columns(const std::vector<Column>& columns, const SurfaceParams& p,
                            std::mt19937_64& rng) {
    SurfaceMesh mesh;
    const std::size_t nz = cells_for(p.z_max - p.z_min, p.cell);
    std::normal_distribution<double> jitter(0.0, p.roughness > 0.0 ? p.roughness : 1.0);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (std::size_t r = 0; r <= nz; ++r) {
            const double z = p.z_min + (p.z_max - p.z_min) * static_cast<double>(r) /
                                           static_cast<double>(nz);
            Vec3 v(columns[c].x, columns[c].y, z);
            if (p.roughness > 0.0) {
                v += columns[c].normal * jitter(rng);
            }
            mesh.vertices.push_back(v);
        }
    }
    const auto stride = static_cast<std::uint32_t>(nz + 1);
    for (std::uint32_t c = 0; c + 1 < columns.size(); ++c) {
        for (std::uint32_t r = 0; r < nz; ++r) {
            const std::uint32_t a = c * stride + r;
            const std::uint32_t b = (c + 1) * stride + r;
            mesh.triangles.push_back({a, b, a + 1});
            mesh.triangles.push_back({b, b + 1, a + 1});
        }
    }
    return mesh;
}

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw Error(ErrorCode::InvalidParams, msg);
    }
}

}  // namespace

SurfaceMesh make_surface(SurfaceKind kind, const SurfaceParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    require(p.roughness >= 0.0 && std::isfinite(p.roughness), "roughness must be >= 0");
    SurfaceMesh mesh;

    if (kind == SurfaceKind::Heightfield) {
        require(p.heights.size() >= 2 && p.heights.front().size() >= 2,
                "heightfield needs at least a 2x2 grid");
        require(p.spacing > 0.0, "heightfield spacing must be > 0");
        const std::size_t rows = p.heights.size();
        const std::size_t cols = p.heights.front().size();
        for (const auto& row : p.heights) {
            require(row.size() == cols, "heightfield rows must have equal length");
            for (const double h : row) {
                require(std::isfinite(h), "heightfield values must be finite");
            }
        }
        std::normal_distribution<double> jitter(0.0, p.roughness > 0.0 ? p.roughness : 1.0);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                double h = p.heights[r][c];
                if (p.roughness > 0.0) {
                    h += jitter(rng);
                }
                mesh.vertices.push_back(p.origin + Vec3(static_cast<double>(c) * p.spacing,
                                                        static_cast<double>(r) * p.spacing, h));
            }
        }
        for (std::uint32_t r = 0; r + 1 < rows; ++r) {
            for (std::uint32_t c = 0; c + 1 < cols; ++c) {
                const auto a = static_cast<std::uint32_t>(r * cols + c);
                const auto b = static_cast<std::uint32_t>((r + 1) * cols + c);
                mesh.triangles.push_back({a, a + 1, b});
                mesh.triangles.push_back({a + 1, b + 1, b});
            }
        }
        mesh.generator = "heightfield";
        mesh.generator_params = {{"rows", static_cast<double>(rows)},
                                 {"cols", static_cast<double>(cols)},
                                 {"spacing", p.spacing},
                                 {"roughness", p.roughness}};
        return sanitize_mesh(std::move(mesh));
    }

    require(std::isfinite(p.offset), "offset must be finite");
    require(p.y_max > p.y_min, "y_max must exceed y_min");
    require(p.z_max > p.z_min, "z_max must exceed z_min");
    require(p.cell > 0.0, "cell must be > 0");

    std::vector<Column> columns;
    const std::size_t ny = cells_for(p.y_max - p.y_min, p.cell);
    for (std::size_t i = 0; i <= ny; ++i) {
        const double y = p.y_min + (p.y_max - p.y_min) * static_cast<double>(i) /
                                       static_cast<double>(ny);
        double x = p.offset;
        if (kind == SurfaceKind::SineWall) {
            x += p.amplitude * std::sin(2.0 * kPi * y / p.wavelength);
        }
        columns.push_back({x, y, -Vec3::UnitX()});
    }

    if (kind == SurfaceKind::SineWall) {
        require(p.amplitude >= 0.0, "amplitude must be >= 0");
        require(p.wavelength > 0.0, "wavelength must be > 0");
    } else if (kind == SurfaceKind::TwoPlaneCorner) {
        require(p.corner_angle_deg > 0.0 && p.corner_angle_deg < 360.0,
                "corner_angle_deg must be in (0, 360)");
        require(p.leg_length > 0.0, "leg_length must be > 0");
        const double turn = kPi - deg2rad(p.corner_angle_deg);
        const Vec3 dir(std::sin(turn), std::cos(turn), 0.0);
        const Vec3 normal(-dir.y(), dir.x(), 0.0);
        // The edge column is shared by both faces.
        columns.back().normal = (columns.back().normal + normal).normalized();
        const std::size_t n2 = cells_for(p.leg_length, p.cell);
        for (std::size_t i = 1; i <= n2; ++i) {
            const double s = p.leg_length * static_cast<double>(i) / static_cast<double>(n2);
            columns.push_back({p.offset + dir.x() * s, p.y_max + dir.y() * s, normal});
        }
    }

    mesh = extrude_columns(columns, p, rng);
    mesh.generator = to_string(kind);
    mesh.generator_params = {{"offset", p.offset},   {"y_min", p.y_min}, {"y_max", p.y_max},
                             {"z_min", p.z_min},     {"z_max", p.z_max}, {"cell", p.cell},
                             {"roughness", p.roughness}};
    if (kind == SurfaceKind::SineWall) {
        mesh.generator_params["amplitude"] = p.amplitude;
        mesh.generator_params["wavelength"] = p.wavelength;
    }
    if (kind == SurfaceKind::TwoPlaneCorner) {
        mesh.generator_params["corner_angle_deg"] = p.corner_angle_deg;
        mesh.generator_params["leg_length"] = p.leg_length;
    }
    return sanitize_mesh(std::move(mesh));
}

SurfaceMesh recede_face(const SurfaceMesh& mesh, const Vec3& direction, double distance) {
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
        throw Error(ErrorCode::InvalidParams, "recede distance must be finite and >= 0");
    }
    const double n = direction.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidParams, "recede direction must be non-zero");
    }
    SurfaceMesh out = mesh;
    const Vec3 shift = direction / n * distance;
    for (auto& v : out.vertices) {
        v += shift;
    }
    return out;
}

PointCloud sample_surface(const SurfaceMesh& mesh, std::size_t count, std::uint64_t seed) {
    if (mesh.empty()) {
        throw Error(ErrorCode::InvalidParams, "cannot sample an empty mesh");
    }
    std::vector<double> cumulative;
    cumulative.reserve(mesh.triangles.size());
    double total = 0.0;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto [a, b, c] = mesh.corners(i);
        total += 0.5 * (b - a).cross(c - a).norm();
        cumulative.push_back(total);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    PointCloud cloud;
    cloud.points.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double pick = uni(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
        if (it == cumulative.end()) {
            --it;
        }
        const auto [a, b, c] = mesh.corners(static_cast<std::size_t>(it - cumulative.begin()));
        const double r1 = std::sqrt(uni(rng));
        const double r2 = uni(rng);
        cloud.points.push_back(a * (1.0 - r1) + b * (r1 * (1.0 - r2)) + c * (r1 * r2));
    }
    return cloud;
}

}  // namespace firstlook
