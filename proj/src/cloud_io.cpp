#include "firstlook/cloud_io.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "firstlook/error.hpp"
#include "text_io.hpp"

namespace firstlook {

namespace {

CloudLoadResult load_xyz_csv(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    CloudLoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = detail::trim(line);
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = detail::trim(body.substr(0, hash));
        }
        if (body.empty()) {
            continue;
        }
        const auto fields = detail::split(body, ',');
        if (fields.size() != 3) {
            throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no) +
                                                   ": expected 3 comma-separated values");
        }
        const Vec3 p(detail::parse_double(fields[0], line_no),
                     detail::parse_double(fields[1], line_no),
                     detail::parse_double(fields[2], line_no));
        if (!is_finite(p)) {
            ++result.dropped;
            continue;
        }
        result.cloud.points.push_back(p);
    }
    if (in.bad()) {
        throw Error(ErrorCode::IoError, "read failure on " + path.string());
    }
    return result;
}

CloudLoadResult load_ply(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    auto vertices = detail::read_ply(in, path, false, nullptr);
    CloudLoadResult result;
    result.cloud.points = std::move(vertices.points);
    result.dropped = vertices.dropped;
    return result;
}

}  // namespace

std::optional<CloudFormat> cloud_format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".ply") return CloudFormat::PlyAscii;
    if (ext == ".csv" || ext == ".xyz" || ext == ".txt") return CloudFormat::XyzCsv;
    return std::nullopt;
}

CloudLoadResult load_cloud(const std::filesystem::path& path, CloudFormat format) {
    return format == CloudFormat::PlyAscii ? load_ply(path) : load_xyz_csv(path);
}

void save_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format) {
    auto out = detail::open_for_write(path);
    if (format == CloudFormat::PlyAscii) {
        out << "ply\nformat ascii 1.0\n"
            << "element vertex " << cloud.size() << "\n"
            << "property double x\nproperty double y\nproperty double z\n"
            << "end_header\n";
    } else {
        out << "# x,y,z\n";
    }
    const char sep = format == CloudFormat::PlyAscii ? ' ' : ',';
    std::string line;
    for (const auto& p : cloud.points) {
        line.clear();
        line += detail::format_double(p.x());
        line += sep;
        line += detail::format_double(p.y());
        line += sep;
        line += detail::format_double(p.z());
        line += '\n';
        out << line;
    }
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write failure on " + path.string());
    }
}

}  // namespace firstlook
