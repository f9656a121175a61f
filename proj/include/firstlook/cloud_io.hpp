#ifndef FIRSTLOOK_CLOUD_IO_HPP_
#define FIRSTLOOK_CLOUD_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>

#include "firstlook/geometry.hpp"

namespace firstlook {

enum class CloudFormat { PlyAscii, XyzCsv };

struct CloudLoadResult {
    PointCloud cloud;
    std::size_t dropped{0};  // rows with a non-finite coordinate
};

/// Guesses the format from the extension (.ply, .csv/.xyz/.txt).
std::optional<CloudFormat> cloud_format_from_path(const std::filesystem::path& path);

CloudLoadResult load_cloud(const std::filesystem::path& path, CloudFormat format);
void save_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format);

}  // namespace firstlook

#endif  // FIRSTLOOK_CLOUD_IO_HPP_
