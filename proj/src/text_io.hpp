#ifndef FIRSTLOOK_SRC_TEXT_IO_HPP_
#define FIRSTLOOK_SRC_TEXT_IO_HPP_

// Line-oriented ASCII helpers shared by the cloud, mesh and log readers.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "firstlook/geometry.hpp"

namespace firstlook::detail {

std::ifstream open_for_read(const std::filesystem::path& path);
std::ofstream open_for_write(const std::filesystem::path& path);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delim);
std::vector<std::string_view> split_ws(std::string_view s);

/// Parses a double (accepts nan/inf). Throws ParseError naming the line on failure.
double parse_double(std::string_view token, std::size_t line);
long long parse_int(std::string_view token, std::size_t line);

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

struct PlyElement {
    std::string name;
    std::size_t count{0};
    std::vector<std::string> properties;  // scalar property names in order; "list" marks a list
};

struct PlyHeader {
    std::vector<PlyElement> elements;
    std::size_t header_lines{0};
};

/// Reads "ply ... end_header" from the stream; only the ascii format is accepted.
PlyHeader read_ply_header(std::istream& in, const std::filesystem::path& path);

/// Reads the next non-empty line of a ply body; throws ParseError when the file ends early.
std::string_view next_ply_line(std::istream& in, std::string& buffer, std::size_t& line_no,
                               const std::filesystem::path& path);

struct PlyVertices {
    std::vector<Vec3> points;
    std::size_t dropped{0};
};

/// Reads the vertex element (x, y, z looked up by name); other elements are skipped
/// unless a face element follows, which is returned through faces when non-null.
PlyVertices read_ply(std::istream& in, const std::filesystem::path& path, bool keep_non_finite,
                     std::vector<std::vector<long long>>* faces);

}  // namespace firstlook::detail

#endif  // FIRSTLOOK_SRC_TEXT_IO_HPP_
