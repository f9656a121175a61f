#include "text_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "firstlook/error.hpp"

namespace firstlook::detail {

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

double parse_double(std::string_view token, std::size_t line) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec == std::errc::invalid_argument || ptr != last) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
    }
    if (ec == std::errc::result_out_of_range) {
        // from_chars leaves value untouched on overflow; treat as non-finite.
        value = std::numeric_limits<double>::infinity();
    }
    return value;
}

long long parse_int(std::string_view token, std::size_t line) {
    token = trim(token);
    long long value = 0;
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": bad integer '" + std::string(token) + "'");
    }
    return value;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

PlyHeader read_ply_header(std::istream& in, const std::filesystem::path& path) {
    PlyHeader header;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::ParseError,
                    path.string() + " line " + std::to_string(line_no) + ": " + msg);
    };
    if (!std::getline(in, line) || trim(line) != "ply") {
        ++line_no;
        fail("missing 'ply' magic");
    }
    ++line_no;
    bool saw_format = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_ws(trim(line));
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "end_header") {
            if (!saw_format) {
                fail("missing format line");
            }
            header.header_lines = line_no;
            return header;
        }
        if (tokens[0] == "comment" || tokens[0] == "obj_info") {
            continue;
        }
        if (tokens[0] == "format") {
            if (tokens.size() < 2 || tokens[1] != "ascii") {
                fail("only ascii ply is supported");
            }
            saw_format = true;
        } else if (tokens[0] == "element") {
            if (tokens.size() != 3) {
                fail("malformed element line");
            }
            const auto count = parse_int(tokens[2], line_no);
            if (count < 0) {
                fail("negative element count");
            }
            header.elements.push_back({std::string(tokens[1]), static_cast<std::size_t>(count), {}});
        } else if (tokens[0] == "property") {
            if (header.elements.empty()) {
                fail("property before element");
            }
            if (tokens.size() >= 2 && tokens[1] == "list") {
                if (tokens.size() != 5) {
                    fail("malformed list property");
                }
                header.elements.back().properties.emplace_back("list");
            } else if (tokens.size() == 3) {
                header.elements.back().properties.emplace_back(tokens[2]);
            } else {
                fail("malformed property line");
            }
        } else {
            fail("unexpected header keyword '" + std::string(tokens[0]) + "'");
        }
    }
    fail("missing end_header");
    return header;
}

std::string_view next_ply_line(std::istream& in, std::string& buffer, std::size_t& line_no,
                               const std::filesystem::path& path) {
    while (std::getline(in, buffer)) {
        ++line_no;
        const auto t = trim(buffer);
        if (!t.empty()) {
            return t;
        }
    }
    throw Error(ErrorCode::ParseError,
                path.string() + " line " + std::to_string(line_no) + ": unexpected end of file");
}

PlyVertices read_ply(std::istream& in, const std::filesystem::path& path, bool keep_non_finite,
                     std::vector<std::vector<long long>>* faces) {
    const PlyHeader header = read_ply_header(in, path);
    PlyVertices out;
    std::string buffer;
    std::size_t line_no = header.header_lines;
    bool have_vertices = false;

    for (const auto& element : header.elements) {
        if (element.name == "vertex") {
            int ix = -1, iy = -1, iz = -1;
            for (std::size_t i = 0; i < element.properties.size(); ++i) {
                const auto& p = element.properties[i];
                if (p == "list") {
                    throw Error(ErrorCode::ParseError,
                                path.string() + ": list properties on vertices are not supported");
                }
                if (p == "x") ix = static_cast<int>(i);
                if (p == "y") iy = static_cast<int>(i);
                if (p == "z") iz = static_cast<int>(i);
            }
            if (ix < 0 || iy < 0 || iz < 0) {
                throw Error(ErrorCode::ParseError, path.string() + ": vertex element lacks x/y/z");
            }
            out.points.reserve(element.count);
            for (std::size_t n = 0; n < element.count; ++n) {
                const auto tokens = split_ws(next_ply_line(in, buffer, line_no, path));
                if (tokens.size() != element.properties.size()) {
                    throw Error(ErrorCode::ParseError,
                                path.string() + " line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(element.properties.size()) +
                                    " values");
                }
                const Vec3 p(parse_double(tokens[static_cast<std::size_t>(ix)], line_no),
                             parse_double(tokens[static_cast<std::size_t>(iy)], line_no),
                             parse_double(tokens[static_cast<std::size_t>(iz)], line_no));
                if (!keep_non_finite && !is_finite(p)) {
                    ++out.dropped;
                    continue;
                }
                out.points.push_back(p);
            }
            have_vertices = true;
        } else if (element.name == "face" && faces != nullptr) {
            if (element.properties.empty() || element.properties[0] != "list") {
                throw Error(ErrorCode::ParseError,
                            path.string() + ": face element must start with a list property");
            }
            faces->reserve(element.count);
            for (std::size_t n = 0; n < element.count; ++n) {
                const auto tokens = split_ws(next_ply_line(in, buffer, line_no, path));
                if (tokens.empty()) {
                    throw Error(ErrorCode::ParseError,
                                path.string() + " line " + std::to_string(line_no) + ": empty face");
                }
                const auto k = parse_int(tokens[0], line_no);
                if (k < 0 || tokens.size() < static_cast<std::size_t>(k) + 1) {
                    throw Error(ErrorCode::ParseError, path.string() + " line " +
                                                           std::to_string(line_no) +
                                                           ": face index count mismatch");
                }
                std::vector<long long> idx;
                for (long long i = 0; i < k; ++i) {
                    idx.push_back(parse_int(tokens[static_cast<std::size_t>(i + 1)], line_no));
                }
                faces->push_back(std::move(idx));
            }
        } else {
            for (std::size_t n = 0; n < element.count; ++n) {
                next_ply_line(in, buffer, line_no, path);
            }
        }
    }
    if (!have_vertices) {
        throw Error(ErrorCode::ParseError, path.string() + ": no vertex element");
    }
    return out;
}

}  // namespace firstlook::detail
