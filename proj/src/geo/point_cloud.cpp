#include <algorithm>
#include <cmath>
#include <string>

#include "spatialui/geo/geo.hpp"
#include "text_util.hpp"

namespace spatialui {

namespace {

struct PlyProperty {
    std::string name;
    bool is_list = false;
    bool is_float = false;
};

struct PlyElement {
    std::string name;
    long long count = 0;
    std::vector<PlyProperty> properties;
};

bool is_float_type(std::string_view type) {
    return type == "float" || type == "double" || type == "float32" || type == "float64";
}

std::uint8_t to_channel(double v, bool is_float) {
    if (is_float) v *= 255.0;
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

PointCloud load_point_cloud(std::string_view ply_text) {
    const std::vector<std::string_view> lines = detail::split_lines(ply_text);
    if (lines.empty() || detail::trim(lines[0]) != "ply") {
        throw Error(ErrorCode::Format, "not a PLY file (missing 'ply' magic)");
    }

    std::vector<PlyElement> elements;
    std::size_t cursor = 1;
    bool ascii = false;
    bool header_done = false;
    for (; cursor < lines.size(); ++cursor) {
        const auto tok = detail::split_whitespace(lines[cursor]);
        if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "end_header") {
            header_done = true;
            ++cursor;
            break;
        }
        if (tok[0] == "format") {
            if (tok.size() < 2) throw Error(ErrorCode::Format, "malformed PLY format line");
            if (tok[1] != "ascii") {
                throw Error(ErrorCode::UnsupportedFormat, "only ASCII PLY is supported, got " + std::string(tok[1]));
            }
            ascii = true;
        } else if (tok[0] == "element") {
            if (tok.size() != 3) throw Error(ErrorCode::Format, "malformed PLY element line");
            PlyElement e;
            e.name = std::string(tok[1]);
            const std::optional<double> n = detail::parse_double(tok[2]);
            if (!n || *n < 0 || *n != std::floor(*n)) throw Error(ErrorCode::Format, "bad PLY element count");
            e.count = static_cast<long long>(*n);
            elements.push_back(std::move(e));
        } else if (tok[0] == "property") {
            if (elements.empty()) throw Error(ErrorCode::Format, "PLY property before any element");
            PlyProperty p;
            if (tok.size() >= 5 && tok[1] == "list") {
                p.is_list = true;
                p.name = std::string(tok[4]);
            } else if (tok.size() == 3) {
                p.is_float = is_float_type(tok[1]);
                p.name = std::string(tok[2]);
            } else {
                throw Error(ErrorCode::Format, "malformed PLY property line");
            }
            elements.back().properties.push_back(std::move(p));
        } else {
            throw Error(ErrorCode::Format, "unexpected PLY header line: " + std::string(lines[cursor]));
        }
    }
    if (!header_done) throw Error(ErrorCode::Format, "PLY header has no end_header");
    if (!ascii) throw Error(ErrorCode::Format, "PLY header has no format line");

    PointCloud cloud;
    for (const PlyElement& e : elements) {
        if (e.name != "vertex") {
            if (cursor + static_cast<std::size_t>(e.count) > lines.size()) {
                throw Error(ErrorCode::TruncatedFile, "PLY element '" + e.name + "' is truncated");
            }
            cursor += static_cast<std::size_t>(e.count);
            continue;
        }

        int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
        for (int i = 0; i < static_cast<int>(e.properties.size()); ++i) {
            const PlyProperty& p = e.properties[i];
            if (p.is_list) throw Error(ErrorCode::UnsupportedFormat, "list properties on vertices are unsupported");
            if (p.name == "x") ix = i;
            if (p.name == "y") iy = i;
            if (p.name == "z") iz = i;
            if (p.name == "red" || p.name == "r") ir = i;
            if (p.name == "green" || p.name == "g") ig = i;
            if (p.name == "blue" || p.name == "b") ib = i;
        }
        if (ix < 0 || iy < 0 || iz < 0) throw Error(ErrorCode::Format, "PLY vertices need x, y and z");

        cloud.points.reserve(static_cast<std::size_t>(e.count));
        for (long long v = 0; v < e.count; ++v, ++cursor) {
            if (cursor >= lines.size() || detail::trim(lines[cursor]).empty()) {
                throw Error(ErrorCode::TruncatedFile, "PLY declares " + std::to_string(e.count) +
                                                          " vertices but holds " + std::to_string(v));
            }
            const auto tok = detail::split_whitespace(lines[cursor]);
            if (tok.size() < e.properties.size()) {
                throw Error(ErrorCode::Format, "PLY vertex line " + std::to_string(cursor + 1) + " is short");
            }
            auto number = [&](int idx) {
                const std::optional<double> d = detail::parse_double(tok[idx]);
                if (!d) {
                    throw Error(ErrorCode::Format, "bad number on PLY line " + std::to_string(cursor + 1));
                }
                return *d;
            };
            CloudPoint pt;
            pt.position = Vec3(number(ix), number(iy), number(iz));
            if (ir >= 0) pt.color[0] = to_channel(number(ir), e.properties[ir].is_float);
            if (ig >= 0) pt.color[1] = to_channel(number(ig), e.properties[ig].is_float);
            if (ib >= 0) pt.color[2] = to_channel(number(ib), e.properties[ib].is_float);
            cloud.points.push_back(pt);
        }
    }
    if (cloud.points.empty()) throw Error(ErrorCode::Format, "PLY file holds no vertices");
    return cloud;
}

}  // namespace spatialui
