#include "json_util.hpp"

#include <cmath>
#include <cstdio>

namespace spatialui::detail {

std::string format_number(double value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "cannot serialize a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string quote(std::string_view text) { return json(std::string(text)).dump(); }

std::string format_vec3(const Vec3& v) {
    return "[" + format_number(v.x()) + "," + format_number(v.y()) + "," + format_number(v.z()) + "]";
}

std::string format_quat(const Quat& q) {
    return "[" + format_number(q.x()) + "," + format_number(q.y()) + "," + format_number(q.z()) + "," +
           format_number(q.w()) + "]";
}

json parse_json(std::string_view text, ErrorCode on_error, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(on_error, std::string(what) + ": " + e.what());
    }
}

double read_number(const json& j, std::string_view what, ErrorCode on_error) {
    if (!j.is_number()) throw Error(on_error, std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(on_error, std::string(what) + " must be finite");
    return v;
}

Vec3 read_vec3(const json& j, std::string_view what, ErrorCode on_error) {
    if (!j.is_array() || j.size() != 3) throw Error(on_error, std::string(what) + " must be [x,y,z]");
    return {read_number(j[0], what, on_error), read_number(j[1], what, on_error),
            read_number(j[2], what, on_error)};
}

Quat read_quat(const json& j, std::string_view what, ErrorCode on_error) {
    if (!j.is_array() || j.size() != 4) throw Error(on_error, std::string(what) + " must be [x,y,z,w]");
    // Eigen's element constructor takes w first.
    Quat q(read_number(j[3], what, on_error), read_number(j[0], what, on_error), read_number(j[1], what, on_error),
           read_number(j[2], what, on_error));
    const double n = q.norm();
    if (!(n > 1e-9)) throw Error(on_error, std::string(what) + " is a zero quaternion");
    if (std::abs(n - 1.0) > 1e-6) q.coeffs() /= n;
    return q;
}

}  // namespace spatialui::detail
