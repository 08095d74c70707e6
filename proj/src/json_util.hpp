#pragma once

// Private helpers shared by the JSON readers and writers.

#include <string>
#include <string_view>

#include "json.hpp"

#include "spatialui/core/geometry.hpp"

namespace spatialui::detail {

using nlohmann::json;

/// Text for a finite double with 9 significant digits.
std::string format_number(double value);

/// JSON string literal with escaping.
std::string quote(std::string_view text);

/// "[x,y,z]" / "[x,y,z,w]" with format_number.
std::string format_vec3(const Vec3& v);
std::string format_quat(const Quat& q);

json parse_json(std::string_view text, ErrorCode on_error, std::string_view what);

double read_number(const json& j, std::string_view what, ErrorCode on_error);
Vec3 read_vec3(const json& j, std::string_view what, ErrorCode on_error);

/// Reads [x,y,z,w], renormalizing only when the norm is off by more than 1e-6.
Quat read_quat(const json& j, std::string_view what, ErrorCode on_error);

}  // namespace spatialui::detail
