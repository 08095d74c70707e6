#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spatialui/core/geometry.hpp"

namespace spatialui {

// ---------------------------------------------------------------------------
// Web Mercator

inline constexpr double kMaxMercatorLatitude = 85.05113;

struct MapPlaneSpec {
    double extent = 2.0;  // plane spans [-extent/2, extent/2] in x and y
    double scale = 1.0;

    void validate() const;
};

struct MapPoint {
    double x = 0.0;
    double y = 0.0;
};

struct LatLon {
    double latitude = 0.0;
    double longitude = 0.0;
};

/// Latitude/longitude in degrees to meters on the map plane. Throws
/// OutOfDomain outside |lat| <= 85.05113, lon in [-180, 180).
MapPoint mercator_project(double latitude, double longitude, const MapPlaneSpec& spec);

/// Inverse of mercator_project. Throws OutOfDomain outside the scaled extent.
LatLon mercator_unproject(double x, double y, const MapPlaneSpec& spec);

// ---------------------------------------------------------------------------
// EV chargers

enum class ChargerType { Slow, Fast, Rapid };

const char* to_string(ChargerType type) noexcept;
std::optional<ChargerType> charger_type_from_string(std::string_view text) noexcept;

struct ChargerRecord {
    std::string id;
    double latitude = 0.0;
    double longitude = 0.0;
    ChargerType type = ChargerType::Slow;
    bool available = false;
    std::optional<std::string> scan_path;

    bool operator==(const ChargerRecord&) const = default;
};

/// Empty `types` means every type.
struct ChargerQuery {
    std::set<ChargerType> types;
    bool available_only = false;

    bool matches(const ChargerRecord& record) const;
};

std::vector<ChargerRecord> query_chargers(const std::vector<ChargerRecord>& records, const ChargerQuery& query);

struct RowError {
    int line = 0;
    std::string message;
};

struct ChargerLoad {
    std::vector<ChargerRecord> records;
    std::vector<RowError> errors;
};

/// Parses `id,lat,lon,type,available,scan_path` CSV. Bad rows are collected
/// with their 1-based line numbers; a missing header throws Format.
ChargerLoad load_chargers(std::string_view csv_text);

// ---------------------------------------------------------------------------
// Point clouds

struct CloudPoint {
    Vec3 position = Vec3::Zero();
    std::array<std::uint8_t, 3> color{255, 255, 255};
};

struct PointCloud {
    std::vector<CloudPoint> points;
};

/// ASCII PLY 1.0 with x, y, z vertex properties and optional red, green, blue.
PointCloud load_point_cloud(std::string_view ply_text);

}  // namespace spatialui
