#include <cmath>
#include <numbers>
#include <string>

#include "spatialui/geo/geo.hpp"

namespace spatialui {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;

}  // namespace

void MapPlaneSpec::validate() const {
    if (!(extent > 0) || !std::isfinite(extent)) throw Error(ErrorCode::InvalidArgument, "map extent must be > 0");
    if (!(scale > 0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "map scale must be > 0");
}

MapPoint mercator_project(double latitude, double longitude, const MapPlaneSpec& spec) {
    spec.validate();
    if (!(std::abs(latitude) <= kMaxMercatorLatitude)) {
        throw Error(ErrorCode::OutOfDomain, "latitude " + std::to_string(latitude) + " outside +/-85.05113");
    }
    if (!(longitude >= -180.0 && longitude < 180.0)) {
        throw Error(ErrorCode::OutOfDomain, "longitude " + std::to_string(longitude) + " outside [-180, 180)");
    }
    const double half = spec.extent / 2.0 * spec.scale;
    const double u = longitude / 180.0;
    // asinh(tan(phi)) equals ln(tan(pi/4 + phi/2)) and is exactly odd, so the
    // equator maps to 0.
    const double v = std::asinh(std::tan(latitude * kDegToRad)) / kPi;
    return {u * half, v * half};
}

LatLon mercator_unproject(double x, double y, const MapPlaneSpec& spec) {
    spec.validate();
    const double half = spec.extent / 2.0 * spec.scale;
    // The latitude cap rounds 85.0511288 up, so its image sits a hair past v = 1.
    static const double v_max = std::asinh(std::tan(kMaxMercatorLatitude * kDegToRad)) / kPi;
    if (!(std::abs(x) <= half) || !(std::abs(y) <= half * v_max)) {
        throw Error(ErrorCode::OutOfDomain, "map point lies outside the plane extent");
    }
    const double u = x / half;
    const double v = y / half;
    return {std::atan(std::sinh(v * kPi)) / kDegToRad, u * 180.0};
}

}  // namespace spatialui
