#pragma once

// Geodesic primitives: great-circle distances between flight/station
// positions and fiber-length-derived propagation delays.
//
// Earth is treated as a sphere of radius 6371 km and distances use the
// haversine formula; at the few-hundred-km scales of air-to-ground
// visibility this is accurate to well under a kilometer.

#include <cmath>
#include <numbers>

#include "sjspr/common.hpp"

namespace sjspr {

inline constexpr double kEarthRadiusKm = 6371.0;

// Speed of light in optical fiber, km per millisecond.
inline constexpr double kFiberKmPerMs = 200.0;

struct GeoPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]

    GeoPoint() = default;

    // Normalizes on construction: longitude wraps into [-180, 180],
    // latitude is clamped to [-90, 90].
    GeoPoint(double lat_deg, double lon_deg) {
        lat = lat_deg < -90.0 ? -90.0 : (lat_deg > 90.0 ? 90.0 : lat_deg);
        lon = std::fmod(lon_deg, 360.0);
        if (lon > 180.0) lon -= 360.0;
        if (lon < -180.0) lon += 360.0;
    }

    bool operator==(const GeoPoint&) const = default;
};

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Haversine great-circle distance in km. Symmetric and nonnegative.
inline double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg2rad(a.lat);
    const double phi2 = deg2rad(b.lat);
    const double dphi = deg2rad(b.lat - a.lat);
    const double dlam = deg2rad(b.lon - a.lon);
    const double s = std::sin(dphi / 2.0);
    const double t = std::sin(dlam / 2.0);
    double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
    if (h > 1.0) h = 1.0;
    if (h < 0.0) h = 0.0;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

// Propagation delay of an optical fiber run of the given length.
// Rejects negative distances; linear in distance.
inline double fiber_delay_ms(double distance_km, double km_per_ms = kFiberKmPerMs) {
    if (distance_km < 0.0)
        throw InputError("fiber_delay_ms: negative distance " + fmt_g10(distance_km));
    if (km_per_ms <= 0.0)
        throw InputError("fiber_delay_ms: propagation speed must be positive");
    return distance_km / km_per_ms;
}

}  // namespace sjspr
