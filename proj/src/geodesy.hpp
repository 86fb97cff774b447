#pragma once

namespace habitat {

struct LonLat {
    double lon = 0.0;
    double lat = 0.0;
    bool operator==(const LonLat&) const = default;
};

namespace geo {

/// Mean Earth radius; the toolkit models a sphere, no ellipsoid.
inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kEarthRadiusM = kEarthRadiusKm * 1000.0;

/// Local meters-per-degree scale used for small (sub-10 km) displacement
/// conversions. Slightly larger than the spherical meridian degree, so
/// converted offsets land inside the requested radius.
inline constexpr double kMetersPerDegree = 111320.0;

double deg2rad(double deg);

/// Great-circle distance in meters (haversine).
double haversine_m(LonLat a, LonLat b);

/// Point displaced from `origin` by `distance_m` along `bearing_rad`
/// (0 = north, pi/2 = east), using the local planar scale above.
LonLat offset_local(LonLat origin, double distance_m, double bearing_rad);

/// Distance in meters from `p` to the segment [a, b], in a local
/// equirectangular projection centered on `p`. Adequate at desk scale.
double point_segment_distance_m(LonLat p, LonLat a, LonLat b);

/// Area in km^2 of a spherical quadrangle spanning `dlon_deg` of longitude
/// between two parallels: A = R^2 * dlon * (sin(lat_top) - sin(lat_bottom)).
double cell_area_km2(double lat_bottom_deg, double lat_top_deg, double dlon_deg);

}  // namespace geo
}  // namespace habitat
