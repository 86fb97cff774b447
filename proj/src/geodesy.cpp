#include "geodesy.hpp"

#include <algorithm>
#include <cmath>

namespace habitat::geo {

double deg2rad(double deg) { return deg * (M_PI / 180.0); }

double haversine_m(LonLat a, LonLat b) {
    const double lat1 = deg2rad(a.lat);
    const double lat2 = deg2rad(b.lat);
    const double dlat = lat2 - lat1;
    const double dlon = deg2rad(b.lon - a.lon);
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    h = std::min(h, 1.0);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

LonLat offset_local(LonLat origin, double distance_m, double bearing_rad) {
    const double dlat = distance_m * std::cos(bearing_rad) / kMetersPerDegree;
    const double coslat = std::cos(deg2rad(origin.lat));
    const double dlon = distance_m * std::sin(bearing_rad) / (kMetersPerDegree * coslat);
    return LonLat{origin.lon + dlon, origin.lat + dlat};
}

double point_segment_distance_m(LonLat p, LonLat a, LonLat b) {
    // Equirectangular projection centered on p.
    const double meridian = M_PI * kEarthRadiusM / 180.0;
    const double parallel = meridian * std::cos(deg2rad(p.lat));
    const double ax = (a.lon - p.lon) * parallel;
    const double ay = (a.lat - p.lat) * meridian;
    const double bx = (b.lon - p.lon) * parallel;
    const double by = (b.lat - p.lat) * meridian;
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(-(ax * dx + ay * dy) / len2, 0.0, 1.0);
    const double cx = ax + t * dx;
    const double cy = ay + t * dy;
    return std::sqrt(cx * cx + cy * cy);
}

double cell_area_km2(double lat_bottom_deg, double lat_top_deg, double dlon_deg) {
    const double r2 = kEarthRadiusKm * kEarthRadiusKm;
    const double dlon = deg2rad(dlon_deg);
    return r2 * dlon * (std::sin(deg2rad(lat_top_deg)) - std::sin(deg2rad(lat_bottom_deg)));
}

}  // namespace habitat::geo
