#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodesy.hpp"

namespace habitat {

enum class PolygonRole { unspecified, range_map, zone };

/// Closed vertex ring (first vertex repeated as the last), lon/lat order.
struct Ring {
    std::vector<LonLat> vertices;
};

/// One named feature: the first ring is the outer boundary; additional rings
/// are holes (or further parts, for MultiPolygon features). Membership is
/// even-odd over all rings, so holes need no special casing.
struct NamedPolygon {
    std::string name;
    std::vector<Ring> rings;
};

struct PolygonSet {
    PolygonRole role = PolygonRole::unspecified;
    std::vector<NamedPolygon> polygons;
};

/// Parses the GeoJSON subset FeatureCollection -> Feature ->
/// Polygon/MultiPolygon with [lon, lat] coordinates. Feature names come from
/// properties.name, falling back to "feature_<index>". Unclosed rings, rings
/// with fewer than four vertices, non-finite vertices and non-polygon
/// geometries are errors naming the feature.
PolygonSet parse_polygons(std::string_view geojson_text);

/// Serializes the set as a GeoJSON FeatureCollection (one Polygon or
/// MultiPolygon per feature). parse_polygons round-trips it.
std::string write_polygons(const PolygonSet& set);

/// Even-odd (ray casting) membership over a group of rings. Points exactly
/// on an edge count as inside.
bool point_in_rings(LonLat p, std::span<const Ring> rings);

bool point_in_polygon(LonLat p, const NamedPolygon& polygon);

/// True when p is inside any feature of the set (edge points inside).
bool point_in_polygonset(LonLat p, const PolygonSet& set);

}  // namespace habitat
