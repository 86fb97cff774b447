#include "polygons.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace habitat {

namespace {

using nlohmann::json;

Ring parse_ring(const json& coords, const std::string& feature_name) {
    if (!coords.is_array() || coords.size() < 4)
        throw ParseError("feature '" + feature_name + "': ring must list at least 4 positions");
    Ring ring;
    ring.vertices.reserve(coords.size());
    for (const auto& position : coords) {
        if (!position.is_array() || position.size() < 2 || position.size() > 3 ||
            !position[0].is_number() || !position[1].is_number())
            throw ParseError("feature '" + feature_name + "': position must be [lon, lat]");
        const double lon = position[0].get<double>();
        const double lat = position[1].get<double>();
        if (!std::isfinite(lon) || !std::isfinite(lat))
            throw ParseError("feature '" + feature_name + "': non-finite vertex");
        ring.vertices.push_back(LonLat{lon, lat});
    }
    if (!(ring.vertices.front() == ring.vertices.back()))
        throw ParseError("feature '" + feature_name + "': unclosed ring");
    return ring;
}

void parse_polygon_rings(const json& coords, const std::string& feature_name,
                         std::vector<Ring>& out) {
    if (!coords.is_array() || coords.empty())
        throw ParseError("feature '" + feature_name + "': Polygon has no rings");
    for (const auto& ring : coords) out.push_back(parse_ring(ring, feature_name));
}

}  // namespace

PolygonSet parse_polygons(std::string_view geojson_text) {
    json doc;
    try {
        doc = json::parse(geojson_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw ParseError("document is not a FeatureCollection with a features array");

    PolygonSet set;
    std::size_t index = 0;
    for (const auto& feature : doc["features"]) {
        const std::string fallback = "feature_" + std::to_string(index);
        ++index;
        if (!feature.is_object() || feature.value("type", "") != "Feature")
            throw ParseError("entry " + fallback + " is not a Feature object");
        NamedPolygon poly;
        poly.name = fallback;
        if (feature.contains("properties") && feature["properties"].is_object()) {
            const auto& props = feature["properties"];
            if (props.contains("name") && props["name"].is_string())
                poly.name = props["name"].get<std::string>();
        }
        if (!feature.contains("geometry") || !feature["geometry"].is_object())
            throw ParseError("feature '" + poly.name + "' has no geometry");
        const auto& geometry = feature["geometry"];
        const std::string type = geometry.value("type", "");
        if (!geometry.contains("coordinates"))
            throw ParseError("feature '" + poly.name + "': geometry has no coordinates");
        const auto& coords = geometry["coordinates"];
        if (type == "Polygon") {
            parse_polygon_rings(coords, poly.name, poly.rings);
        } else if (type == "MultiPolygon") {
            if (!coords.is_array() || coords.empty())
                throw ParseError("feature '" + poly.name + "': MultiPolygon has no polygons");
            for (const auto& part : coords) parse_polygon_rings(part, poly.name, poly.rings);
        } else {
            throw ParseError("feature '" + poly.name + "': unsupported geometry type '" + type +
                             "'");
        }
        set.polygons.push_back(std::move(poly));
    }
    return set;
}

std::string write_polygons(const PolygonSet& set) {
    json features = json::array();
    for (const auto& poly : set.polygons) {
        json rings = json::array();
        for (const auto& ring : poly.rings) {
            json positions = json::array();
            for (const auto& v : ring.vertices) positions.push_back(json::array({v.lon, v.lat}));
            rings.push_back(std::move(positions));
        }
        features.push_back(json{{"type", "Feature"},
                                {"properties", {{"name", poly.name}}},
                                {"geometry", {{"type", "Polygon"}, {"coordinates", rings}}}});
    }
    const json doc{{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

namespace {

bool point_on_segment(LonLat p, LonLat a, LonLat b) {
    const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    if (cross != 0.0) return false;
    return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
           p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool point_in_rings(LonLat p, std::span<const Ring> rings) {
    // Edge points are inside by definition; resolve them before ray casting.
    for (const auto& ring : rings) {
        for (std::size_t i = 0; i + 1 < ring.vertices.size(); ++i)
            if (point_on_segment(p, ring.vertices[i], ring.vertices[i + 1])) return true;
    }
    bool inside = false;
    for (const auto& ring : rings) {
        for (std::size_t i = 0; i + 1 < ring.vertices.size(); ++i) {
            const LonLat a = ring.vertices[i];
            const LonLat b = ring.vertices[i + 1];
            if ((a.lat > p.lat) != (b.lat > p.lat)) {
                const double x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
                if (p.lon < x) inside = !inside;
            }
        }
    }
    return inside;
}

bool point_in_polygon(LonLat p, const NamedPolygon& polygon) {
    return point_in_rings(p, polygon.rings);
}

bool point_in_polygonset(LonLat p, const PolygonSet& set) {
    for (const auto& poly : set.polygons)
        if (point_in_polygon(p, poly)) return true;
    return false;
}

}  // namespace habitat
