#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace gazesa {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

/// Axis-aligned bounding box in degrees of visual angle.
struct BBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    bool well_formed() const { return xmin <= xmax && ymin <= ymax; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    Vec2 center() const { return {(xmin + xmax) * 0.5, (ymin + ymax) * 0.5}; }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    bool operator==(const BBox&) const = default;
};

/// Distance from a point to the nearest edge of a box; 0 on or inside.
inline double point_box_distance(Vec2 g, const BBox& b) {
    double dx = std::max({b.xmin - g.x, 0.0, g.x - b.xmax});
    double dy = std::max({b.ymin - g.y, 0.0, g.y - b.ymax});
    return std::hypot(dx, dy);
}

struct RegionPolygon {
    std::string region_id;
    std::vector<Vec2> vertices;
    bool operator==(const RegionPolygon&) const = default;
};

/// Even-odd ray-crossing test. Points exactly on an edge are
/// implementation-defined; callers should not rely on boundary hits.
inline bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

}  // namespace gazesa
