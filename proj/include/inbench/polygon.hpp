#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace inbench {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const;
};

using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& p);
Vec2 polygon_centroid(const Polygon& p);
bool is_ccw(const Polygon& p);
bool is_convex(const Polygon& p);
// Simple polygon check: no two non-adjacent edges intersect, no repeated
// vertices, no zero-length edges. O(n^2), polygons here are tiny.
bool is_simple(const Polygon& p);

Polygon transformed(const Polygon& p, const Vec2& translation, double rotation);

// Even-odd test; points exactly on the boundary are implementation-defined
// at double precision (callers keep test points off edges).
bool point_in_polygon(const Vec2& pt, const Polygon& poly);

double segment_point_distance(const Vec2& a, const Vec2& b, const Vec2& p);
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// Minimum distance between the boundaries of two polygons.
double boundary_distance(const Polygon& a, const Polygon& b);

// True iff every vertex of inner lies strictly inside outer and no edges
// cross. Boundary contact counts as not contained.
bool polygon_inside(const Polygon& inner, const Polygon& outer);

// Signed containment margin: +boundary distance when inner is inside outer,
// otherwise minus the deepest vertex excursion outside outer.
double containment_margin(const Polygon& inner, const Polygon& outer);

// Direction (unit) and point of deepest violation when not contained; used
// for wall reaction forces. Returns false when contained.
struct Violation {
    Vec2 point;      // offending inner vertex
    Vec2 push;       // unit direction restoring containment
    double depth = 0.0;
};
bool deepest_violation(const Polygon& inner, const Polygon& outer, Violation& out);

// Support point: vertex of p maximizing dot(v, dir).
Vec2 support_point(const Polygon& p, const Vec2& dir);

// Clips subject (any simple polygon) against a convex clip polygon.
// Output may contain zero-width bridges; its shoelace area and first moments
// equal those of the true intersection.
Polygon clip_convex(const Polygon& subject, const Polygon& convex_clip);

// Fan-free ear-clipping triangulation of a simple CCW polygon; returns
// vertex index triples.
std::vector<std::array<size_t, 3>> triangulate(const Polygon& p);

// Area and area-weighted first moment (integral of (x, y) dA).
struct AreaMoment {
    double area = 0.0;
    Vec2 moment; // divide by area for the centroid
};
AreaMoment area_moment(const Polygon& p);

// Area and moment of a ∩ b for simple CCW polygons (b may be non-convex;
// it is triangulated internally).
AreaMoment intersection_moment(const Polygon& a, const Polygon& b);

// Outward offset by distance d with mitered joins. Valid for the shape
// families used here (notches wider than 2d).
Polygon offset_polygon(const Polygon& p, double d);

} // namespace inbench
