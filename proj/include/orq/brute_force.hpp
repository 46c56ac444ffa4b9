#pragma once

#include "orq/geometry.hpp"
#include "orq/point_set.hpp"

namespace orq {

// Linear-scan reference implementations of every query type. These are the
// ground truth the indexed engines are tested against; no attempt is made to
// be fast.
namespace brute {

inline IdSet scan_halfplane(const PointSet& s, const HalfPlane& h) {
    IdSet out;
    for (const Point& p : s.points())
        if (h.contains(p)) out.push_back(p.id);
    return out;
}

/// Region (-inf, b] x (-inf, c].
inline IdSet scan_quadrant(const PointSet& s, i64 b, i64 c) {
    IdSet out;
    for (const Point& p : s.points())
        if (p.x <= b && p.y <= c) out.push_back(p.id);
    return out;
}

inline IdSet scan_rect(const PointSet& s, const AxisRect& r) {
    IdSet out;
    for (const Point& p : s.points())
        if (r.contains(p)) out.push_back(p.id);
    return out;
}

inline IdSet scan_triangle(const PointSet& s, const OrthoTriangle& t) {
    IdSet out;
    for (const Point& p : s.points())
        if (t.contains(p)) out.push_back(p.id);
    return out;
}

inline IdSet scan_polygon(const PointSet& s, const CanonicalPolygon& poly) {
    IdSet out;
    for (const Point& p : s.points())
        if (point_in_polygon(p, poly)) out.push_back(p.id);
    return out;
}

}  // namespace brute
}  // namespace orq
