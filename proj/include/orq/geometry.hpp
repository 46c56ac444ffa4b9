#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "orq/errors.hpp"

namespace orq {

using i64 = std::int64_t;
using i128 = __int128;

// All input coordinates are required to satisfy |x|, |y| <= kCoordLimit so that
// every 3-point determinant and line evaluation stays exact in 128-bit arithmetic.
inline constexpr i64 kCoordLimit = i64{1} << 30;

inline int sign_of(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

struct Vec2 {
    i64 x{0};
    i64 y{0};
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline i128 cross(Vec2 a, Vec2 b) { return i128(a.x) * b.y - i128(a.y) * b.x; }
inline i128 dot(Vec2 a, Vec2 b) { return i128(a.x) * b.x + i128(a.y) * b.y; }

/// An identified planar point with integer coordinates.
struct Point {
    i64 id{0};
    i64 x{0};
    i64 y{0};
    Vec2 xy() const { return {x, y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline bool in_coordinate_range(i64 x, i64 y) {
    return x >= -kCoordLimit && x <= kCoordLimit && y >= -kCoordLimit && y <= kCoordLimit;
}

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

inline Orientation orientation(Vec2 p, Vec2 q, Vec2 r) {
    const i128 det = cross(q - p, r - p);
    return static_cast<Orientation>(sign_of(det));
}
inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
    return orientation(p.xy(), q.xy(), r.xy());
}

/// A line a*x + b*y + c = 0 held in canonical form: gcd(|a|,|b|,|c|) = 1 and
/// the leading nonzero coefficient of (a, b) positive.
struct QueryLine {
    i64 a{0};
    i64 b{1};
    i64 c{0};

    friend bool operator==(const QueryLine&, const QueryLine&) = default;

    // Canonicalizes raw coefficients. `negated` reports whether the stored
    // representative is the sign-flipped one; callers tracking evaluation signs
    // (half-plane sides, wedge sectors) must compensate.
    struct Canonical;
    static Canonical from_coeffs(i64 a, i64 b, i64 c);

    /// The canonical line through two distinct points.
    static QueryLine through(Vec2 p, Vec2 q);

    i128 eval(Vec2 p) const { return i128(a) * p.x + i128(b) * p.y + c; }
};

struct QueryLine::Canonical {
    QueryLine line;
    bool negated;
};

inline QueryLine::Canonical QueryLine::from_coeffs(i64 a, i64 b, i64 c) {
    if (a == 0 && b == 0) throw InvalidQuery("query line requires (a, b) != (0, 0)");
    i64 g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
    a /= g;
    b /= g;
    c /= g;
    const bool flip = a < 0 || (a == 0 && b < 0);
    if (flip) {
        a = -a;
        b = -b;
        c = -c;
    }
    return {QueryLine{a, b, c}, flip};
}

inline QueryLine QueryLine::through(Vec2 p, Vec2 q) {
    if (p == q) throw InvalidQuery("cannot span a line through coincident points");
    const i64 a = p.y - q.y;
    const i64 b = q.x - p.x;
    const i64 c = static_cast<i64>(cross(p, q));
    return from_coeffs(a, b, c).line;
}

enum class Side { Negative = -1, Zero = 0, Positive = 1 };

inline Side side_of_line(Vec2 p, const QueryLine& l) {
    return static_cast<Side>(sign_of(l.eval(p)));
}
inline Side side_of_line(const Point& p, const QueryLine& l) { return side_of_line(p.xy(), l); }

/// Closed half-plane {p : a*x + b*y + c >= 0} or <= 0.
struct HalfPlane {
    enum class Bound { NonNegative, NonPositive };

    QueryLine line;
    Bound side{Bound::NonNegative};

    static HalfPlane from_coeffs(i64 a, i64 b, i64 c, Bound side) {
        auto canon = QueryLine::from_coeffs(a, b, c);
        if (canon.negated) {
            side = side == Bound::NonNegative ? Bound::NonPositive : Bound::NonNegative;
        }
        return HalfPlane{canon.line, side};
    }

    /// The inward normal: membership value grows fastest in this direction.
    Vec2 inward_normal() const {
        return side == Bound::NonNegative ? Vec2{line.a, line.b} : Vec2{-line.a, -line.b};
    }

    bool contains(Vec2 p) const {
        const int s = sign_of(line.eval(p));
        return side == Bound::NonNegative ? s >= 0 : s <= 0;
    }
    bool contains(const Point& p) const { return contains(p.xy()); }
};

/// Direction of the two axis-parallel legs emanating from the right-angle corner.
enum class Quadrant { NE, NW, SE, SW };

inline const char* to_string(Quadrant q) {
    switch (q) {
        case Quadrant::NE: return "NE";
        case Quadrant::NW: return "NW";
        case Quadrant::SE: return "SE";
        case Quadrant::SW: return "SW";
    }
    return "?";
}

/// A triangle with two axis-parallel legs: the closed axis quadrant at the
/// corner intersected with the closed corner side of the hypotenuse line.
struct OrthoTriangle {
    i64 corner_x{0};
    i64 corner_y{0};
    Quadrant quadrant{Quadrant::NE};
    QueryLine hyp;

    OrthoTriangle(i64 cx, i64 cy, Quadrant quad, QueryLine hyp_line)
        : corner_x(cx), corner_y(cy), quadrant(quad), hyp(hyp_line) {
        if (hyp.a == 0 || hyp.b == 0)
            throw InvalidQuery("orthogonal triangle hypotenuse must not be axis-parallel");
        if (side_of_line(corner(), hyp) == Side::Zero)
            throw InvalidQuery("right-angle corner must lie strictly off the hypotenuse");
    }

    Vec2 corner() const { return {corner_x, corner_y}; }

    /// Sign of the hypotenuse evaluation on the triangle's side (never zero).
    int corner_sign() const { return sign_of(hyp.eval(corner())); }

    bool in_leg_quadrant(Vec2 p) const {
        switch (quadrant) {
            case Quadrant::NE: return p.x >= corner_x && p.y >= corner_y;
            case Quadrant::NW: return p.x <= corner_x && p.y >= corner_y;
            case Quadrant::SE: return p.x >= corner_x && p.y <= corner_y;
            case Quadrant::SW: return p.x <= corner_x && p.y <= corner_y;
        }
        return false;
    }

    bool contains(Vec2 p) const {
        if (!in_leg_quadrant(p)) return false;
        const int s = sign_of(hyp.eval(p));
        return s == 0 || s == corner_sign();
    }
    bool contains(const Point& p) const { return contains(p.xy()); }
};

inline bool point_in_triangle(const Point& p, const OrthoTriangle& t) { return t.contains(p); }

/// Closed axis-aligned rectangle; zero width or height is allowed.
struct AxisRect {
    i64 x_lo{0};
    i64 x_hi{0};
    i64 y_lo{0};
    i64 y_hi{0};

    AxisRect() = default;
    AxisRect(i64 xlo, i64 xhi, i64 ylo, i64 yhi) : x_lo(xlo), x_hi(xhi), y_lo(ylo), y_hi(yhi) {
        if (x_lo > x_hi || y_lo > y_hi) throw InvalidQuery("rectangle bounds out of order");
    }

    bool degenerate() const { return x_lo == x_hi || y_lo == y_hi; }
    bool contains(Vec2 p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
    bool contains(const Point& p) const { return contains(p.xy()); }
};

/// Convex polygon given as a counterclockwise vertex ring. Collinear vertices
/// are tolerated as long as the walk never reverses; winding is exactly one turn.
struct CanonicalPolygon {
    std::vector<Vec2> vertices;

    std::size_t size() const { return vertices.size(); }

    void validate() const {
        const std::size_t k = vertices.size();
        if (k < 3) throw InvalidQuery("polygon needs at least 3 vertices");
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (vertices[i] == vertices[j]) throw InvalidQuery("polygon repeats a vertex");

        bool any_strict_turn = false;
        int lower_to_upper = 0;
        int upper_to_lower = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const Vec2 e0 = vertices[(i + 1) % k] - vertices[i];
            const Vec2 e1 = vertices[(i + 2) % k] - vertices[(i + 1) % k];
            const int turn = sign_of(cross(e0, e1));
            if (turn < 0) throw InvalidQuery("polygon is not counterclockwise convex");
            if (turn == 0 && sign_of(dot(e0, e1)) <= 0)
                throw InvalidQuery("polygon edge reverses direction");
            if (turn > 0) any_strict_turn = true;
            // Track full revolutions via the half-plane class of edge directions.
            const auto upper = [](Vec2 e) { return e.y > 0 || (e.y == 0 && e.x > 0); };
            if (!upper(e0) && upper(e1)) ++lower_to_upper;
            if (upper(e0) && !upper(e1)) ++upper_to_lower;
        }
        if (!any_strict_turn) throw InvalidQuery("polygon vertices are all collinear");
        if (lower_to_upper != 1 || upper_to_lower != 1)
            throw InvalidQuery("polygon winds more than once");
    }
};

/// True iff p lies on the closed interior side of every edge.
inline bool point_in_polygon(Vec2 p, const CanonicalPolygon& poly) {
    const std::size_t k = poly.vertices.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (orientation(poly.vertices[i], poly.vertices[(i + 1) % k], p) == Orientation::CW)
            return false;
    }
    return true;
}
inline bool point_in_polygon(const Point& p, const CanonicalPolygon& poly) {
    return point_in_polygon(p.xy(), poly);
}

/// Exact rational point stored homogeneously as (x/w, y/w) with w > 0 and
/// gcd(|x|,|y|,w) = 1, which makes the representation canonical.
struct HomogPoint {
    i64 x{0};
    i64 y{0};
    i64 w{1};

    static HomogPoint make(i64 x, i64 y, i64 w) {
        if (w == 0) throw DegenerateDual("homogeneous point at infinity");
        i64 g = std::gcd(std::gcd(std::abs(x), std::abs(y)), std::abs(w));
        x /= g;
        y /= g;
        w /= g;
        if (w < 0) {
            x = -x;
            y = -y;
            w = -w;
        }
        return HomogPoint{x, y, w};
    }

    bool equals_integer_point(Vec2 p) const { return w == 1 && x == p.x && y == p.y; }
    friend bool operator==(const HomogPoint&, const HomogPoint&) = default;
};

inline int line_sign_at(const QueryLine& l, const HomogPoint& p) {
    // w > 0, so the sign matches the affine evaluation.
    return sign_of(i128(l.a) * p.x + i128(l.b) * p.y + i128(l.c) * p.w);
}

/// Dual of the point (px, py) in the chart z = 1: the line px*x + py*y + 1 = 0.
inline QueryLine dual_of_point(Vec2 p) {
    if (p.x == 0 && p.y == 0)
        throw DegenerateDual("the origin dualizes to the line at infinity");
    return QueryLine::from_coeffs(p.x, p.y, 1).line;
}
inline QueryLine dual_of_point(const Point& p) { return dual_of_point(p.xy()); }

/// Dual of the line ax + by + c = 0: the homogeneous point (a, b, c).
inline HomogPoint dual_of_line(const QueryLine& l) {
    if (l.c == 0) throw LineThroughOrigin();
    return HomogPoint::make(l.a, l.b, l.c);
}

/// The dual image of the set of lines meeting segment pq: two vertically
/// opposite sectors between the dual lines of p and q. `pairing` selects which
/// sector pair; membership is pairing * sign1 * sign2 <= 0.
struct DoubleWedge {
    HomogPoint apex;
    QueryLine line1;
    QueryLine line2;
    int pairing{1};

    bool contains(const HomogPoint& p) const {
        return pairing * line_sign_at(line1, p) * line_sign_at(line2, p) <= 0;
    }
    bool contains_dual_of(const QueryLine& l) const { return contains(dual_of_line(l)); }
};

inline DoubleWedge segment_to_double_wedge(Vec2 p, Vec2 q) {
    if (p == q) throw DegenerateDual("segment endpoints coincide");
    if ((p.x == 0 && p.y == 0) || (q.x == 0 && q.y == 0))
        throw DegenerateDual("segment endpoint at the origin collapses the wedge");
    const i128 det = cross(p, q);
    if (det == 0)
        throw DegenerateDual("segment lies on a line through the origin; wedge apex at infinity");

    auto d1 = QueryLine::from_coeffs(p.x, p.y, 1);
    auto d2 = QueryLine::from_coeffs(q.x, q.y, 1);
    const int pairing = (d1.negated ? -1 : 1) * (d2.negated ? -1 : 1);
    // Apex = dual of the segment's supporting line.
    const HomogPoint apex = HomogPoint::make(p.y - q.y, q.x - p.x, static_cast<i64>(det));
    return DoubleWedge{apex, d1.line, d2.line, pairing};
}
inline DoubleWedge segment_to_double_wedge(const Point& p, const Point& q) {
    return segment_to_double_wedge(p.xy(), q.xy());
}

}  // namespace orq
