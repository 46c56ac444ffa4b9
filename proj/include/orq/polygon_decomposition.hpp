#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "orq/geometry.hpp"
#include "orq/triangle_engine.hpp"

namespace orq {

/// A canonical polygon's cover by interior-disjoint axis rectangles and
/// orthogonal triangles. Shared boundary segments (seams) are recorded with
/// the lower piece index as owner; queries dispatch closed pieces and absorb
/// seam duplicates by id-set union.
struct Decomposition {
    using Piece = std::variant<AxisRect, OrthoTriangle>;

    struct Seam {
        Vec2 a;
        Vec2 b;
        std::uint32_t owner;
        std::uint32_t neighbor;
    };

    CanonicalPolygon polygon;
    std::vector<Piece> pieces;
    std::vector<std::vector<Vec2>> outlines;  // piece boundary rings (triangles: p, q, corner)
    std::vector<Seam> seams;

    bool piece_contains(std::size_t i, Vec2 p) const {
        if (const AxisRect* r = std::get_if<AxisRect>(&pieces[i])) return r->contains(p);
        return std::get<OrthoTriangle>(pieces[i]).contains(p);
    }
};

namespace detail {

inline bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (orientation(a, b, p) != Orientation::Collinear) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

// Overlap of two collinear segments, if longer than a point.
inline std::optional<std::pair<Vec2, Vec2>> segment_overlap(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
    if (orientation(a1, a2, b1) != Orientation::Collinear ||
        orientation(a1, a2, b2) != Orientation::Collinear)
        return std::nullopt;
    const Vec2 d = a2 - a1;
    auto along = [&](Vec2 p) { return dot(p - a1, d); };
    struct End {
        i128 t;
        Vec2 p;
    };
    End lo_a{0, a1}, hi_a{along(a2), a2};
    End lo_b{along(b1), b1}, hi_b{along(b2), b2};
    if (lo_b.t > hi_b.t) std::swap(lo_b, hi_b);
    const End lo = lo_a.t >= lo_b.t ? lo_a : lo_b;
    const End hi = hi_a.t <= hi_b.t ? hi_a : hi_b;
    if (lo.t >= hi.t) return std::nullopt;
    return std::make_pair(lo.p, hi.p);
}

inline void collect_seams(Decomposition& d) {
    for (std::size_t i = 0; i < d.outlines.size(); ++i) {
        for (std::size_t j = i + 1; j < d.outlines.size(); ++j) {
            const auto& oi = d.outlines[i];
            const auto& oj = d.outlines[j];
            for (std::size_t ei = 0; ei < oi.size(); ++ei) {
                for (std::size_t ej = 0; ej < oj.size(); ++ej) {
                    const auto ov = segment_overlap(oi[ei], oi[(ei + 1) % oi.size()],
                                                    oj[ej], oj[(ej + 1) % oj.size()]);
                    if (ov)
                        d.seams.push_back({ov->first, ov->second, static_cast<std::uint32_t>(i),
                                           static_cast<std::uint32_t>(j)});
                }
            }
        }
    }
}

}  // namespace detail

/// Edge-shaving decomposition. Every non-axis-parallel edge is shaved off as
/// the orthogonal triangle spanned by the edge and the bounding-box corner on
/// the polygon's side; the rectilinear residual is cut into vertical slabs.
/// Returns nullopt where the construction fails — that failure is the
/// operational definition of "not canonical".
inline std::optional<Decomposition> try_decompose(const CanonicalPolygon& poly) {
    poly.validate();
    const std::size_t k = poly.size();

    Decomposition d;
    d.polygon = poly;
    std::vector<Vec2> walk;  // rectilinear boundary after shaving

    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 p = poly.vertices[i];
        const Vec2 q = poly.vertices[(i + 1) % k];
        walk.push_back(p);
        if (p.x == q.x || p.y == q.y) continue;  // axis edge stays
        const bool ne_sw = (q.x - p.x > 0) == (q.y - p.y > 0);
        const Vec2 c = ne_sw ? Vec2{p.x, q.y} : Vec2{q.x, p.y};
        if (!point_in_polygon(c, poly)) return std::nullopt;  // corner pokes out
        const i64 leg_dx = ne_sw ? q.x - p.x : p.x - q.x;
        const i64 leg_dy = ne_sw ? p.y - q.y : q.y - p.y;
        const Quadrant quad = leg_dx > 0 ? (leg_dy > 0 ? Quadrant::NE : Quadrant::SE)
                                         : (leg_dy > 0 ? Quadrant::NW : Quadrant::SW);
        d.pieces.emplace_back(OrthoTriangle{c.x, c.y, quad, QueryLine::through(p, q)});
        d.outlines.push_back({p, q, c});
        walk.push_back(c);
    }

    // Residual: slab decomposition of the rectilinear walk. Horizontal edges
    // travel rightward on the bottom chain and leftward on the top chain of a
    // counterclockwise boundary.
    struct HEdge {
        i64 x_lo, x_hi, y;
        bool leftward;
    };
    std::vector<HEdge> hedges;
    std::vector<i64> xs;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Vec2 a = walk[i];
        const Vec2 b = walk[(i + 1) % walk.size()];
        xs.push_back(a.x);
        if (a.y == b.y && a.x != b.x)
            hedges.push_back({std::min(a.x, b.x), std::max(a.x, b.x), a.y, b.x < a.x});
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<i64> tops, bots;
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        const i64 x1 = xs[s], x2 = xs[s + 1];
        int top_hits = 0, bot_hits = 0;
        i64 top = 0, bot = 0;
        for (const HEdge& e : hedges) {
            if (e.x_lo > x1 || e.x_hi < x2) continue;
            if (e.leftward) {
                ++top_hits;
                top = e.y;
            } else {
                ++bot_hits;
                bot = e.y;
            }
        }
        if (top_hits != 1 || bot_hits != 1 || top < bot) return std::nullopt;
        tops.push_back(top);
        bots.push_back(bot);
        if (top > bot) {
            d.pieces.emplace_back(AxisRect{x1, x2, bot, top});
            d.outlines.push_back({{x1, bot}, {x2, bot}, {x2, top}, {x1, top}});
        }
    }
    // Orthoconvexity of the residual: top heights rise then fall, bottom
    // heights fall then rise, and adjacent slabs stay connected.
    for (std::size_t s = 0; s + 1 < tops.size(); ++s) {
        if (std::max(bots[s], bots[s + 1]) > std::min(tops[s], tops[s + 1]))
            return std::nullopt;
    }
    auto unimodal = [](const std::vector<i64>& v, int dir) {
        bool second_phase = false;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const i64 delta = (v[i + 1] - v[i]) * dir;
            if (delta < 0) second_phase = true;
            if (second_phase && delta > 0) return false;
        }
        return true;
    };
    if (!unimodal(tops, 1) || !unimodal(bots, -1)) return std::nullopt;

    if (d.pieces.size() > 2 * k) return std::nullopt;
    (void)tri_count;
    detail::collect_seams(d);
    return d;
}

/// Decomposition as an operation: failure is a NotCanonical error.
inline Decomposition decompose(const CanonicalPolygon& poly) {
    auto d = try_decompose(poly);
    if (!d)
        throw NotCanonical("polygon does not admit an edge-shaving decomposition into "
                           "axis rectangles and orthogonal triangles");
    return std::move(*d);
}

inline bool is_canonical(const CanonicalPolygon& poly) { return try_decompose(poly).has_value(); }

/// Dispatches one range query per piece and unions the id-sets; closed pieces
/// overlap only on seams, which the union absorbs.
inline TriangleEngine::Result query_polygon(const TriangleEngine& engine, const Decomposition& d) {
    TriangleEngine::Result res;
    for (const auto& piece : d.pieces) {
        TriangleEngine::Result sub;
        if (const AxisRect* r = std::get_if<AxisRect>(&piece))
            sub = engine.query_rect(*r);
        else
            sub = engine.query_triangle(std::get<OrthoTriangle>(piece));
        res.ids = union_ids(res.ids, sub.ids);
        res.stats.nodes_visited += sub.stats.nodes_visited;
        res.stats.substructures_queried += sub.stats.substructures_queried;
        res.stats.hp_vertices_visited += sub.stats.hp_vertices_visited;
        res.stats.list_nodes_visited += sub.stats.list_nodes_visited;
    }
    return res;
}

}  // namespace orq
