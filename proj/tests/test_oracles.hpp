// Independent reference implementations used only by tests. These must not
// share code paths with the library: big-integer arithmetic instead of 128-bit,
// gift wrapping instead of monotone chain, ray crossing instead of edge sides.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "orq/geometry.hpp"

namespace oracle {

using orq::i64;
using orq::Point;
using orq::QueryLine;
using orq::Vec2;

inline int orientation_sign_bigint(Vec2 p, Vec2 q, Vec2 r) {
    const mpz_class px(static_cast<long>(p.x)), py(static_cast<long>(p.y));
    const mpz_class qx(static_cast<long>(q.x)), qy(static_cast<long>(q.y));
    const mpz_class rx(static_cast<long>(r.x)), ry(static_cast<long>(r.y));
    const mpz_class det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    return sgn(det);
}

inline int line_eval_sign_bigint(Vec2 p, const QueryLine& l) {
    const mpz_class v = mpz_class(static_cast<long>(l.a)) * static_cast<long>(p.x) +
                        mpz_class(static_cast<long>(l.b)) * static_cast<long>(p.y) +
                        mpz_class(static_cast<long>(l.c));
    return sgn(v);
}

/// Gift-wrapping hull of strict corners only, CCW, starting at the smallest
/// (x, y) vertex. Returns positions into `pts`.
inline std::vector<std::size_t> jarvis_strict_hull(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y))
            start = i;
    }
    if (n == 1) return {start};

    std::vector<std::size_t> hull;
    std::size_t cur = start;
    do {
        hull.push_back(cur);
        std::size_t best = (cur + 1) % n;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (cand == cur) continue;
            const int o = orientation_sign_bigint(pts[cur].xy(), pts[best].xy(), pts[cand].xy());
            if (o < 0) {
                best = cand;  // cand lies clockwise of current choice: tighter wrap
            } else if (o == 0) {
                // collinear: take the farthest so interior-of-edge points stay out
                const auto d2 = [&](std::size_t i) {
                    const mpz_class dx(static_cast<long>(pts[i].x - pts[cur].x));
                    const mpz_class dy(static_cast<long>(pts[i].y - pts[cur].y));
                    return mpz_class(dx * dx + dy * dy);
                };
                if (d2(cand) > d2(best)) best = cand;
            }
        }
        cur = best;
        if (hull.size() > n) throw std::logic_error("jarvis wrap failed to close");
    } while (cur != start);
    return hull;
}

/// Crossing-number membership for a simple polygon; boundary counts as inside.
inline bool point_in_polygon_crossing(Vec2 p, const std::vector<Vec2>& poly) {
    const std::size_t k = poly.size();
    auto on_segment = [&](Vec2 a, Vec2 b) {
        if (orientation_sign_bigint(a, b, p) != 0) return false;
        return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
               p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
    };
    bool inside = false;
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % k];
        if (on_segment(a, b)) return true;
        if ((a.y > p.y) != (b.y > p.y)) {
            // ray toward +x: crosses iff x-intersection is strictly right of p
            const mpz_class lhs = mpz_class(static_cast<long>(a.x - p.x)) *
                                      static_cast<long>(b.y - a.y) +
                                  mpz_class(static_cast<long>(b.x - a.x)) *
                                      static_cast<long>(p.y - a.y);
            if (sgn(lhs) == (b.y > a.y ? 1 : -1)) inside = !inside;
        }
    }
    return inside;
}

/// Deterministic bounded integers from a fixed-seed engine; modulo reduction is
/// fine here (no distribution-quality requirement, only reproducibility).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    i64 uniform(i64 lo, i64 hi) {  // inclusive range
        return lo + static_cast<i64>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return (eng() & 1) != 0; }
};

inline std::vector<Point> random_points(Rng& rng, std::size_t n, i64 lo, i64 hi) {
    std::vector<Point> pts;
    pts.reserve(n);
    std::unordered_set<std::uint64_t> seen;
    while (pts.size() < n) {
        const i64 x = rng.uniform(lo, hi);
        const i64 y = rng.uniform(lo, hi);
        const std::uint64_t key =
            (std::uint64_t(std::uint32_t(x + orq::kCoordLimit)) << 32) |
            std::uint32_t(y + orq::kCoordLimit);
        if (!seen.insert(key).second) continue;
        pts.push_back(Point{static_cast<i64>(pts.size()) + 1, x, y});
    }
    return pts;
}

}  // namespace oracle
