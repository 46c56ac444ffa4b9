#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "orq/brute_force.hpp"
#include "orq/convex_layers.hpp"
#include "test_oracles.hpp"

using namespace orq;

namespace {

std::vector<Point> square_corners() {
    return {{1, 0, 0}, {2, 4, 0}, {3, 4, 4}, {4, 0, 4}};
}

/// Independent peeling oracle: repeatedly gift-wrap and remove strict hull
/// vertices. Returns rings as id lists in ring order.
std::vector<std::vector<i64>> peel_with_jarvis(std::vector<Point> pts) {
    std::vector<std::vector<i64>> rings;
    while (!pts.empty()) {
        const auto hull = oracle::jarvis_strict_hull(pts);
        std::vector<i64> ring_ids;
        std::vector<bool> kill(pts.size(), false);
        for (auto idx : hull) {
            ring_ids.push_back(pts[idx].id);
            kill[idx] = true;
        }
        rings.push_back(std::move(ring_ids));
        std::vector<Point> rest;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!kill[i]) rest.push_back(pts[i]);
        pts.swap(rest);
    }
    return rings;
}

HalfPlane random_halfplane(oracle::Rng& rng, i64 span) {
    while (true) {
        const i64 a = rng.uniform(-span, span);
        const i64 b = rng.uniform(-span, span);
        if (a == 0 && b == 0) continue;
        const i64 c = rng.uniform(-span * span, span * span);
        return HalfPlane::from_coeffs(
            a, b, c, rng.coin() ? HalfPlane::Bound::NonNegative : HalfPlane::Bound::NonPositive);
    }
}

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

}  // namespace

TEST_CASE("square corners form one layer") {
    const LayerStructure ls(square_corners());
    REQUIRE(ls.layer_count() == 1);
    CHECK(ls.ring(0).size() == 4);
}

TEST_CASE("square plus center forms two layers") {
    auto pts = square_corners();
    pts.push_back({5, 2, 2});
    const LayerStructure ls(pts);
    REQUIRE(ls.layer_count() == 2);
    CHECK(ls.ring(0).size() == 4);
    REQUIRE(ls.ring(1).size() == 1);
    CHECK(ls.ring(1)[0].id == 5);
}

TEST_CASE("empty input rejected") {
    CHECK_THROWS_AS(LayerStructure(std::vector<Point>{}), EmptyInput);
}

TEST_CASE("layers match the independent gift-wrapping oracle") {
    oracle::Rng rng(1001);
    for (int trial = 0; trial < 6; ++trial) {
        // mixes of rounded clusters and small grids exercise collinear cases
        std::vector<Point> pts = trial % 2 == 0
                                     ? oracle::random_points(rng, 1000, -2000, 2000)
                                     : oracle::random_points(rng, 1000, -18, 18);
        const LayerStructure ls(pts);
        const auto expect = peel_with_jarvis(pts);
        REQUIRE(ls.layer_count() == expect.size());
        for (std::size_t layer = 0; layer < expect.size(); ++layer) {
            const auto r = ls.ring(layer);
            std::vector<i64> got;
            for (const Point& p : r) got.push_back(p.id);
            REQUIRE(got == expect[layer]);
        }
    }
}

TEST_CASE("layer partition and nesting invariants") {
    oracle::Rng rng(2002);
    const auto pts = oracle::random_points(rng, 800, -300, 300);
    const LayerStructure ls(pts);

    // partition: concatenated rings equal the input exactly
    std::multiset<i64> seen;
    for (std::size_t layer = 0; layer < ls.layer_count(); ++layer)
        for (const Point& p : ls.ring(layer)) seen.insert(p.id);
    std::multiset<i64> want;
    for (const Point& p : pts) want.insert(p.id);
    REQUIRE(seen == want);

    // rings strictly convex: no three consecutive collinear vertices
    for (std::size_t layer = 0; layer < ls.layer_count(); ++layer) {
        const auto r = ls.ring(layer);
        if (r.size() < 3) continue;
        for (std::size_t i = 0; i < r.size(); ++i) {
            REQUIRE(orientation(r[i], r[(i + 1) % r.size()], r[(i + 2) % r.size()]) ==
                    Orientation::CCW);
        }
    }

    // nesting: each vertex of layer i+1 inside closed hull of layer i, not a vertex of it
    for (std::size_t layer = 0; layer + 1 < ls.layer_count(); ++layer) {
        const auto outer = ls.ring(layer);
        std::vector<Vec2> ring_poly;
        for (const Point& p : outer) ring_poly.push_back(p.xy());
        for (const Point& p : ls.ring(layer + 1)) {
            if (outer.size() >= 3) {
                REQUIRE(oracle::point_in_polygon_crossing(p.xy(), ring_poly));
            } else if (outer.size() == 2) {
                REQUIRE(orientation(outer[0], outer[1], p) == Orientation::Collinear);
            }
            for (const Point& v : outer) REQUIRE(v.id != p.id);
        }
    }
}

TEST_CASE("extreme vertex matches a linear scan") {
    const LayerStructure sq(square_corners());
    const std::size_t right = sq.extreme_vertex(0, Vec2{1, 0});
    CHECK(sq.ring(0)[right].x == 4);

    auto pts = square_corners();
    pts.push_back({5, 2, 2});
    const LayerStructure two(pts);
    CHECK(two.extreme_vertex(1, Vec2{-3, 7}) == 0);  // singleton ring

    oracle::Rng rng(3003);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rp = oracle::random_points(rng, 3 + rng.uniform(0, 400), -900, 900);
        const LayerStructure ls(rp);
        for (std::size_t layer = 0; layer < ls.layer_count(); ++layer) {
            const auto r = ls.ring(layer);
            for (int di = 0; di < 12; ++di) {
                Vec2 d{rng.uniform(-50, 50), rng.uniform(-50, 50)};
                if (d.x == 0 && d.y == 0) d.x = 1;
                const std::size_t got = ls.extreme_vertex(layer, d);
                i128 best = dot(r[0].xy(), d);
                for (const Point& p : r) best = std::max(best, dot(p.xy(), d));
                REQUIRE(dot(r[got].xy(), d) == best);
            }
        }
    }
}

TEST_CASE("extreme vertex uses logarithmically many accesses") {
    oracle::Rng rng(909);
    const auto pts = oracle::random_points(rng, 4000, -800000, 800000);
    const LayerStructure ls(pts);
    const auto r = ls.ring(0);
    for (int di = 0; di < 200; ++di) {
        Vec2 d{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
        if (d.x == 0 && d.y == 0) d.y = 5;
        std::uint64_t accesses = 0;
        ls.extreme_vertex(0, d, &accesses);
        REQUIRE(accesses <= 4 * ceil_log2(r.size()) + 6);
    }
}

TEST_CASE("innermost intersected layer") {
    auto pts = square_corners();
    pts.push_back({5, 2, 2});
    const LayerStructure ls(pts);

    const HalfPlane everything = HalfPlane::from_coeffs(0, 1, 100, HalfPlane::Bound::NonNegative);
    auto deepest = ls.innermost_intersected_layer(everything);
    REQUIRE(deepest.has_value());
    CHECK(*deepest == 1);  // 0-based: the center singleton is the second layer

    const HalfPlane nothing = HalfPlane::from_coeffs(0, 1, -100, HalfPlane::Bound::NonNegative);
    CHECK(!ls.innermost_intersected_layer(nothing).has_value());

    oracle::Rng rng(4004);
    const auto rp = oracle::random_points(rng, 500, -400, 400);
    const LayerStructure rls(rp);
    for (int i = 0; i < 1000; ++i) {
        const HalfPlane h = random_halfplane(rng, 400);
        // oracle: deepest layer with any vertex inside, by linear scan
        std::optional<std::size_t> want;
        for (std::size_t layer = 0; layer < rls.layer_count(); ++layer) {
            bool any = false;
            for (const Point& p : rls.ring(layer)) any = any || h.contains(p);
            if (any) want = layer;
        }
        LayerQueryStats stats;
        const auto got = rls.innermost_intersected_layer(h, &stats);
        REQUIRE(got == want);
        const std::size_t intersected = want ? *want + 1 : 0;
        REQUIRE(stats.layers_tested <= intersected + 1);
    }
}

TEST_CASE("half-plane reporting equals the brute oracle") {
    oracle::Rng rng(5005);
    const auto pts = oracle::random_points(rng, 10000, -1000000, 1000000);
    const PointSet set(pts);
    const LayerStructure ls(pts);
    const std::uint64_t lg = ceil_log2(pts.size());

    // boundary case: half-plane touching exactly one hull vertex
    {
        const auto r = ls.ring(0);
        const std::size_t top = ls.extreme_vertex(0, Vec2{0, 1});
        const Point& v = r[top];
        const HalfPlane touch =
            HalfPlane::from_coeffs(0, 1, -v.y, HalfPlane::Bound::NonNegative);
        const auto res = ls.report_halfplane(touch);
        REQUIRE(res.ids == brute::scan_halfplane(set, touch));
        REQUIRE(!res.ids.empty());
    }

    // everything inside: every layer fully walked
    {
        const HalfPlane all =
            HalfPlane::from_coeffs(1, 0, 2000000, HalfPlane::Bound::NonNegative);
        const auto res = ls.report_halfplane(all);
        REQUIRE(res.ids == set.all_ids());
        REQUIRE(res.stats.layers_tested == ls.layer_count());
    }

    std::uint64_t worst_ratio_num = 0, worst_ratio_den = 1;
    for (int i = 0; i < 1000; ++i) {
        const HalfPlane h = random_halfplane(rng, 1000000);
        const auto res = ls.report_halfplane(h);
        REQUIRE(res.ids == brute::scan_halfplane(set, h));
        const std::uint64_t bound = 8 * ((res.ids.size() + 1) * lg + 1);
        REQUIRE(res.stats.vertices_visited <= bound);
        if (res.stats.vertices_visited * worst_ratio_den > worst_ratio_num * bound) {
            worst_ratio_num = res.stats.vertices_visited;
            worst_ratio_den = bound;
        }
    }
    INFO("worst counter/bound ratio " << worst_ratio_num << "/" << worst_ratio_den);
}

TEST_CASE("bridges point at the edges vertically adjacent in the outer ring") {
    oracle::Rng rng(6006);
    for (int trial = 0; trial < 8; ++trial) {
        const auto pts = trial % 2 == 0 ? oracle::random_points(rng, 300, -200, 200)
                                        : oracle::random_points(rng, 300, -12, 12);
        const LayerStructure ls(pts);
        for (std::size_t layer = 1; layer < ls.layer_count(); ++layer) {
            const auto inner = ls.ring(layer);
            const auto outer = ls.ring(layer - 1);
            const auto bridges = ls.ring_bridges(layer);
            const std::size_t edges = LayerStructure::edge_count(outer.size());
            for (std::size_t vi = 0; vi < inner.size(); ++vi) {
                const Vec2 w = inner[vi].xy();
                // crossing heights of each outer edge at x = w.x, exact rationals
                std::optional<std::pair<i128, i128>> best_above, best_below;  // num/den, den>0
                std::optional<std::size_t> above_idx, below_idx;
                for (std::size_t e = 0; e < edges; ++e) {
                    const Vec2 a = outer[e].xy();
                    const Vec2 b = outer[(e + 1) % outer.size()].xy();
                    if (std::min(a.x, b.x) > w.x || std::max(a.x, b.x) < w.x) continue;
                    auto offer = [&](i128 num, i128 den) {
                        if (num >= i128(w.y) * den &&
                            (!best_above || num * best_above->second < best_above->first * den)) {
                            best_above = {num, den};
                            above_idx = e;
                        }
                        if (num <= i128(w.y) * den &&
                            (!best_below || num * best_below->second > best_below->first * den)) {
                            best_below = {num, den};
                            below_idx = e;
                        }
                    };
                    if (a.x == b.x) {
                        offer(std::min(a.y, b.y), 1);
                        offer(std::max(a.y, b.y), 1);
                    } else {
                        i128 den = b.x - a.x;
                        i128 num = i128(a.y) * (b.x - a.x) + i128(b.y - a.y) * (w.x - a.x);
                        if (den < 0) {
                            num = -num;
                            den = -den;
                        }
                        offer(num, den);
                    }
                }
                const Bridge& br = bridges[vi];
                REQUIRE((br.above_edge >= 0) == best_above.has_value());
                REQUIRE((br.below_edge >= 0) == best_below.has_value());
                if (above_idx) REQUIRE(br.above_edge == static_cast<std::int32_t>(*above_idx));
                if (below_idx) REQUIRE(br.below_edge == static_cast<std::int32_t>(*below_idx));
            }
        }
    }
}

TEST_CASE("collinear-heavy inputs peel into segment rings") {
    std::vector<Point> pts;
    for (i64 i = 0; i < 7; ++i) pts.push_back({i + 1, i, 2 * i});  // one line
    const LayerStructure ls(pts);
    REQUIRE(ls.layer_count() == 4);
    CHECK(ls.ring(0).size() == 2);
    CHECK(ls.ring(3).size() == 1);

    const PointSet set(pts);
    oracle::Rng rng(707);
    for (int i = 0; i < 200; ++i) {
        const HalfPlane h = random_halfplane(rng, 20);
        REQUIRE(ls.report_halfplane(h).ids == brute::scan_halfplane(set, h));
    }
}
