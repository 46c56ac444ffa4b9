#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orq/geometry.hpp"
#include "orq/point_set.hpp"

namespace orq {

struct LayerQueryStats {
    std::uint64_t vertices_visited{0};
    std::uint64_t layers_tested{0};
};

/// Links from a vertex to the edges of the adjacent outer ring that the
/// vertical line through the vertex crosses immediately above and below it.
/// -1 encodes "no such edge" (possible only on degenerate outer rings).
struct Bridge {
    std::int32_t above_edge{-1};
    std::int32_t below_edge{-1};
    friend bool operator==(const Bridge&, const Bridge&) = default;
};

/// Convex-layer decomposition (onion peeling) with inter-layer bridges.
/// Rings are strictly convex, CCW, and start at the lexicographically
/// smallest vertex; peeled layers partition the input exactly.
class LayerStructure {
  public:
    explicit LayerStructure(std::vector<Point> pts) {
        if (pts.empty()) throw EmptyInput();
        n_ = pts.size();
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        pts_.reserve(n_);
        peel(pts);
        build_bridges();
    }

    struct presorted_tag {};
    /// Builds from points already sorted by (x, y); skips the sort.
    LayerStructure(std::vector<Point> pts, presorted_tag) {
        if (pts.empty()) throw EmptyInput();
        n_ = pts.size();
        pts_.reserve(n_);
        peel(pts);
        build_bridges();
    }

    std::size_t size() const { return n_; }
    std::size_t layer_count() const { return layer_off_.size() - 1; }

    std::span<const Point> ring(std::size_t layer) const {
        return {pts_.data() + layer_off_[layer], pts_.data() + layer_off_[layer + 1]};
    }
    std::span<const Bridge> ring_bridges(std::size_t layer) const {
        return {bridges_.data() + layer_off_[layer], bridges_.data() + layer_off_[layer + 1]};
    }

    /// Edges of a ring: h for h >= 3, one segment for h == 2, none for h == 1.
    static std::size_t edge_count(std::size_t ring_size) {
        return ring_size >= 3 ? ring_size : (ring_size == 2 ? 1 : 0);
    }

    friend bool operator==(const LayerStructure& a, const LayerStructure& b) {
        return a.pts_ == b.pts_ && a.layer_off_ == b.layer_off_ && a.bridges_ == b.bridges_;
    }

    /// Index of a ring vertex maximizing dot(v, dir), found by unimodal binary
    /// search; every vertex fetch is charged to *accesses.
    std::size_t extreme_vertex(std::size_t layer, Vec2 dir, std::uint64_t* accesses = nullptr) const {
        auto r = ring(layer);
        const std::size_t h = r.size();
        std::uint64_t local = 0;
        auto fetch = [&](std::size_t i) -> Vec2 {
            ++local;
            return r[i].xy();
        };
        const Vec2 perp{-dir.y, dir.x};
        // Lexicographic key = dot with an infinitesimally CCW-rotated dir;
        // distinct for distinct vertices, which removes plateau handling.
        struct Key {
            i128 primary;
            i128 secondary;
            bool operator<(const Key& o) const {
                return primary != o.primary ? primary < o.primary : secondary < o.secondary;
            }
            bool operator>=(const Key& o) const { return !(*this < o); }
            bool operator<=(const Key& o) const { return !(o < *this); }
        };
        auto key_of = [&](Vec2 v) { return Key{dot(v, dir), dot(v, perp)}; };

        std::size_t result = 0;
        if (h <= 8) {
            Key best = key_of(fetch(0));
            for (std::size_t i = 1; i < h; ++i) {
                Key k = key_of(fetch(i));
                if (best < k) {
                    best = k;
                    result = i;
                }
            }
        } else {
            auto edge_rises = [&](std::size_t i, const Key& ki) {
                Key kn = key_of(fetch((i + 1) % h));
                return ki < kn;
            };
            const Key k0 = key_of(fetch(0));
            if (edge_rises(0, k0)) {
                // signs [+^a, -^b, +^c]; maximizer at a.
                std::size_t lo = 0, hi = h;
                while (hi - lo > 1) {
                    const std::size_t mid = lo + (hi - lo) / 2;
                    Key km = key_of(fetch(mid));
                    if (km >= k0 && edge_rises(mid, km))
                        lo = mid;
                    else
                        hi = mid;
                }
                result = lo + 1;
            } else {
                // signs [-^a, +^b, -^c]; find the minimum junction a, then the
                // end of the rising arc.
                std::size_t lo = 0, hi = h;
                while (hi - lo > 1) {
                    const std::size_t mid = lo + (hi - lo) / 2;
                    Key km = key_of(fetch(mid));
                    if (km <= k0 && !edge_rises(mid, km))
                        lo = mid;
                    else
                        hi = mid;
                }
                const std::size_t a = lo + 1;
                lo = a;
                hi = h;
                while (hi - lo > 1) {
                    const std::size_t mid = lo + (hi - lo) / 2;
                    Key km = key_of(fetch(mid));
                    if (edge_rises(mid, km))
                        lo = mid;
                    else
                        hi = mid;
                }
                result = (lo + 1) % h;
            }
        }
        if (accesses) *accesses += local;
        return result;
    }

    /// Deepest layer with a vertex in the closed half-plane, or nullopt.
    /// Nesting makes emptiness monotone in depth, so probing stops at the
    /// first empty layer.
    std::optional<std::size_t> innermost_intersected_layer(const HalfPlane& h,
                                                           LayerQueryStats* stats = nullptr) const {
        LayerQueryStats local;
        std::optional<std::size_t> deepest;
        const Vec2 dir = h.inward_normal();
        for (std::size_t layer = 0; layer < layer_count(); ++layer) {
            ++local.layers_tested;
            const std::size_t best = extreme_vertex(layer, dir, &local.vertices_visited);
            ++local.vertices_visited;
            if (!h.contains(ring(layer)[best])) break;
            deepest = layer;
        }
        if (stats) {
            stats->vertices_visited += local.vertices_visited;
            stats->layers_tested += local.layers_tested;
        }
        return deepest;
    }

    struct Result {
        IdSet ids;
        LayerQueryStats stats;
    };

    /// Reports exactly the points inside the closed half-plane. Each layer is
    /// entered at an extreme vertex and walked in both directions while
    /// membership holds; the first layer with no vertex inside ends the query.
    Result report_halfplane(const HalfPlane& h) const {
        Result res;
        const Vec2 dir = h.inward_normal();
        for (std::size_t layer = 0; layer < layer_count(); ++layer) {
            ++res.stats.layers_tested;
            auto r = ring(layer);
            const std::size_t hsz = r.size();
            const std::size_t start = extreme_vertex(layer, dir, &res.stats.vertices_visited);
            ++res.stats.vertices_visited;
            if (!h.contains(r[start])) break;
            res.ids.push_back(r[start].id);
            std::size_t fwd = 0;
            while (fwd + 1 < hsz) {
                const Point& v = r[(start + fwd + 1) % hsz];
                ++res.stats.vertices_visited;
                if (!h.contains(v)) break;
                res.ids.push_back(v.id);
                ++fwd;
            }
            std::size_t bwd = 0;
            while (fwd + bwd + 1 < hsz) {
                const Point& v = r[(start + hsz - bwd - 1) % hsz];
                ++res.stats.vertices_visited;
                if (!h.contains(v)) break;
                res.ids.push_back(v.id);
                ++bwd;
            }
        }
        sort_ids(res.ids);
        return res;
    }

  private:
    void peel(const std::vector<Point>& sorted) {
        std::vector<std::uint32_t> alive(sorted.size());
        for (std::uint32_t i = 0; i < alive.size(); ++i) alive[i] = i;
        layer_off_.push_back(0);
        std::vector<std::uint32_t> hull;
        std::vector<std::uint32_t> next;
        std::vector<std::uint32_t> chain;
        std::vector<bool> on_hull(sorted.size(), false);
        while (!alive.empty()) {
            strict_hull(sorted, alive, chain, hull);
            for (std::uint32_t idx : hull) {
                pts_.push_back(sorted[idx]);
                on_hull[idx] = true;
            }
            layer_off_.push_back(static_cast<std::uint32_t>(pts_.size()));
            next.clear();
            for (std::uint32_t idx : alive)
                if (!on_hull[idx]) next.push_back(idx);
            alive.swap(next);
        }
    }

    // Andrew's monotone chain keeping strict corners only; `order` must be
    // (x, y)-sorted. Emits a CCW ring starting at the smallest vertex.
    static void strict_hull(const std::vector<Point>& pts,
                            const std::vector<std::uint32_t>& order,
                            std::vector<std::uint32_t>& h, std::vector<std::uint32_t>& out) {
        out.clear();
        const std::size_t m = order.size();
        if (m == 1) {
            out.push_back(order[0]);
            return;
        }
        auto turn_ok = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
            return orientation(pts[a], pts[b], pts[c]) == Orientation::CCW;
        };
        h.clear();
        for (std::size_t i = 0; i < m; ++i) {
            while (h.size() >= 2 && !turn_ok(h[h.size() - 2], h.back(), order[i])) h.pop_back();
            h.push_back(order[i]);
        }
        const std::size_t lower = h.size();
        for (std::size_t i = m - 1; i-- > 0;) {
            while (h.size() > lower && !turn_ok(h[h.size() - 2], h.back(), order[i])) h.pop_back();
            h.push_back(order[i]);
        }
        h.pop_back();  // closes back on order[0]
        // All-collinear input degenerates to the two extremes: the strict turn
        // test collapses everything between them.
        out.assign(h.begin(), h.end());
    }

    void build_bridges() {
        bridges_.assign(pts_.size(), Bridge{});
        for (std::size_t layer = 1; layer < layer_count(); ++layer) {
            auto inner = ring(layer);
            auto outer = ring(layer - 1);
            const std::size_t edges = edge_count(outer.size());
            for (std::size_t vi = 0; vi < inner.size(); ++vi) {
                Bridge& b = bridges_[layer_off_[layer] + vi];
                const Vec2 w = inner[vi].xy();
                // best crossing as rational num/den, den > 0
                i128 above_num = 0, above_den = 0, below_num = 0, below_den = 0;
                for (std::size_t e = 0; e < edges; ++e) {
                    const Vec2 a = outer[e].xy();
                    const Vec2 bb = outer[(e + 1) % outer.size()].xy();
                    if (std::min(a.x, bb.x) > w.x || std::max(a.x, bb.x) < w.x) continue;
                    auto consider = [&](i128 num, i128 den) {
                        // above: minimal crossing >= w.y
                        if (num >= i128(w.y) * den &&
                            (above_den == 0 || num * above_den < above_num * den)) {
                            above_num = num;
                            above_den = den;
                            b.above_edge = static_cast<std::int32_t>(e);
                        }
                        // below: maximal crossing <= w.y
                        if (num <= i128(w.y) * den &&
                            (below_den == 0 || num * below_den > below_num * den)) {
                            below_num = num;
                            below_den = den;
                            b.below_edge = static_cast<std::int32_t>(e);
                        }
                    };
                    if (a.x == bb.x) {
                        consider(std::min(a.y, bb.y), 1);
                        consider(std::max(a.y, bb.y), 1);
                    } else {
                        i64 d = bb.x - a.x;
                        i128 num = i128(a.y) * d + i128(bb.y - a.y) * (w.x - a.x);
                        if (d < 0) {
                            num = -num;
                            d = -d;
                        }
                        consider(num, d);
                    }
                }
            }
        }
    }

    std::size_t n_{0};
    std::vector<Point> pts_;                  // flat, ring-major
    std::vector<std::uint32_t> layer_off_;    // layer i = pts_[off[i], off[i+1])
    std::vector<Bridge> bridges_;             // parallel to pts_
};

}  // namespace orq
