#pragma once

#include <array>
#include <memory>
#include <vector>

#include "orq/convex_layers.hpp"
#include "orq/persistent_pst.hpp"
#include "orq/triangle_engine.hpp"

namespace orq {

/// Solution 2: a persistent modified priority search tree whose lists carry a
/// convex-layer half-plane structure on every y-ordered prefix — of P_L(u) and
/// L(u) per leaf, and of S(v) per tree node. The S(v) families make the
/// structure quadratic, so construction is guarded by a hard cap.
///
/// The skeleton answers dominance in the (-x, -y) direction; the other three
/// leg orientations are served by twin structures built once on reflected
/// coordinates. A triangle query picks the twin that turns its legs into
/// that canonical orientation.
class TwoLayerStructure : public TriangleEngine {
  public:
    static constexpr std::size_t kDefaultCap = 4096;

    explicit TwoLayerStructure(const PointSet& s, std::size_t cap = kDefaultCap) {
        if (s.empty()) throw EmptyInput();
        if (s.size() > cap)
            throw CapExceeded("two-layer structure is quadratic: " + std::to_string(s.size()) +
                              " points exceed the cap of " + std::to_string(cap));
        by_id_ = s.points();  // id-ordered
        for (int k = 0; k < 4; ++k) {
            const i64 sx = (k & 1) ? -1 : 1;
            const i64 sy = (k & 2) ? -1 : 1;
            std::vector<Point> flipped;
            flipped.reserve(s.size());
            for (const Point& p : s.points()) flipped.push_back(Point{p.id, sx * p.x, sy * p.y});
            twins_[k] = std::make_unique<Twin>(PointSet(std::move(flipped)), multiplicity_);
        }
    }

    std::size_t size() const { return by_id_.size(); }

    /// Total point multiplicity across all S(v)-prefix structures (all twins).
    std::uint64_t stored_multiplicity() const { return multiplicity_; }

    const char* name() const override { return "2layer"; }

    Result query_triangle(const OrthoTriangle& q) const override {
        Result res;
        // choose the twin that maps the legs onto (-x, -y) dominance
        const bool east = q.quadrant == Quadrant::NE || q.quadrant == Quadrant::SE;
        const bool north = q.quadrant == Quadrant::NE || q.quadrant == Quadrant::NW;
        const int k = (east ? 1 : 0) | (north ? 2 : 0);
        const i64 sx = east ? -1 : 1;
        const i64 sy = north ? -1 : 1;
        const Vec2 corner{sx * q.corner_x, sy * q.corner_y};
        const QueryLine hyp = QueryLine::from_coeffs(q.hyp.a * sx, q.hyp.b * sy, q.hyp.c).line;
        const int corner_sign = sign_of(hyp.eval(corner));
        const HalfPlane hp{hyp, corner_sign > 0 ? HalfPlane::Bound::NonNegative
                                                : HalfPlane::Bound::NonPositive};
        twins_[k]->query(corner.x, corner.y, hp, res);
        sort_unique(res.ids);
        return res;
    }

    Result query_rect(const AxisRect& r) const override {
        Result res;
        if (r.degenerate()) {
            // quadrant probe on the canonical twin, filtered by the rectangle
            auto sub = twins_[0]->pst.query(r.x_hi, r.y_hi);
            res.stats.list_nodes_visited += sub.stats.list_nodes_visited;
            for (const i64 id : sub.ids)
                if (r.contains(point_by_id(id))) res.ids.push_back(id);
            return res;
        }
        // complementary dissection: the diagonal splits the rectangle into two
        // orthogonal triangles whose closed union is the rectangle
        const QueryLine diag = QueryLine::through(Vec2{r.x_lo, r.y_hi}, Vec2{r.x_hi, r.y_lo});
        const OrthoTriangle lower{r.x_lo, r.y_lo, Quadrant::NE, diag};
        const OrthoTriangle upper{r.x_hi, r.y_hi, Quadrant::SW, diag};
        Result a = query_triangle(lower);
        Result b = query_triangle(upper);
        res.ids = union_ids(a.ids, b.ids);
        res.stats = a.stats;
        res.stats.nodes_visited += b.stats.nodes_visited;
        res.stats.substructures_queried += b.stats.substructures_queried;
        res.stats.hp_vertices_visited += b.stats.hp_vertices_visited;
        res.stats.list_nodes_visited += b.stats.list_nodes_visited;
        return res;
    }

    // --- introspection for tests ---
    struct PrefixRef {
        std::size_t twin;
        std::size_t tree_node;
        std::size_t length;
    };
    const LayerStructure& s_prefix_structure(const PrefixRef& ref) const {
        return twins_[ref.twin]->s_prefix[ref.tree_node][ref.length - 1];
    }
    const PersistentPst& twin_pst(std::size_t k) const { return twins_[k]->pst; }

  private:
    struct Twin {
        PersistentPst pst;
        // half-plane structures over every y-ordered prefix
        std::vector<std::vector<LayerStructure>> s_prefix;   // [tree node][len-1]
        std::vector<std::vector<LayerStructure>> pl_prefix;  // [leaf][len-1]
        std::vector<std::vector<LayerStructure>> ll_prefix;  // [leaf][len-1]
        std::vector<std::vector<std::uint32_t>> pl_pts;      // materialized lists
        std::vector<std::vector<PersistentPst::ListEntry>> ll_entries;

        Twin(PointSet&& set, std::uint64_t& multiplicity) : pst(set) {
            const auto& pts = pst.rank_order();
            auto prefixes_of = [&](const std::vector<std::uint32_t>& list,
                                   std::vector<LayerStructure>& out, bool count) {
                std::vector<Point> sorted;  // x-sorted working set, grown one point at a time
                out.reserve(list.size());
                for (const std::uint32_t idx : list) {
                    const Point& p = pts[idx];
                    auto pos = std::lower_bound(sorted.begin(), sorted.end(), p,
                                                [](const Point& a, const Point& b) {
                                                    return a.x != b.x ? a.x < b.x : a.y < b.y;
                                                });
                    sorted.insert(pos, p);
                    out.emplace_back(sorted, LayerStructure::presorted_tag{});
                    if (count) multiplicity += sorted.size();
                }
            };

            s_prefix.resize(pst.node_count());
            for (std::size_t v = 1; v < pst.node_count(); ++v)
                prefixes_of(pst.secondary_list(v), s_prefix[v], true);

            const std::size_t n = pst.size();
            pl_prefix.resize(n);
            ll_prefix.resize(n);
            pl_pts.resize(n);
            ll_entries.resize(n);
            for (std::size_t u = 0; u < n; ++u) {
                pl_pts[u] = pst.pl_version(u);
                ll_entries[u] = pst.ll_version(u);
                prefixes_of(pl_pts[u], pl_prefix[u], false);
                std::vector<std::uint32_t> lpts;
                lpts.reserve(ll_entries[u].size());
                for (const auto& e : ll_entries[u]) lpts.push_back(e.pt);
                prefixes_of(lpts, ll_prefix[u], false);
            }
        }

        /// Core query in twin coordinates: x <= b, y <= c, inside hp.
        void query(i64 b, i64 c, const HalfPlane& hp, Result& res) const {
            const std::size_t u = pst.last_rank_le_x(b);
            if (u == PersistentPst::npos) return;
            const auto& pts = pst.rank_order();
            auto y_count_le = [&](auto&& key_of, std::size_t len, auto&& at) {
                std::size_t lo = 0, hi = len;
                while (lo < hi) {
                    ++res.stats.nodes_visited;
                    const std::size_t mid = (lo + hi) / 2;
                    if (key_of(at(mid)) <= c)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                return lo;
            };
            auto run_hp = [&](const LayerStructure& ls) {
                ++res.stats.substructures_queried;
                auto sub = ls.report_halfplane(hp);
                res.stats.hp_vertices_visited += sub.stats.vertices_visited;
                res.ids.insert(res.ids.end(), sub.ids.begin(), sub.ids.end());
            };

            const auto& pl = pl_pts[u];
            const std::size_t jp = y_count_le([&](std::uint32_t i) { return pts[i].y; },
                                              pl.size(), [&](std::size_t i) { return pl[i]; });
            if (jp > 0) run_hp(pl_prefix[u][jp - 1]);

            const auto& ll = ll_entries[u];
            const std::size_t jl =
                y_count_le([&](const PersistentPst::ListEntry& e) { return pts[e.pt].y; },
                           ll.size(), [&](std::size_t i) { return ll[i]; });
            if (jl > 0) run_hp(ll_prefix[u][jl - 1]);
            for (std::size_t i = 0; i < jl; ++i) {
                ++res.stats.list_nodes_visited;
                const std::size_t w = ll[i].tree_node;
                const auto& sv = pst.secondary_list(w);
                const std::size_t js =
                    y_count_le([&](std::uint32_t idx) { return pts[idx].y; }, sv.size(),
                               [&](std::size_t i2) { return sv[i2]; });
                if (js > 0) run_hp(s_prefix[w][js - 1]);
            }
        }
    };

    const Point& point_by_id(i64 id) const {
        const auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                                         [](const Point& p, i64 v) { return p.id < v; });
        return *it;
    }

    static void sort_unique(IdSet& ids) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }

    std::vector<Point> by_id_;
    std::array<std::unique_ptr<Twin>, 4> twins_;
    std::uint64_t multiplicity_{0};
};

}  // namespace orq
