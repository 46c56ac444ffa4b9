#pragma once

#include <bit>
#include <memory>
#include <vector>

#include "orq/convex_layers.hpp"
#include "orq/triangle_engine.hpp"

namespace orq {

/// Solution 1: a balanced search tree over x whose internal nodes carry
/// search trees over y, whose internal nodes in turn carry convex-layer
/// half-plane structures over their points. A triangle query selects
/// O(log n) canonical x-subtrees, O(log n) y-subtrees within each, and runs
/// one half-plane query per selected y-subtree. All four leg orientations
/// run through the same path logic; only the rank intervals flip.
class ThreeLayerTree : public TriangleEngine {
  public:
    explicit ThreeLayerTree(const PointSet& s) {
        if (s.empty()) throw EmptyInput();
        keys_ = s.points();
        std::sort(keys_.begin(), keys_.end(), [](const Point& a, const Point& b) {
            if (a.x != b.x) return a.x < b.x;
            if (a.y != b.y) return a.y < b.y;
            return a.id < b.id;
        });
        n_ = keys_.size();
        xleaves_ = std::bit_ceil(n_);
        ytrees_.resize(xleaves_);
        if (xleaves_ >= 2) {
            for (std::size_t v = xleaves_ - 1; v >= 1; --v) build_ytree(v);
        }
    }

    std::size_t size() const { return n_; }
    std::size_t height() const { return std::bit_width(xleaves_) - 1; }

    /// Total point multiplicity stored across the layer-3 structures.
    std::uint64_t stored_multiplicity() const { return multiplicity_; }

    const char* name() const override { return "3layer"; }

    Result query_triangle(const OrthoTriangle& q) const override {
        Result res;
        const bool east = q.quadrant == Quadrant::NE || q.quadrant == Quadrant::SE;
        const bool north = q.quadrant == Quadrant::NE || q.quadrant == Quadrant::NW;
        const auto [xa, xb] = east ? std::pair<std::size_t, std::size_t>{first_x_ge(q.corner_x, res), n_}
                                   : std::pair<std::size_t, std::size_t>{0, count_x_le(q.corner_x, res)};
        if (xa >= xb) return res;
        const HalfPlane hp{q.hyp, q.corner_sign() > 0 ? HalfPlane::Bound::NonNegative
                                                      : HalfPlane::Bound::NonPositive};
        std::vector<std::size_t> xroots;
        select(1, 0, xleaves_, xa, xb, xroots, res.stats);
        for (const std::size_t v : xroots) {
            if (v >= xleaves_) {  // single leaf: test the point directly
                const std::size_t rank = v - xleaves_;
                if (rank < n_ && q.contains(keys_[rank])) res.ids.push_back(keys_[rank].id);
                continue;
            }
            const YTree& yt = ytrees_[v];
            if (yt.pts.size() < 2) {
                for (const Point& p : yt.pts) {
                    ++res.stats.nodes_visited;
                    if (q.contains(p)) res.ids.push_back(p.id);
                }
                continue;
            }
            const auto [ya, yb] = north ? std::pair<std::size_t, std::size_t>{
                                              yt.first_y_ge(q.corner_y, res.stats), yt.pts.size()}
                                        : std::pair<std::size_t, std::size_t>{
                                              0, yt.count_y_le(q.corner_y, res.stats)};
            if (ya >= yb) continue;
            std::vector<std::size_t> yroots;
            yt.select_into(ya, yb, yroots, res.stats);
            for (const std::size_t w : yroots) report_ynode(yt, w, &hp, nullptr, res);
        }
        sort_ids(res.ids);
        return res;
    }

    Result query_rect(const AxisRect& r) const override {
        Result res;
        const std::size_t xa = first_x_ge(r.x_lo, res);
        const std::size_t xb = count_x_le(r.x_hi, res);
        if (xa >= xb) return res;
        std::vector<std::size_t> xroots;
        select(1, 0, xleaves_, xa, xb, xroots, res.stats);
        for (const std::size_t v : xroots) {
            if (v >= xleaves_) {
                const std::size_t rank = v - xleaves_;
                if (rank < n_ && r.contains(keys_[rank])) res.ids.push_back(keys_[rank].id);
                continue;
            }
            const YTree& yt = ytrees_[v];
            if (yt.pts.size() < 2) {
                for (const Point& p : yt.pts) {
                    ++res.stats.nodes_visited;
                    if (r.contains(p)) res.ids.push_back(p.id);
                }
                continue;
            }
            const std::size_t ya = yt.first_y_ge(r.y_lo, res.stats);
            const std::size_t yb = yt.count_y_le(r.y_hi, res.stats);
            if (ya >= yb) continue;
            std::vector<std::size_t> yroots;
            yt.select_into(ya, yb, yroots, res.stats);
            for (const std::size_t w : yroots) report_ynode(yt, w, nullptr, &r, res);
        }
        sort_ids(res.ids);
        return res;
    }

    // test access
    const std::vector<Point>& rank_order() const { return keys_; }
    std::size_t xleaf_count() const { return xleaves_; }
    std::vector<std::size_t> canonical_roots(std::size_t a, std::size_t b) const {
        TriQueryStats scratch;
        std::vector<std::size_t> roots;
        if (a < b) select(1, 0, xleaves_, a, b, roots, scratch);
        return roots;
    }

  private:
    struct YTree {
        std::vector<Point> pts;  // sorted by (y, x, id)
        std::size_t leaves{0};
        std::vector<std::unique_ptr<LayerStructure>> hp;  // per internal node

        static bool y_less(const Point& a, const Point& b) {
            if (a.y != b.y) return a.y < b.y;
            if (a.x != b.x) return a.x < b.x;
            return a.id < b.id;
        }

        std::size_t first_y_ge(i64 y, TriQueryStats& st) const {
            std::size_t lo = 0, hi = pts.size();
            while (lo < hi) {
                ++st.nodes_visited;
                const std::size_t mid = (lo + hi) / 2;
                if (pts[mid].y < y)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return lo;
        }
        std::size_t count_y_le(i64 y, TriQueryStats& st) const {
            std::size_t lo = 0, hi = pts.size();
            while (lo < hi) {
                ++st.nodes_visited;
                const std::size_t mid = (lo + hi) / 2;
                if (pts[mid].y <= y)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return lo;
        }

        void select_into(std::size_t a, std::size_t b, std::vector<std::size_t>& out,
                         TriQueryStats& st) const {
            select_rec(1, 0, leaves, a, b, out, st);
        }
        void select_rec(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a,
                        std::size_t b, std::vector<std::size_t>& out, TriQueryStats& st) const {
            ++st.nodes_visited;
            if (a <= lo && hi <= b) {
                out.push_back(node);
                return;
            }
            const std::size_t mid = lo + (hi - lo) / 2;
            if (a < mid) select_rec(2 * node, lo, mid, a, b, out, st);
            if (b > mid) select_rec(2 * node + 1, mid, hi, a, b, out, st);
        }
    };

    void build_ytree(std::size_t v) {
        YTree& yt = ytrees_[v];
        auto points_of = [&](std::size_t child) -> std::vector<Point> {
            if (child >= xleaves_) {
                const std::size_t rank = child - xleaves_;
                if (rank < n_) return {keys_[rank]};
                return {};
            }
            return ytrees_[child].pts;  // already built (bottom-up order)
        };
        const std::vector<Point> l = points_of(2 * v);
        const std::vector<Point> r = points_of(2 * v + 1);
        yt.pts.resize(l.size() + r.size());
        std::merge(l.begin(), l.end(), r.begin(), r.end(), yt.pts.begin(), YTree::y_less);
        if (yt.pts.size() < 2) return;  // a single point is tested directly at query time
        yt.leaves = std::bit_ceil(yt.pts.size());
        yt.hp.resize(yt.leaves);
        for (std::size_t w = 1; w < yt.leaves; ++w) {
            const std::size_t depth = std::bit_width(w) - 1;
            const std::size_t k = std::bit_width(yt.leaves) - 1 - depth;
            const std::size_t first = (w << k) - yt.leaves;
            const std::size_t last = std::min(((w + 1) << k) - yt.leaves, yt.pts.size());
            if (first >= yt.pts.size()) continue;
            std::vector<Point> slice(yt.pts.begin() + first, yt.pts.begin() + last);
            multiplicity_ += slice.size();
            yt.hp[w] = std::make_unique<LayerStructure>(std::move(slice));
        }
    }

    void report_ynode(const YTree& yt, std::size_t w, const HalfPlane* hp, const AxisRect* rect,
                      Result& res) const {
        if (w >= yt.leaves || !yt.hp[w]) {
            // leaf or degenerate internal node: test the covered points directly
            const std::size_t depth = std::bit_width(w) - 1;
            const std::size_t k = std::bit_width(yt.leaves) - 1 - depth;
            const std::size_t first = (w << k) - yt.leaves;
            const std::size_t last = std::min(((w + 1) << k) - yt.leaves, yt.pts.size());
            for (std::size_t i = first; i < last && i < yt.pts.size(); ++i) {
                ++res.stats.nodes_visited;
                const Point& p = yt.pts[i];
                if (hp ? hp->contains(p) : rect->contains(p)) res.ids.push_back(p.id);
            }
            return;
        }
        if (hp) {
            ++res.stats.substructures_queried;
            auto sub = yt.hp[w]->report_halfplane(*hp);
            res.stats.hp_vertices_visited += sub.stats.vertices_visited;
            res.ids.insert(res.ids.end(), sub.ids.begin(), sub.ids.end());
        } else {
            // rectangle reporting dumps the whole canonical subtree
            for (std::size_t layer = 0; layer < yt.hp[w]->layer_count(); ++layer)
                for (const Point& p : yt.hp[w]->ring(layer)) res.ids.push_back(p.id);
        }
    }

    /// First rank with x >= bound; binary-search probes are counted as visits.
    std::size_t first_x_ge(i64 x, Result& res) const {
        std::size_t lo = 0, hi = n_;
        while (lo < hi) {
            ++res.stats.nodes_visited;
            const std::size_t mid = (lo + hi) / 2;
            if (keys_[mid].x < x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }
    /// Number of ranks with x <= bound.
    std::size_t count_x_le(i64 x, Result& res) const {
        std::size_t lo = 0, hi = n_;
        while (lo < hi) {
            ++res.stats.nodes_visited;
            const std::size_t mid = (lo + hi) / 2;
            if (keys_[mid].x <= x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    void select(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a, std::size_t b,
                std::vector<std::size_t>& out, TriQueryStats& st) const {
        ++st.nodes_visited;
        if (a <= lo && hi <= b) {
            out.push_back(node);
            return;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        if (a < mid) select(2 * node, lo, mid, a, b, out, st);
        if (b > mid) select(2 * node + 1, mid, hi, a, b, out, st);
    }

    std::size_t n_{0};
    std::size_t xleaves_{1};
    std::vector<Point> keys_;     // rank order (x, y, id)
    std::vector<YTree> ytrees_;   // indexed by internal x-node
    std::uint64_t multiplicity_{0};
};

}  // namespace orq
