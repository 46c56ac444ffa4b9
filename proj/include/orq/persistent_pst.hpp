#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "orq/geometry.hpp"
#include "orq/point_set.hpp"

namespace orq {

struct PpstQueryStats {
    std::uint64_t list_nodes_visited{0};
};

/// The modified priority search tree made partially persistent. Every node of
/// the complete skeleton tree references the min-y point of its subtree and
/// carries the secondary list S(v) of all subtree points in y-order. Each leaf
/// u owns two y-ordered lists:
///
///   P_L(u): the distinct points referenced by nodes on the root-to-u path
///           whose x-rank is <= u,
///   L(u):   the points of the left children hanging off that path, each
///           paired with its tree node.
///
/// The n versions of both lists are built by one left-to-right sweep over a
/// partially persistent singly linked list (node copying with one spare
/// pointer slot per node, O(1) amortized allocations per update). A quadrant
/// query locates its leaf through the rank table in O(1) and then touches
/// only list nodes that either get reported or terminate a walk, which yields
/// the O(t) query bound checked by the tests.
class PersistentPst {
  public:
    explicit PersistentPst(const PointSet& s) {
        if (s.empty()) throw EmptyInput();
        pts_ = s.points();
        std::sort(pts_.begin(), pts_.end(), [](const Point& a, const Point& b) {
            if (a.x != b.x) return a.x < b.x;
            if (a.y != b.y) return a.y < b.y;
            return a.id < b.id;
        });
        n_ = pts_.size();
        leaves_ = std::bit_ceil(n_);
        build_skeleton();
        sweep();
    }

    std::size_t size() const { return n_; }
    std::size_t height() const { return std::bit_width(leaves_) - 1; }
    std::uint64_t allocations() const { return pool_.size(); }

    struct Result {
        IdSet ids;
        PpstQueryStats stats;
    };

    /// Reports the points in (-inf, b] x (-inf, c].
    Result query(i64 b, i64 c) const {
        Result res;
        const std::size_t r = rank_of_x(b);
        if (r == kNoRank) return res;
        const std::uint32_t version = static_cast<std::uint32_t>(r);
        (void)table_a_[r];  // leaf lookup is O(1) by construction

        for (std::int32_t cur = pl_root_[r]; cur != kNil;) {
            const PNode& pn = pool_[cur];
            ++res.stats.list_nodes_visited;
            if (pts_[pn.pt].y > c) break;
            res.ids.push_back(pts_[pn.pt].id);
            cur = pn.next(version);
        }
        for (std::int32_t cur = ll_root_[r]; cur != kNil;) {
            const PNode& pn = pool_[cur];
            ++res.stats.list_nodes_visited;
            if (pts_[pn.pt].y > c) break;
            for (const std::uint32_t idx : secondary_[pn.tree_node]) {
                ++res.stats.list_nodes_visited;
                if (pts_[idx].y > c) break;
                res.ids.push_back(pts_[idx].id);
            }
            cur = pn.next(version);
        }
        std::sort(res.ids.begin(), res.ids.end());
        res.ids.erase(std::unique(res.ids.begin(), res.ids.end()), res.ids.end());
        return res;
    }

    // --- introspection (tests and the two-layer engine) ---

    const std::vector<Point>& rank_order() const { return pts_; }
    /// Largest rank with x <= b, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t last_rank_le_x(i64 b) const { return rank_of_x(b); }
    std::size_t node_count() const { return 2 * leaves_; }
    std::size_t leaf_node(std::size_t rank) const { return leaves_ + rank; }
    bool subtree_empty(std::size_t node) const { return secondary_[node].empty(); }
    std::uint32_t node_min(std::size_t node) const { return node_min_[node]; }
    const std::vector<std::uint32_t>& secondary_list(std::size_t node) const {
        return secondary_[node];
    }

    struct ListEntry {
        std::uint32_t pt;
        std::uint32_t tree_node;
        friend bool operator==(const ListEntry&, const ListEntry&) = default;
    };

    /// Materializes P_L(u) from the persistent store.
    std::vector<std::uint32_t> pl_version(std::size_t u) const {
        std::vector<std::uint32_t> out;
        for (std::int32_t cur = pl_root_[u]; cur != kNil; cur = pool_[cur].next(u))
            out.push_back(pool_[cur].pt);
        return out;
    }
    /// Materializes L(u) from the persistent store.
    std::vector<ListEntry> ll_version(std::size_t u) const {
        std::vector<ListEntry> out;
        for (std::int32_t cur = ll_root_[u]; cur != kNil; cur = pool_[cur].next(u))
            out.push_back({pool_[cur].pt, pool_[cur].tree_node});
        return out;
    }

    /// Recomputes P_L(u) directly from the tree paths (no persistent store).
    std::vector<std::uint32_t> pl_direct(std::size_t u) const {
        std::vector<std::uint32_t> out;
        for (std::size_t node = leaf_node(u); node >= 1; node /= 2) {
            const std::uint32_t m = node_min_[node];
            if (m != kNoPoint && m <= u) out.push_back(m);
        }
        sort_by_y(out);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    /// Recomputes L(u) directly from the tree paths.
    std::vector<ListEntry> ll_direct(std::size_t u) const {
        std::vector<ListEntry> out;
        for (std::size_t node = leaf_node(u); node > 1; node /= 2) {
            if ((node & 1) == 1) {
                const std::size_t left = node - 1;
                if (node_min_[left] != kNoPoint)
                    out.push_back({node_min_[left], static_cast<std::uint32_t>(left)});
            }
        }
        std::sort(out.begin(), out.end(), [&](const ListEntry& a, const ListEntry& b) {
            return y_less(a.pt, b.pt);
        });
        return out;
    }

    bool y_less(std::uint32_t a, std::uint32_t b) const {
        const Point& pa = pts_[a];
        const Point& pb = pts_[b];
        if (pa.y != pb.y) return pa.y < pb.y;
        if (pa.x != pb.x) return pa.x < pb.x;
        return pa.id < pb.id;
    }

    void sort_by_y(std::vector<std::uint32_t>& v) const {
        std::sort(v.begin(), v.end(), [&](std::uint32_t a, std::uint32_t b) { return y_less(a, b); });
    }

  private:
    static constexpr std::int32_t kNil = -1;
    static constexpr std::uint32_t kNoPoint = 0xffffffffu;
    static constexpr std::uint32_t kUnset = 0xffffffffu;
    static constexpr std::size_t kNoRank = static_cast<std::size_t>(-1);

    struct PNode {
        std::uint32_t pt;
        std::uint32_t tree_node;
        std::int32_t next0;
        std::uint32_t created;
        std::uint32_t stamp1{kUnset};
        std::int32_t next1{kNil};

        std::int32_t next(std::size_t version) const {
            return stamp1 <= version ? next1 : next0;
        }
    };

    struct MirrorEnt {
        std::uint32_t pt;
        std::uint32_t tree_node;
        std::int32_t node;
    };

    /// Largest rank whose x <= b, or kNoRank.
    std::size_t rank_of_x(i64 b) const {
        std::size_t lo = 0, hi = n_;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (pts_[mid].x <= b)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo == 0 ? kNoRank : lo - 1;
    }

    void build_skeleton() {
        secondary_.assign(2 * leaves_, {});
        node_min_.assign(2 * leaves_, kNoPoint);
        for (std::size_t r = 0; r < n_; ++r) secondary_[leaves_ + r] = {static_cast<std::uint32_t>(r)};
        for (std::size_t v = leaves_ - 1; v >= 1; --v) {
            const auto& l = secondary_[2 * v];
            const auto& rr = secondary_[2 * v + 1];
            auto& out = secondary_[v];
            out.resize(l.size() + rr.size());
            std::merge(l.begin(), l.end(), rr.begin(), rr.end(), out.begin(),
                       [&](std::uint32_t a, std::uint32_t b) { return y_less(a, b); });
        }
        for (std::size_t v = 1; v < 2 * leaves_; ++v)
            if (!secondary_[v].empty()) node_min_[v] = secondary_[v][0];

        table_a_.resize(n_);
        for (std::size_t r = 0; r < n_; ++r) table_a_[r] = static_cast<std::uint32_t>(leaves_ + r);

        // top holder of each point: the highest node whose subtree min it is
        top_holder_.resize(n_);
        for (std::uint32_t r = 0; r < n_; ++r) {
            std::size_t node = leaves_ + r;
            while (node > 1 && node_min_[node / 2] == r) node /= 2;
            top_holder_[r] = static_cast<std::uint32_t>(node);
        }
    }

    std::size_t subtree_last_rank(std::size_t node) const {
        const std::size_t depth = std::bit_width(node) - 1;
        const std::size_t k = height() - depth;
        return (((node + 1) << k) - 1) - leaves_;
    }

    // -- persistent list plumbing (latest version only is mutable) --

    std::int32_t fresh(std::uint32_t pt, std::uint32_t tree_node, std::int32_t next0,
                       std::uint32_t version) {
        pool_.push_back(PNode{pt, tree_node, next0, version});
        return static_cast<std::int32_t>(pool_.size() - 1);
    }

    /// Redirects the pointer at `pred` (kNil position = list head) to `target`,
    /// copying nodes whose both pointer slots are exhausted.
    void point_to(std::vector<MirrorEnt>& mirror, std::int32_t& head, std::ptrdiff_t pred,
                  std::int32_t target, std::uint32_t version) {
        while (true) {
            if (pred < 0) {
                head = target;
                return;
            }
            PNode& x = pool_[mirror[pred].node];
            if (x.created == version) {
                x.next0 = target;
                return;
            }
            if (x.stamp1 == version) {
                x.next1 = target;
                return;
            }
            if (x.stamp1 == kUnset) {
                x.stamp1 = version;
                x.next1 = target;
                return;
            }
            // both slots used: copy the node and cascade toward the head
            const std::int32_t copy = fresh(x.pt, x.tree_node, target, version);
            mirror[pred].node = copy;
            target = copy;
            --pred;
        }
    }

    void list_insert(std::vector<MirrorEnt>& mirror, std::int32_t& head, std::uint32_t pt,
                     std::uint32_t tree_node, std::uint32_t version) {
        std::size_t pos = 0;
        while (pos < mirror.size() && y_less(mirror[pos].pt, pt)) ++pos;
        const std::int32_t succ = pos < mirror.size() ? mirror[pos].node : kNil;
        const std::int32_t node = fresh(pt, tree_node, succ, version);
        mirror.insert(mirror.begin() + static_cast<std::ptrdiff_t>(pos),
                      MirrorEnt{pt, tree_node, node});
        point_to(mirror, head, static_cast<std::ptrdiff_t>(pos) - 1, node, version);
    }

    void list_erase(std::vector<MirrorEnt>& mirror, std::int32_t& head, std::uint32_t pt,
                    std::uint32_t version) {
        std::size_t pos = 0;
        while (pos < mirror.size() && mirror[pos].pt != pt) ++pos;
        if (pos == mirror.size())
            throw std::logic_error("persistent list erase: point not present");
        const std::int32_t succ = pos + 1 < mirror.size() ? mirror[pos + 1].node : kNil;
        mirror.erase(mirror.begin() + static_cast<std::ptrdiff_t>(pos));
        point_to(mirror, head, static_cast<std::ptrdiff_t>(pos) - 1, succ, version);
    }

    void sweep() {
        pl_root_.assign(n_, kNil);
        ll_root_.assign(n_, kNil);
        std::vector<MirrorEnt> pl, ll;
        std::int32_t pl_head = kNil, ll_head = kNil;

        for (std::size_t u = 0; u < n_; ++u) {
            const std::uint32_t version = static_cast<std::uint32_t>(u);
            if (u > 0) {
                const std::size_t diff_bits = std::bit_width((u - 1) ^ u);

                // P_L: drop points whose topmost holder leaves the path forever.
                std::uint32_t prev_min = kNoPoint;
                for (std::size_t j = 0; j < diff_bits; ++j) {
                    const std::size_t v = (leaves_ + u - 1) >> j;
                    const std::uint32_t m = node_min_[v];
                    if (m == prev_min) continue;
                    prev_min = m;
                    if (m <= u - 1 && subtree_last_rank(top_holder_[m]) == u - 1)
                        list_erase(pl, pl_head, m, version);
                }
                // L: left children hanging off the abandoned branch disappear…
                for (std::size_t j = 1; j < diff_bits; ++j) {
                    const std::size_t q = (leaves_ + u - 1) >> j;
                    const bool went_right = (((leaves_ + u - 1) >> (j - 1)) & 1) == 1;
                    if (went_right) list_erase(ll, ll_head, node_min_[2 * q], version);
                }
                // …and the straddled left child of the pivot node appears.
                const std::size_t pivot_left = (leaves_ + u) >> (diff_bits - 1) ^ 1;
                list_insert(ll, ll_head, node_min_[pivot_left],
                            static_cast<std::uint32_t>(pivot_left), version);
            }
            // The point whose leaf the sweep reached enters P_L.
            list_insert(pl, pl_head, static_cast<std::uint32_t>(u), 0, version);

            pl_root_[u] = pl_head;
            ll_root_[u] = ll_head;
        }
    }

    std::size_t n_{0};
    std::size_t leaves_{1};
    std::vector<Point> pts_;                          // rank order (x, y, id)
    std::vector<std::vector<std::uint32_t>> secondary_;  // S(v), y-sorted
    std::vector<std::uint32_t> node_min_;
    std::vector<std::uint32_t> top_holder_;
    std::vector<std::uint32_t> table_a_;              // rank -> leaf node
    std::vector<PNode> pool_;
    std::vector<std::int32_t> pl_root_;
    std::vector<std::int32_t> ll_root_;
};

}  // namespace orq
