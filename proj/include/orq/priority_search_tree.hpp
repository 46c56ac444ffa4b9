#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "orq/geometry.hpp"
#include "orq/point_set.hpp"

namespace orq {

struct PstQueryStats {
    std::uint64_t nodes_visited{0};
};

/// McCreight's priority search tree: a complete binary search tree over
/// x-rank whose nodes satisfy a min-heap order on y. Answers quadrant
/// queries (-inf, b] x (-inf, c] in O(log n + t).
class PrioritySearchTree {
  public:
    explicit PrioritySearchTree(const PointSet& s) {
        if (s.empty()) throw EmptyInput();
        keys_ = s.points();
        std::sort(keys_.begin(), keys_.end(), [](const Point& a, const Point& b) {
            if (a.x != b.x) return a.x < b.x;
            if (a.y != b.y) return a.y < b.y;
            return a.id < b.id;
        });
        n_ = keys_.size();
        leaves_ = std::bit_ceil(n_);
        slot_.assign(2 * leaves_, kEmpty);

        // Insert in (y, x, id) order along each point's root-to-leaf search
        // path, taking the first vacant node: the heap and search properties
        // fall out of the insertion order.
        std::vector<std::uint32_t> by_y(n_);
        for (std::uint32_t i = 0; i < n_; ++i) by_y[i] = i;
        std::sort(by_y.begin(), by_y.end(), [&](std::uint32_t a, std::uint32_t b) {
            return y_key_less(keys_[a], keys_[b]);
        });
        for (const std::uint32_t rank_idx : by_y) place(rank_idx);
    }

    std::size_t size() const { return n_; }
    std::size_t height() const { return std::bit_width(leaves_) - 1; }

    struct Result {
        IdSet ids;
        PstQueryStats stats;
    };

    Result query(i64 b, i64 c) const {
        Result res;
        // Walk the search path for b; left children off the path cover the
        // x <= b leaves and are reported with the y cutoff.
        std::size_t node = 1;
        while (true) {
            ++res.stats.nodes_visited;
            if (slot_[node] != kEmpty) {
                const Point& p = keys_[slot_[node]];
                if (p.x <= b && p.y <= c) res.ids.push_back(p.id);
            }
            if (node >= leaves_) break;  // reached a leaf
            if (max_real_in_left(node) <= b) {
                report_subtree(2 * node, b, c, res);
                node = 2 * node + 1;
            } else {
                node = 2 * node;
            }
        }
        sort_ids(res.ids);
        return res;
    }

    // Introspection for structural tests.
    std::size_t node_count() const { return slot_.size(); }
    std::optional<Point> node_point(std::size_t node) const {
        if (slot_[node] == kEmpty) return std::nullopt;
        return keys_[slot_[node]];
    }
    const std::vector<Point>& rank_order() const { return keys_; }
    std::size_t leaf_of_rank(std::size_t rank) const { return leaves_ + rank; }

    static bool y_key_less(const Point& a, const Point& b) {
        if (a.y != b.y) return a.y < b.y;
        if (a.x != b.x) return a.x < b.x;
        return a.id < b.id;
    }

  private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    void place(std::uint32_t rank_idx) {
        std::size_t node = 1;
        std::size_t lo = 0, hi = leaves_;
        while (slot_[node] != kEmpty) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (rank_idx < mid) {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid;
            }
        }
        slot_[node] = rank_idx;
    }

    /// Largest real x in the left subtree of `node`; +inf sentinel when the
    /// left subtree holds only padding leaves (forces the walk left).
    i64 max_real_in_left(std::size_t node) const {
        const std::size_t depth = std::bit_width(node) - 1;
        const std::size_t span = leaves_ >> (depth + 1);  // leaves under each child
        const std::size_t first = node * span * 2 - leaves_;
        const std::size_t last_left = first + span - 1;
        if (first >= n_) return std::numeric_limits<i64>::max();
        return keys_[std::min<std::size_t>(last_left, n_ - 1)].x;
    }

    void report_subtree(std::size_t node, i64 b, i64 c, Result& res) const {
        ++res.stats.nodes_visited;
        if (slot_[node] == kEmpty) return;  // vacancies never shadow points below
        const Point& p = keys_[slot_[node]];
        if (p.y > c) return;
        if (p.x <= b) res.ids.push_back(p.id);
        if (node < leaves_) {
            report_subtree(2 * node, b, c, res);
            report_subtree(2 * node + 1, b, c, res);
        }
    }

    std::size_t n_{0};
    std::size_t leaves_{1};
    std::vector<Point> keys_;            // rank order: (x, y, id)
    std::vector<std::uint32_t> slot_;    // heap-indexed nodes -> rank index
};

}  // namespace orq
