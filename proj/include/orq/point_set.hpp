#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "orq/geometry.hpp"

namespace orq {

/// Sorted set of point ids; the universal answer type for range queries.
using IdSet = std::vector<i64>;

inline void sort_ids(IdSet& ids) { std::sort(ids.begin(), ids.end()); }

inline IdSet union_ids(const IdSet& a, const IdSet& b) {
    IdSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// An immutable collection of distinct points kept in id order.
class PointSet {
  public:
    PointSet() = default;

    explicit PointSet(std::vector<Point> pts) : points_(std::move(pts)) {
        if (points_.empty()) throw EmptyInput();
        std::sort(points_.begin(), points_.end(),
                  [](const Point& a, const Point& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const Point& p = points_[i];
            if (!in_coordinate_range(p.x, p.y))
                throw CoordinateOutOfRange("point " + std::to_string(p.id) +
                                           " exceeds the coordinate limit");
            if (i > 0 && points_[i - 1].id == p.id)
                throw DuplicatePoint("duplicate point id " + std::to_string(p.id));
        }
        std::vector<Point> by_xy(points_);
        std::sort(by_xy.begin(), by_xy.end(), [](const Point& a, const Point& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        for (std::size_t i = 1; i < by_xy.size(); ++i) {
            if (by_xy[i - 1].x == by_xy[i].x && by_xy[i - 1].y == by_xy[i].y)
                throw DuplicatePoint("duplicate coordinates (" + std::to_string(by_xy[i].x) +
                                     ", " + std::to_string(by_xy[i].y) + ")");
        }
    }

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    IdSet all_ids() const {
        IdSet ids;
        ids.reserve(points_.size());
        for (const Point& p : points_) ids.push_back(p.id);
        return ids;  // already sorted: points_ is id-ordered
    }

  private:
    std::vector<Point> points_;
};

}  // namespace orq
