#include <catch2/catch_amalgamated.hpp>

#include "orq/brute_force.hpp"
#include "orq/priority_search_tree.hpp"
#include "test_oracles.hpp"

using namespace orq;

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

/// Full-traversal verification of the heap and search properties.
void check_structure(const PrioritySearchTree& t) {
    const auto& ranks = t.rank_order();
    std::vector<int> stored(ranks.size(), 0);
    for (std::size_t node = 1; node < t.node_count(); ++node) {
        const auto p = t.node_point(node);
        if (!p) continue;
        // locate the rank of this point
        std::size_t rank = ranks.size();
        for (std::size_t r = 0; r < ranks.size(); ++r)
            if (ranks[r].id == p->id) rank = r;
        REQUIRE(rank < ranks.size());
        ++stored[rank];
        // search property: the node lies on the root-to-leaf path of its rank
        std::size_t leaf = t.leaf_of_rank(rank);
        bool on_path = false;
        for (std::size_t a = leaf; a >= 1; a /= 2) on_path = on_path || a == node;
        REQUIRE(on_path);
        // heap property against the parent
        if (node > 1) {
            const auto parent = t.node_point(node / 2);
            REQUIRE(parent.has_value());  // vacancies never sit above points
            REQUIRE(PrioritySearchTree::y_key_less(*parent, *p));
        }
    }
    for (std::size_t r = 0; r < ranks.size(); ++r) REQUIRE(stored[r] == 1);
}

}  // namespace

TEST_CASE("single point sits at the root") {
    const PointSet s(std::vector<Point>{{7, 3, 4}});
    const PrioritySearchTree t(s);
    REQUIRE(t.node_point(1).has_value());
    CHECK(t.node_point(1)->id == 7);
}

TEST_CASE("minimum y point is forced to the root") {
    const PointSet s(std::vector<Point>{{1, 1, 3}, {2, 2, 1}, {3, 3, 2}});
    const PrioritySearchTree t(s);
    REQUIRE(t.node_point(1).has_value());
    CHECK(t.node_point(1)->id == 2);
    check_structure(t);
}

TEST_CASE("empty input rejected") {
    CHECK_THROWS_AS(PrioritySearchTree(PointSet{}), EmptyInput);
}

TEST_CASE("random builds satisfy heap and search properties") {
    oracle::Rng rng(111);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 120));
        const PointSet s(oracle::random_points(rng, n, -50, 50));
        const PrioritySearchTree t(s);
        check_structure(t);
    }
    // larger sizes, fewer trials
    for (int trial = 0; trial < 3; ++trial) {
        const PointSet s(oracle::random_points(rng, 1000, -100000, 100000));
        check_structure(PrioritySearchTree(s));
    }
}

TEST_CASE("quadrant query edge cases") {
    oracle::Rng rng(222);
    const PointSet s(oracle::random_points(rng, 500, -1000, 1000));
    const PrioritySearchTree t(s);

    const auto all = t.query(1000, 1000);
    CHECK(all.ids == s.all_ids());

    const auto none = t.query(-1001, 0);
    CHECK(none.ids.empty());
    CHECK(none.stats.nodes_visited <= t.height() + 1);
}

TEST_CASE("quadrant queries match the oracle within the counter bound") {
    oracle::Rng rng(333);
    const PointSet s(oracle::random_points(rng, 10000, -1000000, 1000000));
    const PrioritySearchTree t(s);
    const std::uint64_t lg = ceil_log2(s.size());
    for (int i = 0; i < 1000; ++i) {
        const i64 b = rng.uniform(-1100000, 1100000);
        const i64 c = rng.uniform(-1100000, 1100000);
        const auto res = t.query(b, c);
        REQUIRE(res.ids == brute::scan_quadrant(s, b, c));
        REQUIRE(res.stats.nodes_visited <= 4 * (lg + res.ids.size() + 1));
    }
}

TEST_CASE("duplicate x coordinates are ordered consistently") {
    std::vector<Point> pts;
    for (i64 i = 0; i < 40; ++i) pts.push_back({i + 1, i % 5, i});
    const PointSet s(pts);
    const PrioritySearchTree t(s);
    check_structure(t);
    for (i64 b = -1; b <= 5; ++b)
        for (i64 c = -1; c <= 40; c += 7)
            REQUIRE(t.query(b, c).ids == brute::scan_quadrant(s, b, c));
}
