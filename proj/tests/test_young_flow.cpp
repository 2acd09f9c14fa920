#include <doctest.h>

#include <algorithm>

#include "partigrowth/combinatorics.hpp"
#include "partigrowth/young_flow.hpp"
#include "support/rational_lp.hpp"

using namespace partigrowth;

namespace {

bool is_strict(const Partition& p) {
    const auto parts = p.parts();
    return std::adjacent_find(parts.begin(), parts.end()) == parts.end();
}

}  // namespace

TEST_CASE("level bigraph structure") {
    for (Weight n = 0; n <= 12; ++n) {
        const auto g = build_level_bigraph(n, LevelKind::Ordinary);
        CHECK(g.left.size() == partition_count(n).get_ui());
        CHECK(g.right.size() == partition_count(n + 1).get_ui());
        // every λ ⊢ n+1 covers one μ per distinct part size
        std::size_t corners = 0;
        for (const auto& lambda : g.right) corners += lambda.distinct();
        CHECK(g.edges.size() == corners);
        // every μ ⊢ n has one more addable cell than distinct part sizes
        std::vector<std::size_t> out_degree(g.left.size(), 0);
        for (const auto& [l, r] : g.edges) {
            ++out_degree[l];
            CHECK(g.left[l].weight() == n);
            CHECK(g.left[l] <= g.right[r]);
        }
        for (std::size_t i = 0; i < g.left.size(); ++i) CHECK(out_degree[i] == g.left[i].distinct() + 1);
    }
    for (Weight n = 1; n <= 20; ++n) {
        const auto g = build_level_bigraph(n, LevelKind::Strict);
        CHECK(g.left.size() == strict_partition_count(n).get_ui());
        CHECK(g.right.size() == strict_partition_count(n + 1).get_ui());
        for (const auto& [l, r] : g.edges) {
            CHECK(is_strict(g.left[l]));
            CHECK(is_strict(g.right[r]));
            CHECK(g.left[l] <= g.right[r]);
        }
    }
    CHECK(parse_level_kind("strict") == LevelKind::Strict);
    CHECK(to_string(LevelKind::Ordinary) == "ordinary");
    CHECK_THROWS(parse_level_kind("odd"));
    CHECK_THROWS(build_level_bigraph(kOrdinaryLevelCap + 1, LevelKind::Ordinary));
    CHECK_THROWS(build_level_bigraph(kStrictLevelCap + 1, LevelKind::Strict));
}

TEST_CASE("max-flow verdict agrees with the rational LP") {
    auto agree = [](Weight n, LevelKind kind) {
        const auto g = build_level_bigraph(n, kind);
        const auto flow = supply_demand_feasible(g);
        CAPTURE(n);
        CAPTURE(to_string(kind));
        CHECK(flow.demand == static_cast<std::int64_t>(g.left.size() * g.right.size()));
        CHECK(flow.feasible == (flow.max_flow == flow.demand));
        CHECK(flow.feasible == oracle::transport_feasible_lp(g.left.size(), g.right.size(), g.edges,
                                                             static_cast<long>(g.right.size()), static_cast<long>(g.left.size())));
        if (g.left.size() <= 25) CHECK(flow.feasible != oracle::exists_violating_subset(g.left.size(), g.right.size(), g.edges));
        if (!flow.feasible) {
            CHECK(flow.certified);
            CHECK(flow.up_size == up_set(g, flow.violating_set).size());
            CHECK(flow.up_size * g.left.size() < flow.violating_set.size() * g.right.size());
        }
    };
    for (Weight n = 0; n <= 8; ++n) agree(n, LevelKind::Ordinary);
    for (Weight n = 1; n <= 10; ++n) agree(n, LevelKind::Strict);
}

TEST_CASE("strict staircase levels are infeasible") {
    CHECK(staircase_parts(10) == std::vector<Weight>{4, 3, 2, 1});
    CHECK(staircase_parts(11).empty());
    for (Weight n : {10, 15, 21}) {
        const auto g = build_level_bigraph(n, LevelKind::Strict);
        const auto stairs = Partition::from_parts(staircase_parts(n));
        const auto it = std::find(g.left.begin(), g.left.end(), stairs);
        REQUIRE(it != g.left.end());
        const std::size_t index = static_cast<std::size_t>(it - g.left.begin());
        // the staircase has a single strict successor, so {staircase} alone violates the cut condition
        CHECK(up_set(g, {index}).size() == 1);
        CHECK(g.left.size() < g.right.size());

        const auto flow = supply_demand_feasible(g);
        CAPTURE(n);
        CHECK_FALSE(flow.feasible);
        CHECK(flow.certified);
        CHECK(std::find(flow.violating_set.begin(), flow.violating_set.end(), index) != flow.violating_set.end());
    }
    const auto verdicts = scan_levels(21, LevelKind::Strict, 2);
    for (Weight n : {10, 15, 21}) {
        CHECK_FALSE(verdicts[static_cast<std::size_t>(n)].feasible);
        CHECK(verdicts[static_cast<std::size_t>(n)].contains_staircase);
    }
}

TEST_CASE("ordinary levels") {
    const auto serial = scan_levels(25, LevelKind::Ordinary, 1);
    const auto parallel = scan_levels(25, LevelKind::Ordinary, 3);
    REQUIRE(serial.size() == 26);
    for (std::size_t n = 0; n < serial.size(); ++n) {
        CAPTURE(n);
        CHECK(serial[n].n == static_cast<Weight>(n));
        CHECK(serial[n].feasible == parallel[n].feasible);
        CHECK(serial[n].left_size == partition_count(static_cast<Weight>(n)).get_ui());
        if (!serial[n].feasible) CHECK(serial[n].certified);
    }
    std::string infeasible;
    for (const auto& v : serial) {
        if (!v.feasible) infeasible += std::to_string(v.n) + " ";
    }
    MESSAGE("infeasible ordinary levels up to 25: " << (infeasible.empty() ? "none" : infeasible));
}
