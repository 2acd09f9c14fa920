#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "partigrowth/partition.hpp"

namespace partigrowth {

enum class LevelKind { Ordinary, Strict };

LevelKind parse_level_kind(const std::string& text);
std::string to_string(LevelKind kind);

inline constexpr Weight kOrdinaryLevelCap = 30;
inline constexpr Weight kStrictLevelCap = 60;

/// Levels n and n+1 of the Young graph (or of its strict-partition
/// subgraph) joined by one-box covers μ ↗ λ.
struct LevelBigraph {
    Weight n = 0;
    LevelKind kind = LevelKind::Ordinary;
    std::vector<Partition> left;
    std::vector<Partition> right;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< (left index, right index)
};

LevelBigraph build_level_bigraph(Weight n, LevelKind kind);

/// Indices of the right nodes adjacent to any left node in `subset`.
std::vector<std::size_t> up_set(const LevelBigraph& g, const std::vector<std::size_t>& subset);

struct FeasibilityResult {
    bool feasible = false;
    std::int64_t max_flow = 0;
    std::int64_t demand = 0;                 ///< |left| · |right|
    std::vector<std::size_t> violating_set;  ///< left indices, empty when feasible
    std::size_t up_size = 0;                 ///< |A↑| for the violating set
    bool certified = false;                  ///< |A↑|·|left| < |A|·|right| rechecked in integers
};

/// Transportation feasibility of the level by integer max-flow: every left
/// node supplies |right| units, every right node absorbs |left| units, and
/// cover edges are uncapacitated. When infeasible, A is the set of left
/// nodes on the source side of the minimum cut.
FeasibilityResult supply_demand_feasible(const LevelBigraph& g);

struct LevelVerdict {
    Weight n = 0;
    std::size_t left_size = 0;
    std::size_t right_size = 0;
    bool feasible = false;
    std::size_t violating_set_size = 0;
    bool certified = false;
    bool contains_staircase = false;  ///< strict kind: A holds (k, k−1, …, 1)
};

/// Verdicts for levels 0..n_max, computed independently (in parallel when
/// threads > 1).
std::vector<LevelVerdict> scan_levels(Weight n_max, LevelKind kind, unsigned threads = 1);

/// (k, k−1, …, 1) when n = k(k+1)/2, else nothing.
std::vector<Weight> staircase_parts(Weight n);

}  // namespace partigrowth
