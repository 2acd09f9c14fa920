#pragma once

// Exact feasibility of the level transportation problem by a rational
// simplex, plus brute-force search over subsets, as checks on the max-flow
// path.

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// Is {x ≥ 0 : A x = b} non-empty? Phase-one simplex in mpq with Bland's rule.
bool lp_feasible(const std::vector<std::vector<mpq_class>>& A, const std::vector<mpq_class>& b);

/// Transportation feasibility: left nodes supply `supply`, right nodes
/// absorb `absorb`, flow only along `edges` (left index, right index).
bool transport_feasible_lp(std::size_t left, std::size_t right, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                           long supply, long absorb);

/// Some A ⊆ left with |A↑|·left < |A|·right, by exhausting all 2^left
/// subsets (left ≤ 25, right ≤ 64).
bool exists_violating_subset(std::size_t left, std::size_t right, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace oracle
