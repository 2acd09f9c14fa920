#include "partigrowth/young_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "partigrowth/parallel.hpp"

namespace partigrowth {

LevelKind parse_level_kind(const std::string& text) {
    if (text == "ordinary") return LevelKind::Ordinary;
    if (text == "strict") return LevelKind::Strict;
    throw std::invalid_argument("kind must be 'ordinary' or 'strict', got " + text);
}

std::string to_string(LevelKind kind) { return kind == LevelKind::Ordinary ? "ordinary" : "strict"; }

namespace {

bool is_strict(const std::vector<Weight>& parts) {
    return std::adjacent_find(parts.begin(), parts.end()) == parts.end();
}

// Dinic's algorithm on an adjacency-array graph.
class MaxFlow {
public:
    explicit MaxFlow(std::size_t nodes) : head_(nodes, npos) {}

    void add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
        arcs_.push_back({to, head_[from], capacity});
        head_[from] = arcs_.size() - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = arcs_.size() - 1;
    }

    std::int64_t run(std::size_t source, std::size_t sink) {
        std::int64_t total = 0;
        while (bfs(source, sink)) {
            cursor_ = head_;
            while (const std::int64_t pushed = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
                total += pushed;
            }
        }
        return total;
    }

    /// Nodes reachable from `source` in the residual graph after run().
    std::vector<bool> source_side(std::size_t source) const {
        std::vector<bool> seen(head_.size(), false);
        std::vector<std::size_t> stack{source};
        seen[source] = true;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t a = head_[u]; a != npos; a = arcs_[a].next) {
                if (arcs_[a].capacity > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        return seen;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Arc {
        std::size_t to;
        std::size_t next;
        std::int64_t capacity;
    };

    bool bfs(std::size_t source, std::size_t sink) {
        level_.assign(head_.size(), -1);
        std::queue<std::size_t> queue;
        level_[source] = 0;
        queue.push(source);
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop();
            for (std::size_t a = head_[u]; a != npos; a = arcs_[a].next) {
                if (arcs_[a].capacity > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    queue.push(arcs_[a].to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t sink, std::int64_t limit) {
        if (u == sink) return limit;
        for (std::size_t& a = cursor_[u]; a != npos; a = arcs_[a].next) {
            Arc& arc = arcs_[a];
            if (arc.capacity <= 0 || level_[arc.to] != level_[u] + 1) continue;
            const std::int64_t pushed = dfs(arc.to, sink, std::min(limit, arc.capacity));
            if (pushed > 0) {
                arc.capacity -= pushed;
                arcs_[a ^ 1].capacity += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<std::size_t> head_;
    std::vector<std::size_t> cursor_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
};

}  // namespace

LevelBigraph build_level_bigraph(Weight n, LevelKind kind) {
    if (n < 0) throw std::invalid_argument("build_level_bigraph requires n >= 0");
    const Weight cap = kind == LevelKind::Ordinary ? kOrdinaryLevelCap : kStrictLevelCap;
    if (n > cap) throw std::out_of_range("build_level_bigraph: n exceeds cap " + std::to_string(cap));
    LevelBigraph g;
    g.n = n;
    g.kind = kind;
    if (kind == LevelKind::Ordinary) {
        g.left = enumerate_partitions(n, cap + 1);
        g.right = enumerate_partitions(n + 1, cap + 1);
    } else {
        g.left = enumerate_strict_partitions(n, cap + 1);
        g.right = enumerate_strict_partitions(n + 1, cap + 1);
    }
    std::unordered_map<Partition, std::size_t, PartitionHash> index;
    for (std::size_t j = 0; j < g.right.size(); ++j) index.emplace(g.right[j], j);
    for (std::size_t i = 0; i < g.left.size(); ++i) {
        const auto& parts = g.left[i].parts();
        // a box can go at the end of row r when the row above is longer, or
        // start a new row at the bottom
        for (std::size_t r = 0; r <= parts.size(); ++r) {
            std::vector<Weight> grown = parts;
            if (r == parts.size()) {
                grown.push_back(1);
            } else {
                if (r > 0 && parts[r - 1] == parts[r]) continue;
                ++grown[r];
            }
            if (kind == LevelKind::Strict && !is_strict(grown)) continue;
            g.edges.emplace_back(i, index.at(Partition::from_parts(std::move(grown))));
        }
    }
    return g;
}

std::vector<std::size_t> up_set(const LevelBigraph& g, const std::vector<std::size_t>& subset) {
    std::vector<bool> in_subset(g.left.size(), false);
    for (std::size_t i : subset) in_subset.at(i) = true;
    std::vector<bool> hit(g.right.size(), false);
    for (const auto& [i, j] : g.edges) {
        if (in_subset[i]) hit[j] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < hit.size(); ++j) {
        if (hit[j]) out.push_back(j);
    }
    return out;
}

FeasibilityResult supply_demand_feasible(const LevelBigraph& g) {
    const std::size_t L = g.left.size();
    const std::size_t R = g.right.size();
    const auto supply = static_cast<std::int64_t>(R);
    const auto absorb = static_cast<std::int64_t>(L);
    FeasibilityResult out;
    out.demand = supply * absorb;
    const std::size_t source = L + R;
    const std::size_t sink = source + 1;
    MaxFlow flow(L + R + 2);
    for (std::size_t i = 0; i < L; ++i) flow.add_edge(source, i, supply);
    for (std::size_t j = 0; j < R; ++j) flow.add_edge(L + j, sink, absorb);
    for (const auto& [i, j] : g.edges) flow.add_edge(i, L + j, out.demand);
    out.max_flow = flow.run(source, sink);
    out.feasible = out.max_flow == out.demand;
    if (!out.feasible) {
        const auto side = flow.source_side(source);
        for (std::size_t i = 0; i < L; ++i) {
            if (side[i]) out.violating_set.push_back(i);
        }
        out.up_size = up_set(g, out.violating_set).size();
        // |A↑| / |A| < |right| / |left|, in integers
        out.certified = !out.violating_set.empty() &&
                        static_cast<std::int64_t>(out.up_size) * absorb <
                            static_cast<std::int64_t>(out.violating_set.size()) * supply;
    }
    return out;
}

std::vector<Weight> staircase_parts(Weight n) {
    std::vector<Weight> parts;
    Weight k = 0;
    while ((k + 1) * (k + 2) / 2 <= n) ++k;
    if (k * (k + 1) / 2 != n) return {};
    for (Weight p = k; p >= 1; --p) parts.push_back(p);
    return parts;
}

std::vector<LevelVerdict> scan_levels(Weight n_max, LevelKind kind, unsigned threads) {
    if (n_max < 0) throw std::invalid_argument("scan_levels requires n_max >= 0");
    std::vector<LevelVerdict> out(static_cast<std::size_t>(n_max + 1));
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const auto n = static_cast<Weight>(i);
        const auto g = build_level_bigraph(n, kind);
        const auto result = supply_demand_feasible(g);
        LevelVerdict v;
        v.n = n;
        v.left_size = g.left.size();
        v.right_size = g.right.size();
        v.feasible = result.feasible;
        v.violating_set_size = result.violating_set.size();
        v.certified = result.certified;
        const auto stairs = staircase_parts(n);
        if (!stairs.empty()) {
            const auto staircase = Partition::from_parts(stairs);
            for (std::size_t idx : result.violating_set) {
                if (g.left[idx] == staircase) v.contains_staircase = true;
            }
        }
        out[i] = v;
    });
    return out;
}

}  // namespace partigrowth
