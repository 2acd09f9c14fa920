#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "partigrowth/measures.hpp"
#include "partigrowth/partition.hpp"
#include "partigrowth/rng.hpp"

namespace partigrowth {

enum class Direction { ForwardRemoval, BackwardInsertion };

struct ChainStep {
    Partition before;
    Partition after;
    Weight rect_k = 0;
    Weight rect_r = 0;
    Direction direction = Direction::ForwardRemoval;

    bool operator==(const ChainStep&) const = default;
};

/// Steps in the order they happen. Forward runs also carry the jump times,
/// listed in increasing order of t (weights decrease along the run).
struct Trajectory {
    std::vector<ChainStep> steps;
    std::vector<double> times;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    bool operator==(const Trajectory&) const = default;
};

/// Largest k needed so that P[C_k > 0 for some k > k_max] < 1e−12 under M_q.
Weight gc_kmax(double q);

/// Draw from Fristedt's measure M_q: independent C_k ~ Geom(1 − q^k).
Partition sample_gc_partition(double q, RngStream& rng);

/// One step of the forward jump chain: a uniform box picks the run κ and
/// the row inside it; that row and all equal rows below it are removed.
/// Throws std::invalid_argument at ∅.
ChainStep forward_jump(const Partition& lambda, RngStream& rng);

/// Continuous-time chain from λ0 at time τ: holding time Exp(N(λ)), then
/// a forward jump, until ∅ is reached.
Trajectory gillespie_forward(const Partition& lambda0, double tau, RngStream& rng);

/// Shared read-only tables for the backward chain: log(g(m)/m) and σ₁.
class BackwardKernel {
public:
    /// Tables cover weights up to `cap`; larger weights fall back to direct
    /// evaluation.
    explicit BackwardKernel(Weight cap);

    /// Jump weight h drawn with probability q̂_{n,n+h} by cumulative
    /// inversion. Throws std::runtime_error past the hard cap n + 10⁶.
    Weight sample_jump_weight(Weight n, RngStream& rng) const;

    /// Part size k | h drawn with probability k/σ₁(h).
    Weight sample_part_size(Weight h, RngStream& rng) const;

    const VisitTable& visits() const noexcept { return visits_; }

private:
    double sigma(Weight h) const;

    Weight cap_;
    VisitTable visits_;
    std::shared_ptr<const std::vector<std::int64_t>> sigma_;
};

/// One step of the backward growth chain Λ̂ from μ.
ChainStep backward_jump(const Partition& mu, const BackwardKernel& kernel, RngStream& rng);

struct BackwardRun {
    Trajectory trajectory;            ///< empty unless steps were recorded
    bool hit = false;                 ///< weight equalled the target at some step
    Weight n_final = 0;               ///< first weight ≥ target
    std::size_t steps = 0;
    std::optional<Partition> at_hit;  ///< the partition of the target weight, if kept
};

struct BackwardOptions {
    bool record_steps = true;
    bool keep_hit_partition = true;
};

/// Runs Λ̂ from ∅ until the weight reaches n_target or more.
BackwardRun run_backward_until(Weight n_target, const BackwardKernel& kernel, RngStream& rng,
                               BackwardOptions options = {});

using VisitMap = std::unordered_map<Partition, double, PartitionHash>;

inline constexpr Weight kVisitTableCap = 30;

/// Exact probability v(λ) that Λ̂ passes through λ, for every λ of weight at
/// most n_max, by dynamic programming over predecessors in weight order.
/// With a multiprecision Precision the recursion runs in MPFR.
VisitMap visit_probability_table(Weight n_max, Precision precision = {});

struct RejectionDraw {
    Partition partition;
    std::int64_t attempts = 0;  ///< includes the accepted draw
};

/// Uniform partition of n by drawing from M_{q_n} until the weight is n.
RejectionDraw sample_uniform_rejection(Weight n, RngStream& rng);

/// Uniform partition of n by conditioning on C_1: draw C_k, k ≥ 2, from
/// M_{q_n}, reject when Σ kC_k > n, else accept with probability q_n^{n−s}
/// and set C_1 = n − s. Exact, and practical at n = 10⁶.
RejectionDraw sample_uniform_pdc(Weight n, RngStream& rng);

/// E[(KR)^ν | N = n] = Σ_h h^ν q̂_{n,n+h}, with certified truncation.
double expected_rect_moments(Weight n, int nu);

struct KLaw {
    double finite = 0.0;  ///< P[K ≤ x√n | N = n]
    double limit = 0.0;   ///< ∫₀^x y e^{−πy/√6}/(1 − e^{−πy/√6}) dy
};
KLaw marginal_K_law(Weight n, double x);

/// P[R = r | K = k, N = n] for r = 1..r_max.
std::vector<double> conditional_R_law(Weight n, Weight k, Weight r_max);

}  // namespace partigrowth
