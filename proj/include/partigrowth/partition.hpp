#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace partigrowth {

using Weight = std::int64_t;

/// One run of equal parts: `count` parts of size `part`.
struct PartRun {
    Weight part = 0;
    Weight count = 0;
    bool operator==(const PartRun&) const = default;
};

/// An integer partition stored as its non-increasing parts.
///
/// The part-count view (runs of equal parts, largest first) is derived at
/// construction and kept alongside; instances are immutable.
class Partition {
public:
    Partition() = default;

    /// Sorts `parts` into non-increasing order. Throws std::invalid_argument
    /// on a zero or negative entry.
    static Partition from_parts(std::vector<Weight> parts);

    /// Builds from (part, count) pairs in any order; zero counts are skipped.
    static Partition from_counts(std::span<const PartRun> runs);

    const std::vector<Weight>& parts() const noexcept { return parts_; }
    const std::vector<PartRun>& runs() const noexcept { return runs_; }

    Weight weight() const noexcept { return weight_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    Weight largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

    /// C_k: multiplicity of part size k.
    Weight count(Weight k) const noexcept;

    /// Number of distinct part sizes.
    std::size_t distinct() const noexcept { return runs_.size(); }

    /// JSON array of parts, e.g. "[4,3,3,1,1]".
    std::string to_json() const;

    bool operator==(const Partition& other) const noexcept { return parts_ == other.parts_; }
    auto operator<=>(const Partition& other) const noexcept { return parts_ <=> other.parts_; }

private:
    explicit Partition(std::vector<Weight> sorted_parts);

    std::vector<Weight> parts_;
    std::vector<PartRun> runs_;
    Weight weight_ = 0;
};

/// Y_λ(x) = number of parts ≥ x for x > 0, and ℓ(λ) at x = 0.
Weight young_value(const Partition& lambda, double x);

/// μ ≼ λ: C_k(μ) ≤ C_k(λ) for every k (λ is μ with parts added).
bool growth_leq(const Partition& mu, const Partition& lambda);

/// μ ⊆ λ as Young diagrams: μ_i ≤ λ_i for all i.
bool inclusion_leq(const Partition& mu, const Partition& lambda);

/// Adds r parts of size k. Requires k ≥ 1, r ≥ 1.
Partition add_run(const Partition& mu, Weight k, Weight r);

/// Removes r parts of size k. Throws std::invalid_argument when C_k(λ) < r.
Partition remove_run(const Partition& lambda, Weight k, Weight r);

inline constexpr Weight kDefaultEnumerationCap = 40;

/// Every partition of n, in lexicographically decreasing order of parts.
/// Throws std::out_of_range when n exceeds `cap`.
std::vector<Partition> enumerate_partitions(Weight n, Weight cap = kDefaultEnumerationCap);

/// Partitions of n into distinct parts, lexicographically decreasing.
std::vector<Partition> enumerate_strict_partitions(Weight n, Weight cap = 60);

struct PartitionHash {
    std::size_t operator()(const Partition& p) const noexcept;
};

}  // namespace partigrowth
