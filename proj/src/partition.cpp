#include "partigrowth/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace partigrowth {

Partition::Partition(std::vector<Weight> sorted_parts) : parts_(std::move(sorted_parts)) {
    for (std::size_t i = 0; i < parts_.size();) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        runs_.push_back({parts_[i], static_cast<Weight>(j - i)});
        weight_ += parts_[i] * static_cast<Weight>(j - i);
        i = j;
    }
}

Partition Partition::from_parts(std::vector<Weight> parts) {
    for (Weight p : parts) {
        if (p < 1) throw std::invalid_argument("partition parts must be positive, got " + std::to_string(p));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>{});
    return Partition(std::move(parts));
}

Partition Partition::from_counts(std::span<const PartRun> runs) {
    std::vector<PartRun> sorted;
    sorted.reserve(runs.size());
    std::size_t total = 0;
    for (const auto& run : runs) {
        if (run.count < 0) throw std::invalid_argument("negative part count");
        if (run.count == 0) continue;
        if (run.part < 1) throw std::invalid_argument("partition parts must be positive");
        sorted.push_back(run);
        total += static_cast<std::size_t>(run.count);
    }
    std::sort(sorted.begin(), sorted.end(), [](const PartRun& a, const PartRun& b) { return a.part > b.part; });
    std::vector<Weight> parts;
    parts.reserve(total);
    for (const auto& run : sorted) parts.insert(parts.end(), static_cast<std::size_t>(run.count), run.part);
    return Partition(std::move(parts));
}

Weight Partition::count(Weight k) const noexcept {
    // runs_ is ordered by decreasing part
    auto it = std::lower_bound(runs_.begin(), runs_.end(), k,
                               [](const PartRun& run, Weight key) { return run.part > key; });
    return (it != runs_.end() && it->part == k) ? it->count : 0;
}

std::string Partition::to_json() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    out += ']';
    return out;
}

Weight young_value(const Partition& lambda, double x) {
    if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("young_value requires x >= 0");
    if (x == 0.0) return static_cast<Weight>(lambda.length());
    const auto& parts = lambda.parts();
    // parts ≥ x form a prefix of the non-increasing sequence
    auto it = std::partition_point(parts.begin(), parts.end(),
                                   [x](Weight p) { return static_cast<double>(p) >= x; });
    return static_cast<Weight>(it - parts.begin());
}

bool growth_leq(const Partition& mu, const Partition& lambda) {
    for (const auto& run : mu.runs()) {
        if (lambda.count(run.part) < run.count) return false;
    }
    return true;
}

bool inclusion_leq(const Partition& mu, const Partition& lambda) {
    const auto& a = mu.parts();
    const auto& b = lambda.parts();
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

Partition add_run(const Partition& mu, Weight k, Weight r) {
    if (k < 1 || r < 1) throw std::invalid_argument("add_run requires k >= 1 and r >= 1");
    std::vector<PartRun> runs = mu.runs();
    auto it = std::find_if(runs.begin(), runs.end(), [k](const PartRun& run) { return run.part == k; });
    if (it != runs.end()) {
        it->count += r;
    } else {
        runs.push_back({k, r});
    }
    return Partition::from_counts(runs);
}

Partition remove_run(const Partition& lambda, Weight k, Weight r) {
    if (k < 1 || r < 1) throw std::invalid_argument("remove_run requires k >= 1 and r >= 1");
    if (lambda.count(k) < r) {
        throw std::invalid_argument("remove_run: partition has fewer than " + std::to_string(r) + " parts of size " +
                                    std::to_string(k));
    }
    std::vector<PartRun> runs = lambda.runs();
    for (auto& run : runs) {
        if (run.part == k) run.count -= r;
    }
    return Partition::from_counts(runs);
}

namespace {

void enumerate_into(Weight remaining, Weight max_part, bool strict, std::vector<Weight>& prefix,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition::from_parts(prefix));
        return;
    }
    for (Weight p = std::min(remaining, max_part); p >= 1; --p) {
        if (strict) {
            // the remaining parts are distinct and below p, so at most p(p-1)/2 more
            if (p + p * (p - 1) / 2 < remaining) break;
        }
        prefix.push_back(p);
        enumerate_into(remaining - p, strict ? p - 1 : p, strict, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(Weight n, Weight cap) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions requires n >= 0");
    if (n > cap) throw std::out_of_range("enumerate_partitions: n = " + std::to_string(n) + " exceeds cap " +
                                         std::to_string(cap));
    std::vector<Partition> out;
    std::vector<Weight> prefix;
    enumerate_into(n, n, false, prefix, out);
    return out;
}

std::vector<Partition> enumerate_strict_partitions(Weight n, Weight cap) {
    if (n < 0) throw std::invalid_argument("enumerate_strict_partitions requires n >= 0");
    if (n > cap) throw std::out_of_range("enumerate_strict_partitions: n exceeds cap");
    std::vector<Partition> out;
    std::vector<Weight> prefix;
    enumerate_into(n, n, true, prefix, out);
    return out;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (Weight part : p.parts()) {
        h ^= std::hash<Weight>{}(part) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace partigrowth
