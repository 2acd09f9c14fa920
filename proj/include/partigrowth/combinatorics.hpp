#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "partigrowth/partition.hpp"

namespace partigrowth {

/// Exact non-negative integer of arbitrary size.
using BigCount = mpz_class;

/// p(n) by Euler's pentagonal recurrence. The table is memoized process-wide
/// and extended on demand; calls are thread-safe.
BigCount partition_count(Weight n);

/// p(0), …, p(nmax) as an owned copy.
std::vector<BigCount> partition_counts(Weight nmax);

/// Natural log of p(n), exact up to double rounding.
double log_partition_count(Weight n);

/// σ₁(h), the sum of the divisors of h, by trial division up to √h.
BigCount sigma1(Weight h);

/// Same as sigma1 but as a machine integer; exact for h < 2^40.
std::int64_t sigma1_int(Weight h);

/// Read-only sieve of σ₁(0..hmax), σ₁(0) = 0. Snapshots are shared and
/// never mutated after publication.
std::shared_ptr<const std::vector<std::int64_t>> sigma1_table(Weight hmax);

/// Divisors of h in increasing order.
std::vector<Weight> divisors(Weight h);

/// |n p(n) − Σ_{m<n} p(m) σ₁(n−m)|, which is zero for every n ≥ 1.
BigCount np_recursion_residual(Weight n);

/// Residuals for n = 1..nmax, element i holding n = i + 1.
std::vector<BigCount> np_recursion_residuals(Weight nmax);

/// Two-term Hardy–Ramanujan approximation of p(n).
double hardy_ramanujan_estimate(Weight n);
double log_hardy_ramanujan_estimate(Weight n);

/// Number of partitions of n into distinct parts.
BigCount strict_partition_count(Weight n);

/// Converts a positive big integer to its natural log.
double log_big(const BigCount& value);

}  // namespace partigrowth
