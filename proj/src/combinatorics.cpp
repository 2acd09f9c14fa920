#include "partigrowth/combinatorics.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>

namespace partigrowth {

namespace {

class PartitionTable {
public:
    BigCount get(Weight n) {
        {
            std::shared_lock lock(mutex_);
            if (static_cast<std::size_t>(n) < values_.size()) return values_[static_cast<std::size_t>(n)];
        }
        std::unique_lock lock(mutex_);
        extend(n);
        return values_[static_cast<std::size_t>(n)];
    }

    double log_get(Weight n) {
        {
            std::shared_lock lock(mutex_);
            if (static_cast<std::size_t>(n) < logs_.size()) return logs_[static_cast<std::size_t>(n)];
        }
        std::unique_lock lock(mutex_);
        extend(n);
        return logs_[static_cast<std::size_t>(n)];
    }

    std::vector<BigCount> prefix(Weight n) {
        std::unique_lock lock(mutex_);
        extend(n);
        return {values_.begin(), values_.begin() + n + 1};
    }

private:
    void extend(Weight n) {
        if (values_.empty()) {
            values_.emplace_back(1);
            logs_.push_back(0.0);
        }
        for (Weight m = static_cast<Weight>(values_.size()); m <= n; ++m) {
            // p(m) = Σ_{k≥1} (−1)^{k+1} [p(m − k(3k−1)/2) + p(m − k(3k+1)/2)]
            BigCount acc = 0;
            for (Weight k = 1;; ++k) {
                const Weight g1 = k * (3 * k - 1) / 2;
                if (g1 > m) break;
                const Weight g2 = k * (3 * k + 1) / 2;
                const bool plus = (k % 2) == 1;
                const auto& a = values_[static_cast<std::size_t>(m - g1)];
                if (plus) acc += a; else acc -= a;
                if (g2 <= m) {
                    const auto& b = values_[static_cast<std::size_t>(m - g2)];
                    if (plus) acc += b; else acc -= b;
                }
            }
            logs_.push_back(log_big(acc));
            values_.push_back(std::move(acc));
        }
    }

    std::shared_mutex mutex_;
    std::vector<BigCount> values_;
    std::vector<double> logs_;
};

PartitionTable& partition_table() {
    static PartitionTable table;
    return table;
}

class SigmaCache {
public:
    std::shared_ptr<const std::vector<std::int64_t>> get(Weight hmax) {
        std::lock_guard lock(mutex_);
        if (!table_ || static_cast<Weight>(table_->size()) <= hmax) {
            Weight size = std::max<Weight>(hmax + 1, table_ ? 2 * static_cast<Weight>(table_->size()) : 1024);
            auto fresh = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(size), 0);
            for (Weight d = 1; d < size; ++d) {
                for (Weight m = d; m < size; m += d) (*fresh)[static_cast<std::size_t>(m)] += d;
            }
            table_ = std::move(fresh);
        }
        return table_;
    }

private:
    std::mutex mutex_;
    std::shared_ptr<const std::vector<std::int64_t>> table_;
};

SigmaCache& sigma_cache() {
    static SigmaCache cache;
    return cache;
}

class StrictTable {
public:
    BigCount get(Weight n) {
        std::lock_guard lock(mutex_);
        if (static_cast<Weight>(values_.size()) <= n) rebuild(std::max<Weight>(n, 2 * static_cast<Weight>(values_.size())));
        return values_[static_cast<std::size_t>(n)];
    }

private:
    void rebuild(Weight nmax) {
        // 0/1 knapsack over part sizes 1..nmax
        std::vector<BigCount> q(static_cast<std::size_t>(nmax + 1), 0);
        q[0] = 1;
        for (Weight k = 1; k <= nmax; ++k) {
            for (Weight m = nmax; m >= k; --m) q[static_cast<std::size_t>(m)] += q[static_cast<std::size_t>(m - k)];
        }
        values_ = std::move(q);
    }

    std::mutex mutex_;
    std::vector<BigCount> values_;
};

}  // namespace

double log_big(const BigCount& value) {
    if (sgn(value) <= 0) throw std::domain_error("log_big requires a positive value");
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

BigCount partition_count(Weight n) {
    if (n < 0) throw std::invalid_argument("partition_count requires n >= 0");
    return partition_table().get(n);
}

double log_partition_count(Weight n) {
    if (n < 0) throw std::invalid_argument("log_partition_count requires n >= 0");
    return partition_table().log_get(n);
}

std::int64_t sigma1_int(Weight h) {
    if (h < 1) throw std::invalid_argument("sigma1 requires h >= 1");
    std::int64_t sum = 0;
    for (Weight d = 1; d * d <= h; ++d) {
        if (h % d == 0) {
            sum += d;
            if (d != h / d) sum += h / d;
        }
    }
    return sum;
}

BigCount sigma1(Weight h) {
    BigCount out;
    mpz_set_si(out.get_mpz_t(), sigma1_int(h));
    return out;
}

std::shared_ptr<const std::vector<std::int64_t>> sigma1_table(Weight hmax) {
    if (hmax < 0) throw std::invalid_argument("sigma1_table requires hmax >= 0");
    return sigma_cache().get(hmax);
}

std::vector<Weight> divisors(Weight h) {
    if (h < 1) throw std::invalid_argument("divisors requires h >= 1");
    std::vector<Weight> small;
    std::vector<Weight> large;
    for (Weight d = 1; d * d <= h; ++d) {
        if (h % d == 0) {
            small.push_back(d);
            if (d != h / d) large.push_back(h / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<BigCount> partition_counts(Weight nmax) {
    if (nmax < 0) throw std::invalid_argument("partition_counts requires nmax >= 0");
    return partition_table().prefix(nmax);
}

namespace {

BigCount residual_from(const std::vector<BigCount>& p, const std::vector<std::int64_t>& sigma, Weight n) {
    BigCount rhs = 0;
    for (Weight m = 0; m < n; ++m) {
        mpz_addmul_ui(rhs.get_mpz_t(), p[static_cast<std::size_t>(m)].get_mpz_t(),
                      static_cast<unsigned long>(sigma[static_cast<std::size_t>(n - m)]));
    }
    BigCount lhs = p[static_cast<std::size_t>(n)];
    lhs *= static_cast<unsigned long>(n);
    BigCount diff = lhs - rhs;
    return abs(diff);
}

}  // namespace

BigCount np_recursion_residual(Weight n) {
    if (n < 1) throw std::invalid_argument("np_recursion_residual requires n >= 1");
    return residual_from(partition_counts(n), *sigma1_table(n), n);
}

std::vector<BigCount> np_recursion_residuals(Weight nmax) {
    if (nmax < 1) throw std::invalid_argument("np_recursion_residuals requires nmax >= 1");
    const auto p = partition_counts(nmax);
    const auto sigma = sigma1_table(nmax);
    std::vector<BigCount> out;
    out.reserve(static_cast<std::size_t>(nmax));
    for (Weight n = 1; n <= nmax; ++n) out.push_back(residual_from(p, *sigma, n));
    return out;
}

double log_hardy_ramanujan_estimate(Weight n) {
    if (n < 1) throw std::invalid_argument("hardy_ramanujan_estimate requires n >= 1");
    const double root = std::sqrt(24.0 * static_cast<double>(n) - 1.0);
    const double pi = std::numbers::pi;
    return std::log(2.0 * std::sqrt(3.0)) + pi * root / 6.0 - 2.0 * std::log(root) +
           std::log1p(-6.0 / (pi * root));
}

double hardy_ramanujan_estimate(Weight n) { return std::exp(log_hardy_ramanujan_estimate(n)); }

BigCount strict_partition_count(Weight n) {
    if (n < 0) throw std::invalid_argument("strict_partition_count requires n >= 0");
    static StrictTable table;
    return table.get(n);
}

}  // namespace partigrowth
