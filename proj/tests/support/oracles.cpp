#include "support/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "partigrowth/stats.hpp"

namespace oracle {

mpz_class partition_count(std::int64_t n) {
    // table[m] after processing part sizes ≤ k is p(m, k)
    std::vector<mpz_class> table(static_cast<std::size_t>(n + 1), 0);
    table[0] = 1;
    for (std::int64_t k = 1; k <= n; ++k) {
        for (std::int64_t m = k; m <= n; ++m) table[m] += table[m - k];
    }
    return table[n];
}

mpz_class strict_partition_count(std::int64_t n) {
    std::vector<mpz_class> table(static_cast<std::size_t>(n + 1), 0);
    table[0] = 1;
    for (std::int64_t k = 1; k <= n; ++k) {
        for (std::int64_t m = n; m >= k; --m) table[m] += table[m - k];
    }
    return table[n];
}

std::int64_t sigma1(std::int64_t h) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d <= h; ++d) {
        if (h % d == 0) s += d;
    }
    return s;
}

namespace {

void extend(std::int64_t remaining, std::int64_t max_part, bool strict, std::vector<std::int64_t>& prefix,
            std::vector<std::vector<std::int64_t>>& out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    for (std::int64_t k = std::min(remaining, max_part); k >= 1; --k) {
        prefix.push_back(k);
        extend(remaining - k, strict ? k - 1 : k, strict, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::int64_t>> partitions(std::int64_t n) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> prefix;
    extend(n, n, false, prefix, out);
    return out;
}

std::vector<std::vector<std::int64_t>> strict_partitions(std::int64_t n) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> prefix;
    extend(n, n, true, prefix, out);
    return out;
}

double g_tau_quadrature(std::int64_t n, double tau) {
    // s = τ + u/(1 − u) maps [0, 1) onto [τ, ∞); the Euler product kills the
    // integrand at s → 0 and e^{−ns} at s → ∞, so Simpson converges fast
    const auto integrand = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double s = tau + u / (1.0 - u);
        if (s <= 0.0) return 0.0;
        double log_product = 0.0;
        for (std::int64_t j = 1;; ++j) {
            const double x = std::exp(-static_cast<double>(j) * s);
            if (x < 1e-20) break;
            log_product += std::log1p(-x);
            if (log_product < -750.0) return 0.0;
        }
        const double jacobian = 1.0 / ((1.0 - u) * (1.0 - u));
        return std::exp(-static_cast<double>(n) * s + log_product) * jacobian;
    };
    constexpr int kPanels = 200000;
    const double h = 1.0 / kPanels;
    double sum = integrand(0.0) + integrand(1.0);
    for (int i = 1; i < kPanels; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    return static_cast<double>(n) * sum * h / 3.0;
}

double chi_square_p_merged(const std::vector<std::int64_t>& observed, const std::vector<double>& probs, double min_expected) {
    const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
    const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::vector<std::int64_t> obs;
    std::vector<double> exp;
    std::int64_t o = 0;
    double e = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o += observed[i];
        e += probs[i] / mass;
        if (e * total >= min_expected) {
            obs.push_back(o);
            exp.push_back(e);
            o = 0;
            e = 0;
        }
    }
    if (e > 0 || o > 0) {
        if (exp.empty()) {
            obs.push_back(o);
            exp.push_back(e);
        } else {
            obs.back() += o;
            exp.back() += e;
        }
    }
    return partigrowth::chi_square(obs, exp).p_value;
}

}  // namespace oracle
