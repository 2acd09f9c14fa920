#include "partigrowth/analysis.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "partigrowth/stats.hpp"

namespace partigrowth {

namespace {

const double kC = std::numbers::pi / std::sqrt(6.0);

}  // namespace

// ---------------------------------------------------------- StepFunction

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size()) {
        throw std::invalid_argument("StepFunction needs one more break than values");
    }
    if (breaks_.front() != 0.0) throw std::invalid_argument("StepFunction breaks must start at 0");
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > breaks_[i - 1])) throw std::invalid_argument("StepFunction breaks must increase");
    }
}

StepFunction StepFunction::from_antiderivative(std::vector<double> breaks,
                                               const std::function<double(double)>& primitive) {
    std::vector<double> values;
    values.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        values.push_back((primitive(breaks[i + 1]) - primitive(breaks[i])) / (breaks[i + 1] - breaks[i]));
    }
    return StepFunction(std::move(breaks), std::move(values));
}

double StepFunction::operator()(double x) const {
    if (x < 0.0 || x >= breaks_.back()) return 0.0;
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double StepFunction::integral() const { return integral_to(breaks_.back()); }

double StepFunction::integral_to(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size() && breaks_[i] < x; ++i) {
        acc += values_[i] * (std::min(x, breaks_[i + 1]) - breaks_[i]);
    }
    return acc;
}

double StepFunction::sup_distance(const std::function<double(double)>& g, double a, double b) const {
    double sup = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double lo = std::max(a, breaks_[i]);
        const double hi = std::min(b, breaks_[i + 1]);
        if (lo > hi) continue;
        sup = std::max({sup, std::abs(values_[i] - g(lo)), std::abs(values_[i] - g(hi))});
    }
    if (b > breaks_.back()) sup = std::max(sup, std::abs(g(std::max(a, breaks_.back()))));
    return sup;
}

StepFunction StepFunction::scaled(double factor) const {
    std::vector<double> values = values_;
    for (auto& v : values) v *= factor;
    return StepFunction(breaks_, std::move(values));
}

// ------------------------------------------------------------ limit shape

double shape_distance(const Partition& lambda, double x0) {
    if (lambda.empty()) throw std::invalid_argument("shape_distance requires a non-empty partition");
    if (!(x0 > 0.0)) throw std::domain_error("shape_distance requires x0 > 0");
    const double root = std::sqrt(static_cast<double>(lambda.weight()));
    const double u0 = x0 * root;
    const auto& parts = lambda.parts();
    const Weight largest = lambda.largest();
    double sup = 0.0;
    // on u ∈ (k−1, k] the diagram height is #parts ≥ k
    for (Weight k = static_cast<Weight>(std::floor(u0)) + 1; k <= largest; ++k) {
        const auto it = std::partition_point(parts.begin(), parts.end(), [k](Weight p) { return p >= k; });
        const double value = static_cast<double>(it - parts.begin()) / root;
        const double left = std::max(x0, static_cast<double>(k - 1) / root);
        const double right = static_cast<double>(k) / root;
        sup = std::max({sup, std::abs(value - limit_shape_y(left)), std::abs(value - limit_shape_y(right))});
    }
    // beyond the largest part the diagram is zero and y is decreasing
    sup = std::max(sup, limit_shape_y(std::max(x0, static_cast<double>(largest) / root)));
    return sup;
}

double a_r_apply(const std::function<double(double)>& y, double r, double x) {
    const double c = std::sqrt(1.0 + r * kEta);
    return (y(c * x) + r * h_func(c * x)) / c;
}

std::vector<double> a_r_breaks(const ArGrid& grid) {
    if (!(grid.r > 0.0) || !(grid.x0 > 0.0) || !(grid.x_max > grid.x0) || grid.cells_per_dilation < 1) {
        throw std::invalid_argument("A_r grid needs r > 0, 0 < x0 < x_max and cells_per_dilation >= 1");
    }
    const double log_rho = 0.5 * std::log1p(grid.r * kEta) / grid.cells_per_dilation;
    const auto cells = static_cast<std::size_t>(std::ceil(std::log(grid.x_max / grid.x0) / log_rho));
    std::vector<double> breaks{0.0};
    for (std::size_t i = 0; i <= cells; ++i) breaks.push_back(grid.x0 * std::exp(log_rho * static_cast<double>(i)));
    return breaks;
}

StepFunction a_r_iterate(const StepFunction& y, double r, int iterations, ArGrid grid) {
    if (iterations < 0) throw std::invalid_argument("a_r_iterate requires iterations >= 0");
    grid.r = r;
    const auto breaks = a_r_breaks(grid);
    const std::size_t cells = breaks.size() - 1;
    const auto m = static_cast<std::size_t>(grid.cells_per_dilation);
    const double c = std::sqrt(1.0 + r * kEta);

    std::vector<double> len(cells);
    for (std::size_t i = 0; i < cells; ++i) len[i] = breaks[i + 1] - breaks[i];

    // cell averages of h(cx); the first cell carries the log singularity
    std::vector<double> h_avg(cells);
    h_avg[0] = h_integral(c * breaks[1]) / (c * len[0]);
    for (std::size_t i = 1; i < cells; ++i) {
        const double integral = boost::math::quadrature::gauss<double, 10>::integrate(
            [](double x) { return h_func(x); }, c * breaks[i], c * breaks[i + 1]);
        h_avg[i] = integral / (c * len[i]);
    }

    std::vector<double> v(cells);
    for (std::size_t i = 0; i < cells; ++i) v[i] = (y.integral_to(breaks[i + 1]) - y.integral_to(breaks[i])) / len[i];

    auto normalize = [&](std::vector<double>& values) {
        double area = 0.0;
        for (std::size_t i = 0; i < cells; ++i) area += values[i] * len[i];
        for (auto& value : values) value /= area;
    };
    normalize(v);

    std::vector<double> next(cells);
    for (int it = 0; it < iterations; ++it) {
        // y(cx) on [0, x0) averages y over [0, c·x0) = [0, breaks[m + 1])
        double head = 0.0;
        for (std::size_t j = 0; j <= m && j < cells; ++j) head += v[j] * len[j];
        next[0] = (head / (c * len[0]) + r * h_avg[0]) / c;
        for (std::size_t i = 1; i < cells; ++i) {
            const double shifted = i + m < cells ? v[i + m] : 0.0;
            next[i] = (shifted + r * h_avg[i]) / c;
        }
        normalize(next);
        v.swap(next);
    }
    return StepFunction(breaks, std::move(v));
}

// --------------------------------------------------------------- odd/even

Weight odd_part_count(const Partition& lambda) {
    Weight n = 0;
    for (const auto& run : lambda.runs()) {
        if (run.part % 2 == 1) n += run.count;
    }
    return n;
}

Weight even_part_count(const Partition& lambda) {
    return static_cast<Weight>(lambda.length()) - odd_part_count(lambda);
}

double odd_even_shift(Weight n) {
    if (n < 1) throw std::invalid_argument("odd_even_shift requires n >= 1");
    return 0.25 * std::log(static_cast<double>(n)) - 0.5 * std::log(2.0 * std::numbers::pi / std::sqrt(6.0));
}

ScaledPair odd_even_scaled(const Partition& lambda) {
    const Weight n = lambda.weight();
    if (n < 1) throw std::invalid_argument("odd_even_scaled requires a non-empty partition");
    const double scale = kC / std::sqrt(static_cast<double>(n));
    const double alpha = odd_even_shift(n);
    return {scale * static_cast<double>(odd_part_count(lambda)) - alpha,
            scale * static_cast<double>(even_part_count(lambda)) - alpha};
}

double scaled_length(const Partition& lambda) {
    const Weight n = lambda.weight();
    if (n < 1) throw std::invalid_argument("scaled_length requires a non-empty partition");
    const double nd = static_cast<double>(n);
    return kC / std::sqrt(nd) * static_cast<double>(lambda.length()) - 0.5 * std::log(nd) + std::log(kC);
}

LimitingCdfs limiting_cdfs(double x) {
    return {std::erfc(std::exp(-x)), std::exp(-std::exp(-2.0 * x)), std::exp(-std::exp(-x))};
}

OddEvenSummary summarize_odd_even(const std::vector<Partition>& samples) {
    std::vector<double> xs, ys, ls;
    for (const auto& lambda : samples) {
        const auto p = odd_even_scaled(lambda);
        xs.push_back(p.x);
        ys.push_back(p.y);
        ls.push_back(scaled_length(lambda));
    }
    auto odd = [](double x) { return limiting_cdfs(x).odd; };
    auto even = [](double x) { return limiting_cdfs(x).even; };
    auto gumbel = [](double x) { return limiting_cdfs(x).gumbel; };
    OddEvenSummary out;
    out.ks_odd = ks_statistic(xs, odd);
    out.ks_even = ks_statistic(ys, even);
    out.ks_odd_vs_even_limit = ks_statistic(xs, even);
    out.ks_even_vs_odd_limit = ks_statistic(ys, odd);
    out.correlation = correlation(xs, ys);
    out.ks_length = ks_statistic(ls, gumbel);
    return out;
}

// ----------------------------------------------------- monotone events

MonotoneStatistic::MonotoneStatistic(std::string name, std::function<Weight(Weight, Weight)> phi)
    : name_(std::move(name)), phi_(std::move(phi)) {}

MonotoneStatistic MonotoneStatistic::constant_zero() {
    return {"zero", [](Weight, Weight) { return Weight{0}; }};
}
MonotoneStatistic MonotoneStatistic::length() {
    return {"length", [](Weight, Weight c) { return c; }};
}
MonotoneStatistic MonotoneStatistic::odd_parts() {
    return {"odd_parts", [](Weight k, Weight c) { return k % 2 == 1 ? c : 0; }};
}
MonotoneStatistic MonotoneStatistic::even_parts() {
    return {"even_parts", [](Weight k, Weight c) { return k % 2 == 0 ? c : 0; }};
}
MonotoneStatistic MonotoneStatistic::weight() {
    return {"weight", [](Weight k, Weight c) { return k * c; }};
}
MonotoneStatistic MonotoneStatistic::distinct_parts() {
    return {"distinct_parts", [](Weight, Weight c) { return c > 0 ? Weight{1} : Weight{0}; }};
}
MonotoneStatistic MonotoneStatistic::parts_at_least(Weight threshold) {
    return {"parts_at_least_" + std::to_string(threshold),
            [threshold](Weight k, Weight c) { return k >= threshold ? c : 0; }};
}
MonotoneStatistic MonotoneStatistic::ones() {
    return {"ones", [](Weight k, Weight c) { return k == 1 ? c : 0; }};
}

Weight MonotoneStatistic::operator()(const Partition& lambda) const {
    Weight total = 0;
    for (const auto& run : lambda.runs()) total += phi_(run.part, run.count);
    return total;
}

bool MonotoneStatistic::verify(Weight max_weight) {
    verified_ = false;
    for (Weight k = 1; k <= max_weight; ++k) {
        if (phi_(k, 0) != 0) return false;
        for (Weight c = 0; k * (c + 1) <= max_weight; ++c) {
            if (phi_(k, c) > phi_(k, c + 1)) return false;
        }
    }
    for (Weight w = 0; w < max_weight; ++w) {
        for (const auto& lambda : enumerate_partitions(w)) {
            const Weight base = (*this)(lambda);
            for (Weight k = 1; w + k <= max_weight; ++k) {
                if ((*this)(add_run(lambda, k, 1)) < base) return false;
            }
        }
    }
    verified_ = true;
    return true;
}

std::vector<BigCount> count_at_least(const MonotoneStatistic& stat, Weight c, Weight m_max) {
    if (c < 0 || m_max < 0) throw std::invalid_argument("count_at_least requires c >= 0 and m_max >= 0");
    const auto width = static_cast<std::size_t>(c + 1);
    auto at = [width](Weight w, Weight x) { return static_cast<std::size_t>(w) * width + static_cast<std::size_t>(x); };
    std::vector<BigCount> dp(static_cast<std::size_t>(m_max + 1) * width, 0);
    dp[at(0, 0)] = 1;
    std::vector<BigCount> next;
    for (Weight k = 1; k <= m_max; ++k) {
        next.assign(dp.size(), 0);
        for (Weight w = 0; w <= m_max; ++w) {
            for (Weight x = 0; x <= c; ++x) {
                const auto& ways = dp[at(w, x)];
                if (sgn(ways) == 0) continue;
                for (Weight count = 0; w + k * count <= m_max; ++count) {
                    const Weight value = std::min(c, x + stat.phi(k, count));
                    next[at(w + k * count, value)] += ways;
                }
            }
        }
        dp.swap(next);
    }
    std::vector<BigCount> out;
    for (Weight m = 0; m <= m_max; ++m) out.push_back(dp[at(m, c)]);
    return out;
}

MonotonicityCheck verify_monotonicity_lemma(const MonotoneStatistic& stat, Weight c, Weight n) {
    if (!stat.verified()) throw std::invalid_argument("statistic " + stat.name() + " has not been verified monotone");
    if (n < 1 || n > kMonotonicityCap) throw std::out_of_range("verify_monotonicity_lemma requires 1 <= n <= 18");

    Weight m_max = n + 256;
    auto counts = count_at_least(stat, c, m_max);

    MonotonicityCheck out;
    // left side exactly: Σ_m σ₁(n−m) count_m / (n p(n))
    mpz_class left_num = 0;
    for (Weight m = 0; m < n; ++m) left_num += sigma1(n - m) * counts[static_cast<std::size_t>(m)];
    const mpz_class pn = partition_count(n);
    const mpq_class lhs(left_num, pn * static_cast<unsigned long>(n));
    const mpq_class mid(counts[static_cast<std::size_t>(n)], pn);
    out.lhs = mpq_class(lhs).get_d();
    out.mid = mpq_class(mid).get_d();

    const double base = hyperbolic::log_g<double>(n);
    for (Weight m = n + 1;; ++m) {
        if (m > m_max) {
            m_max *= 2;
            counts = count_at_least(stat, c, m_max);
        }
        const auto& count = counts[static_cast<std::size_t>(m)];
        if (sgn(count) > 0) {
            const double log_term = hyperbolic::log_g<double>(m) - std::log(static_cast<double>(m)) - base +
                                    std::log(static_cast<double>(sigma1_int(m - n))) + log_big(count) -
                                    log_partition_count(m);
            out.rhs += std::exp(log_term);
        }
        ++out.rhs_terms;
        if ((m - n) % 16 == 0 && m >= 6) {
            out.rhs_tail = hyperbolic::backward_tail_bound(n, m, base);
            if (out.rhs_tail <= 1e-12) break;
        }
    }
    // the right side is compared with rounding slack far below the tail target
    out.pass = lhs <= mid && out.mid <= out.rhs + out.rhs_tail + 1e-13;
    return out;
}

}  // namespace partigrowth
