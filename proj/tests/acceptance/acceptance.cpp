// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Wall-clock budgets are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "partigrowth/analysis.hpp"
#include "partigrowth/chains.hpp"
#include "partigrowth/combinatorics.hpp"
#include "partigrowth/measures.hpp"
#include "partigrowth/parallel.hpp"
#include "partigrowth/poisson.hpp"
#include "partigrowth/stats.hpp"
#include "partigrowth/young_flow.hpp"
#include "support/oracles.hpp"
#include "support/rational_lp.hpp"

using namespace partigrowth;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = false;
    std::string detail;
};

unsigned threads() {
    static const unsigned t = resolve_threads();
    return t;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1); }

// Uniform samples at n = 10⁶, shared by the shape and odd/even criteria.
const std::vector<Partition>& million_samples() {
    static const std::vector<Partition> samples = [] {
        std::vector<Partition> s(2000);
        parallel_for(s.size(), threads(), [&](std::size_t i) {
            RngStream rng(20240601, i);
            s[i] = sample_uniform_pdc(1'000'000, rng).partition;
        });
        return s;
    }();
    return samples;
}

Verdict exact_uniformity() {
    const auto table = visit_probability_table(20);
    double worst_ratio = 0, worst_closed = 0;
    for (Weight n = 0; n <= 20; ++n) {
        double lo = 1e300, hi = 0;
        for (const auto& p : enumerate_partitions(n)) {
            const double v = table.at(p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            worst_closed = std::max(worst_closed, rel(v, log_g(n).value()));
        }
        worst_ratio = std::max(worst_ratio, hi / lo - 1);
    }
    return {worst_ratio <= 1e-9 && worst_closed <= 1e-9,
            "max |v/v'-1| " + fmt(worst_ratio) + ", max rel error vs closed-form g " + fmt(worst_closed)};
}

Verdict np_recursion() {
    const auto residuals = np_recursion_residuals(10000);
    std::size_t nonzero = 0;
    for (const auto& r : residuals) nonzero += r != 0;
    return {nonzero == 0 && residuals.size() == 10000,
            std::to_string(residuals.size()) + " levels, " + std::to_string(nonzero) + " nonzero residuals"};
}

Verdict identities() {
    const auto mp = Precision::parse("mp:50");
    std::vector<double> worst(101, 0.0);
    parallel_for(worst.size(), threads(), [&](std::size_t i) {
        const auto n = static_cast<Weight>(i);
        const auto b = backward_normalization_residual(n, mp);
        const auto d = divisor_identity_residual(n, mp);
        worst[i] = std::max(b.residual + b.tail_bound, d.residual + d.tail_bound);
    });
    const double w = *std::max_element(worst.begin(), worst.end());
    return {w <= 1e-9, "max residual + tail bound over n <= 100 at mp:50: " + fmt(w)};
}

Verdict appendix() {
    double series = 0, subst = 0;
    for (double x : {std::sqrt(23.0), 5.0, 20.0}) series = std::max(series, appendix_series_residual(x, 10000));
    for (Weight n : {1, 5, 20}) subst = std::max(subst, rel(appendix_g_of_n(n, 10000), log_g(n).value()));
    return {series <= 1e-8 && subst <= 1e-8,
            "max partial-sum residual " + fmt(series) + ", max rel error of g(n) by substitution " + fmt(subst)};
}

Verdict hit_rate() {
    constexpr Weight n = 10000;
    constexpr std::size_t R = 100000;
    const BackwardKernel kernel(n + 4096);
    std::vector<char> hit(R, 0);
    parallel_for(R, threads(), [&](std::size_t i) {
        RngStream rng(5, i);
        hit[i] = run_backward_until(n, kernel, rng, {.record_steps = false, .keep_hit_partition = false}).hit;
    });
    const double hits = static_cast<double>(std::count(hit.begin(), hit.end(), 1));
    const double gamma = gamma_visit(n).value();
    const double sigma = std::sqrt(gamma * (1 - gamma) / R);
    const double z = (hits / R - gamma) / sigma;
    const double ratio = gamma * 2 * std::sqrt(6.0 * n) / kPi;
    return {std::abs(z) <= 3 && ratio >= 0.97 && ratio <= 1.03,
            "rate " + fmt(hits / R) + " vs exact " + fmt(gamma) + " (z = " + fmt(z) + "), asymptotic ratio " + fmt(ratio)};
}

Verdict rejection_cost() {
    constexpr std::size_t kCost = 10000, kUniform = 100000;
    std::vector<std::int64_t> attempts(kCost);
    parallel_for(kCost, threads(), [&](std::size_t i) {
        RngStream rng(6, i);
        attempts[i] = sample_uniform_rejection(100, rng).attempts;
    });
    double total = 0;
    for (auto a : attempts) total += static_cast<double>(a);
    const double predicted = std::pow(96.0, 0.25) * std::pow(100.0, 0.75);
    const double off = rel(total / kCost, predicted);

    std::vector<Partition> draws(kUniform);
    parallel_for(kUniform, threads(), [&](std::size_t i) {
        RngStream rng(7, i);
        draws[i] = sample_uniform_rejection(8, rng).partition;
    });
    const auto level = enumerate_partitions(8);
    std::vector<std::int64_t> counts(level.size(), 0);
    for (const auto& d : draws) counts[static_cast<std::size_t>(std::find(level.begin(), level.end(), d) - level.begin())]++;
    const double p = chi_square(counts, std::vector<double>(level.size(), 1.0 / static_cast<double>(level.size()))).p_value;
    return {off <= 0.25 && p > 1e-3,
            "mean attempts " + fmt(total / kCost) + " vs " + fmt(predicted) + " (" + fmt(100 * off) + "% off), chi-square p " + fmt(p)};
}

Verdict rectangle_laws() {
    constexpr Weight n = 1'000'000;
    const double mean_kr = expected_rect_moments(n, 1) / std::sqrt(static_cast<double>(n));
    const double target = 2 * std::sqrt(6.0) / kPi;
    const auto k = marginal_K_law(n, 1.0);
    const Weight part = 1000;
    const auto law = conditional_R_law(n, part, 20);
    const double rho = std::exp(-kPi / std::sqrt(6.0));
    double tv = 0;
    for (Weight r = 1; r <= 20; ++r) tv += std::abs(law[static_cast<std::size_t>(r - 1)] - (1 - rho) * std::pow(rho, static_cast<double>(r - 1)));
    tv /= 2;
    return {rel(mean_kr, target) <= 0.03 && std::abs(k.finite - k.limit) <= 0.01 && tv <= 0.01,
            "E[KR]/sqrt(n) " + fmt(mean_kr) + " vs " + fmt(target) + ", K-law gap at x=1 " + fmt(std::abs(k.finite - k.limit)) +
                ", R-law TV at k=1000 " + fmt(tv)};
}

Verdict limit_shape() {
    const auto& all = million_samples();
    std::vector<double> d(200);
    parallel_for(d.size(), threads(), [&](std::size_t i) { d[i] = shape_distance(all[i], 0.1); });
    const auto within = std::count_if(d.begin(), d.end(), [](double v) { return v <= 0.05; });
    const double fraction = static_cast<double>(within) / static_cast<double>(d.size());

    std::vector<double> breaks{0.0};
    for (double x = 0.01; x < 50; x *= 1.01) breaks.push_back(x);
    const auto start = StepFunction::from_antiderivative(breaks, [](double x) { return -std::exp(-x); });
    const double ar = a_r_iterate(start, 0.01, 2000).sup_distance(limit_shape_y, 0.1, 5.0);
    return {fraction >= 0.95 && ar <= 0.01,
            "fraction within 0.05: " + fmt(fraction) + " (median distance " + fmt(median(d)) + "), A_r sup error on [0.1, 5] " + fmt(ar)};
}

// sup over a rank grid of |C(u, v) − uv| for the empirical copula
double copula_discrepancy(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    auto ranks = [m](const std::vector<double>& v) {
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(m);
        for (std::size_t i = 0; i < m; ++i) r[order[i]] = static_cast<double>(i + 1) / static_cast<double>(m);
        return r;
    };
    const auto u = ranks(xs), v = ranks(ys);
    double worst = 0;
    for (int a = 1; a <= 50; ++a) {
        for (int b = 1; b <= 50; ++b) {
            const double ua = a / 50.0, vb = b / 50.0;
            std::size_t c = 0;
            for (std::size_t i = 0; i < m; ++i) c += u[i] <= ua && v[i] <= vb;
            worst = std::max(worst, std::abs(static_cast<double>(c) / static_cast<double>(m) - ua * vb));
        }
    }
    return worst;
}

Verdict odd_even() {
    const auto& samples = million_samples();
    const auto s = summarize_odd_even(samples);
    std::vector<double> xs, ys;
    for (const auto& p : samples) {
        const auto xy = odd_even_scaled(p);
        xs.push_back(xy.x);
        ys.push_back(xy.y);
    }
    const bool pass = s.ks_odd <= 0.06 && s.ks_even <= 0.06 && std::abs(s.correlation) <= 0.08 && s.ks_odd < s.ks_odd_vs_even_limit &&
                      s.ks_even < s.ks_even_vs_odd_limit && s.ks_length <= 0.06;
    return {pass, "2000 samples shared with criterion 8; KS odd " + fmt(s.ks_odd) + " (vs even limit " + fmt(s.ks_odd_vs_even_limit) + "), KS even " + fmt(s.ks_even) +
                      " (vs odd limit " + fmt(s.ks_even_vs_odd_limit) + "), corr " + fmt(s.correlation) + ", KS length " +
                      fmt(s.ks_length) + "; info: copula discrepancy " + fmt(copula_discrepancy(xs, ys))};
}

Verdict monotonicity() {
    struct Case {
        MonotoneStatistic stat;
        Weight c;
        Weight n;
    };
    std::vector<Case> cases{
        {MonotoneStatistic::constant_zero(), 0, 12},  {MonotoneStatistic::length(), 4, 10},
        {MonotoneStatistic::length(), 6, 18},         {MonotoneStatistic::odd_parts(), 2, 10},
        {MonotoneStatistic::odd_parts(), 5, 17},      {MonotoneStatistic::even_parts(), 1, 9},
        {MonotoneStatistic::even_parts(), 3, 16},     {MonotoneStatistic::weight(), 5, 8},
        {MonotoneStatistic::distinct_parts(), 3, 14}, {MonotoneStatistic::parts_at_least(3), 2, 15},
        {MonotoneStatistic::ones(), 2, 11},           {MonotoneStatistic::ones(), 4, 18},
    };
    int passed = 0;
    bool equality = false;
    for (auto& cs : cases) {
        if (!cs.stat.verify()) continue;
        const auto r = verify_monotonicity_lemma(cs.stat, cs.c, cs.n);
        passed += r.pass;
        if (cs.stat.name() == MonotoneStatistic::constant_zero().name()) {
            equality = std::abs(r.lhs - 1) <= 1e-10 && std::abs(r.mid - 1) <= 1e-10 && std::abs(r.rhs - 1) <= 1e-10;
        }
    }
    return {passed == 12 && equality, std::to_string(passed) + "/12 pairs pass, all-partitions equality " + (equality ? "holds" : "fails")};
}

Verdict strict_counterexample() {
    const auto strict = scan_levels(21, LevelKind::Strict, threads());
    bool stairs = true;
    for (Weight n : {10, 15, 21}) {
        const auto& v = strict[static_cast<std::size_t>(n)];
        stairs = stairs && !v.feasible && v.certified && v.contains_staircase;
    }
    const auto ordinary = scan_levels(25, LevelKind::Ordinary, threads());
    bool verdicts = ordinary.size() == 26;
    for (const auto& v : ordinary) verdicts = verdicts && (v.feasible || v.certified);
    int agree = 0;
    for (Weight n = 0; n <= 8; ++n) {
        const auto g = build_level_bigraph(n, LevelKind::Ordinary);
        const bool lp = oracle::transport_feasible_lp(g.left.size(), g.right.size(), g.edges, static_cast<long>(g.right.size()),
                                                      static_cast<long>(g.left.size()));
        agree += lp == ordinary[static_cast<std::size_t>(n)].feasible;
    }
    const auto infeasible = std::count_if(ordinary.begin(), ordinary.end(), [](const LevelVerdict& v) { return !v.feasible; });
    return {stairs && verdicts && agree == 9, std::string("strict 10, 15, 21 certified with staircase: ") + (stairs ? "yes" : "no") +
                                                   ", ordinary infeasible levels <= 25: " + std::to_string(infeasible) +
                                                   ", LP agreement " + std::to_string(agree) + "/9"};
}

Verdict poisson_representation() {
    constexpr std::size_t R = 100000;
    const double tau = 0.5;
    const double q = std::exp(-tau);
    std::vector<double> jumps(R);
    parallel_for(R, threads(), [&](std::size_t i) {
        RngStream rng(12, i);
        const auto start = sample_gc_partition(q, rng);
        jumps[i] = static_cast<double>(gillespie_forward(start, tau, rng).steps.size());
    });
    const double lambda = F_of_t(tau);
    const double zm = (mean(jumps) - lambda) / std::sqrt(lambda / R);
    const double zv = (variance(jumps) - lambda) / std::sqrt((lambda + 2 * lambda * lambda) / R);

    const double s = 10000;
    const MarkSampler sampler(F_inverse(s));
    RngStream rng(13, 0);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) xs.push_back(static_cast<double>(sampler.sample(rng).mark_k) / s);
    const double ks = ks_statistic(xs, [](double x) { return x > 0 ? limiting_mark_cdf(x) : 0.0; });
    return {std::abs(zm) <= 3 && std::abs(zv) <= 3 && ks <= 0.02,
            "J(0.5) mean z " + fmt(zm) + ", variance z " + fmt(zv) + " (F = " + fmt(lambda) + "), mark KS at s=1e4 " + fmt(ks)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "exact uniformity of visits", 60, exact_uniformity},
        {2, "np(n) divisor recursion", 30, np_recursion},
        {3, "normalization and divisor identities", 120, identities},
        {4, "appendix series", 5, appendix},
        {5, "hit-rate asymptotics", 600, hit_rate},
        {6, "rejection-sampler cost and uniformity", 300, rejection_cost},
        {7, "rectangle-law asymptotics", 60, rectangle_laws},
        {8, "limit shape", 600, limit_shape},
        {9, "odd/even law", 900, odd_even},
        {10, "monotonicity sandwich", 120, monotonicity},
        {11, "strict-partition counterexample", 300, strict_counterexample},
        {12, "Poisson representation", 600, poisson_representation},
    };
    std::printf("threads: %u\n", threads());
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < c.budget_s;
        const bool pass = v.pass && in_budget;
        failures += !pass;
        std::printf("%s criterion %d (%s): %s; %.1f s of %.0f s budget%s\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                    c.budget_s, in_budget ? "" : " (over budget)");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
