#include "partigrowth/chains.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace partigrowth {

Weight gc_kmax(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("gc_kmax requires 0 < q < 1");
    // Σ_{k>K} q^k = q^{K+1}/(1 − q) < 1e−12
    const double bound = (std::log(1e-12) + std::log1p(-q)) / std::log(q);
    return std::max<Weight>(1, static_cast<Weight>(std::ceil(bound)));
}

Partition sample_gc_partition(double q, RngStream& rng) {
    const Weight kmax = gc_kmax(q);
    const double log_q = std::log(q);
    std::vector<PartRun> runs;
    for (Weight k = 1; k <= kmax; ++k) {
        const auto c = rng.geometric_failures(static_cast<double>(k) * log_q);
        if (c > 0) runs.push_back({k, c});
    }
    return Partition::from_counts(runs);
}

ChainStep forward_jump(const Partition& lambda, RngStream& rng) {
    if (lambda.empty()) throw std::invalid_argument("forward_jump: the empty partition is absorbing");
    auto box = static_cast<Weight>(rng.below(static_cast<std::uint64_t>(lambda.weight())));
    for (const auto& run : lambda.runs()) {
        const Weight block = run.part * run.count;
        if (box < block) {
            // rows of this run are numbered top to bottom; the chosen row and
            // every equal row below it go
            const Weight row = box / run.part;
            const Weight r = run.count - row;
            return {lambda, remove_run(lambda, run.part, r), run.part, r, Direction::ForwardRemoval};
        }
        box -= block;
    }
    throw std::logic_error("forward_jump: box index out of range");
}

Trajectory gillespie_forward(const Partition& lambda0, double tau, RngStream& rng) {
    Trajectory out;
    out.seed = rng.seed();
    out.stream = rng.stream();
    Partition current = lambda0;
    double t = tau;
    while (!current.empty()) {
        t += rng.exponential(static_cast<double>(current.weight()));
        ChainStep step = forward_jump(current, rng);
        current = step.after;
        out.steps.push_back(std::move(step));
        out.times.push_back(t);
    }
    return out;
}

// ------------------------------------------------------------- backward

BackwardKernel::BackwardKernel(Weight cap) : cap_(cap), visits_(cap), sigma_(sigma1_table(cap)) {}

double BackwardKernel::sigma(Weight h) const {
    if (h <= cap_) return static_cast<double>((*sigma_)[static_cast<std::size_t>(h)]);
    return static_cast<double>(sigma1_int(h));
}

Weight BackwardKernel::sample_jump_weight(Weight n, RngStream& rng) const {
    constexpr Weight kHardCap = 1'000'000;
    const double base = visits_.log_g(n);
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (Weight h = 1; h <= kHardCap; ++h) {
        cumulative += std::exp(visits_.log_g_over_m(n + h) - base) * sigma(h);
        if (u <= cumulative) return h;
    }
    throw std::runtime_error("backward jump weight: cumulative mass never reached the draw (numerical fault)");
}

Weight BackwardKernel::sample_part_size(Weight h, RngStream& rng) const {
    const auto target = static_cast<Weight>(rng.below(static_cast<std::uint64_t>(sigma(h))));
    Weight cumulative = 0;
    for (Weight k : divisors(h)) {
        cumulative += k;
        if (target < cumulative) return k;
    }
    throw std::logic_error("sample_part_size: divisor sum mismatch");
}

ChainStep backward_jump(const Partition& mu, const BackwardKernel& kernel, RngStream& rng) {
    const Weight h = kernel.sample_jump_weight(mu.weight(), rng);
    const Weight k = kernel.sample_part_size(h, rng);
    return {mu, add_run(mu, k, h / k), k, h / k, Direction::BackwardInsertion};
}

BackwardRun run_backward_until(Weight n_target, const BackwardKernel& kernel, RngStream& rng,
                               BackwardOptions options) {
    if (n_target < 1) throw std::invalid_argument("run_backward_until requires n_target >= 1");
    BackwardRun out;
    out.trajectory.seed = rng.seed();
    out.trajectory.stream = rng.stream();
    Partition current;
    std::map<Weight, Weight> counts;
    Weight n = 0;
    while (n < n_target) {
        if (options.record_steps) {
            ChainStep step = backward_jump(current, kernel, rng);
            current = step.after;
            out.trajectory.steps.push_back(std::move(step));
            n = current.weight();
        } else {
            const Weight h = kernel.sample_jump_weight(n, rng);
            const Weight k = kernel.sample_part_size(h, rng);
            if (options.keep_hit_partition) counts[k] += h / k;
            n += h;
        }
        ++out.steps;
    }
    out.n_final = n;
    out.hit = n == n_target;
    if (out.hit && options.keep_hit_partition) {
        if (options.record_steps) {
            out.at_hit = current;
        } else {
            std::vector<PartRun> runs;
            for (const auto& [k, c] : counts) runs.push_back({k, c});
            out.at_hit = Partition::from_counts(runs);
        }
    }
    return out;
}

// ------------------------------------------------------ exact visit DP

namespace {

template <class Real>
VisitMap visit_table_impl(Weight n_max) {
    using std::exp;
    std::vector<Real> lg;
    for (Weight m = 0; m <= n_max; ++m) lg.push_back(hyperbolic::log_g<Real>(m));
    std::unordered_map<Partition, Real, PartitionHash> v;
    v.emplace(Partition{}, Real(1));
    for (Weight m = 1; m <= n_max; ++m) {
        // p̂_{μ,λ} = κ g(m)/(m g(m − κr)) depends only on (m, κr, κ)
        std::vector<Real> ratio(static_cast<std::size_t>(m + 1));
        for (Weight j = 0; j < m; ++j) {
            ratio[static_cast<std::size_t>(j)] = exp(lg[static_cast<std::size_t>(m)] - lg[static_cast<std::size_t>(j)]) /
                                                 Real(static_cast<double>(m));
        }
        for (const auto& lambda : enumerate_partitions(m, kVisitTableCap)) {
            Real acc = 0;
            for (const auto& run : lambda.runs()) {
                for (Weight r = 1; r <= run.count; ++r) {
                    const auto& mu_value = v.at(remove_run(lambda, run.part, r));
                    acc += mu_value * Real(static_cast<double>(run.part)) *
                           ratio[static_cast<std::size_t>(m - run.part * r)];
                }
            }
            v.emplace(lambda, std::move(acc));
        }
    }
    VisitMap out;
    out.reserve(v.size());
    for (auto& [lambda, value] : v) out.emplace(lambda, static_cast<double>(value));
    return out;
}

}  // namespace

VisitMap visit_probability_table(Weight n_max, Precision precision) {
    if (n_max < 0) throw std::invalid_argument("visit_probability_table requires n_max >= 0");
    if (n_max > kVisitTableCap) throw std::out_of_range("visit_probability_table: n_max exceeds cap 30");
    if (!precision.multiprecision()) return visit_table_impl<double>(n_max);
    using MpReal = boost::multiprecision::mpfr_float;
    const unsigned saved = MpReal::default_precision();
    MpReal::default_precision(precision.digits);
    try {
        auto out = visit_table_impl<MpReal>(n_max);
        MpReal::default_precision(saved);
        return out;
    } catch (...) {
        MpReal::default_precision(saved);
        throw;
    }
}

// ------------------------------------------------------ uniform samplers

RejectionDraw sample_uniform_rejection(Weight n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform_rejection requires n >= 1");
    const auto params = GrandCanonicalParams::for_n(n);
    const Weight kmax = gc_kmax(params.q);
    const double log_q = -params.t;
    RejectionDraw out;
    std::vector<PartRun> runs;
    for (;;) {
        ++out.attempts;
        runs.clear();
        Weight s = 0;
        for (Weight k = 1; k <= kmax; ++k) {
            const auto c = rng.geometric_failures(static_cast<double>(k) * log_q);
            if (c > 0) {
                runs.push_back({k, c});
                s += k * c;
            }
        }
        if (s == n) {
            out.partition = Partition::from_counts(runs);
            return out;
        }
    }
}

RejectionDraw sample_uniform_pdc(Weight n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform_pdc requires n >= 1");
    const auto params = GrandCanonicalParams::for_n(n);
    const Weight kmax = std::max<Weight>(2, gc_kmax(params.q));
    const double log_q = -params.t;
    RejectionDraw out;
    std::vector<PartRun> runs;
    for (;;) {
        ++out.attempts;
        runs.clear();
        Weight s = 0;
        bool over = false;
        for (Weight k = 2; k <= kmax; ++k) {
            const auto c = rng.geometric_failures(static_cast<double>(k) * log_q);
            if (c > 0) {
                runs.push_back({k, c});
                s += k * c;
                if (s > n) {
                    over = true;
                    break;
                }
            }
        }
        if (over) continue;
        // C_1 ~ Geom(1 − q) takes the value n − s with probability ∝ q^{n−s}
        if (std::log(rng.uniform()) <= log_q * static_cast<double>(n - s)) {
            if (n > s) runs.push_back({1, n - s});
            out.partition = Partition::from_counts(runs);
            return out;
        }
    }
}

// ----------------------------------------------------- rectangle laws

double expected_rect_moments(Weight n, int nu) {
    if (n < 0) throw std::invalid_argument("expected_rect_moments requires n >= 0");
    if (nu < 0 || nu > 8) throw std::invalid_argument("expected_rect_moments requires 0 <= nu <= 8");
    const double base = hyperbolic::log_g<double>(n);
    const Weight floor_m = (nu + 2) * (nu + 2) + 2;
    double sum = 0.0;
    for (Weight h = 1;; ++h) {
        const Weight m = n + h;
        const double log_term = hyperbolic::log_g<double>(m) - std::log(static_cast<double>(m)) - base +
                                std::log(static_cast<double>(sigma1_int(h))) + nu * std::log(static_cast<double>(h));
        sum += std::exp(log_term);
        if (h % 64 == 0 && m >= floor_m &&
            hyperbolic::backward_tail_bound(n, m, base, nu) <= 1e-15 * sum) {
            return sum;
        }
    }
}

namespace {

// Σ_{r≥1} k g(n+kr)/((n+kr)g(n)) for one k; the terms decrease in r.
template <class Visit>
double k_row_sum(const Visit& log_g_over_m, Weight n, Weight k, double base, std::vector<double>* terms) {
    double sum = 0.0;
    for (Weight r = 1;; ++r) {
        const double term = static_cast<double>(k) * std::exp(log_g_over_m(n + k * r) - base);
        if (terms) terms->push_back(term);
        sum += term;
        if (term <= 1e-18 * sum) return sum;
    }
}

}  // namespace

KLaw marginal_K_law(Weight n, double x) {
    if (n < 1) throw std::invalid_argument("marginal_K_law requires n >= 1");
    if (!(x > 0.0)) throw std::domain_error("marginal_K_law requires x > 0");
    const auto kmax = static_cast<Weight>(std::floor(x * std::sqrt(static_cast<double>(n))));
    const VisitTable visits(n + 64 * static_cast<Weight>(std::sqrt(static_cast<double>(n))) + 64);
    const double base = visits.log_g(n);
    auto lgm = [&](Weight m) { return visits.log_g_over_m(m); };
    KLaw out;
    for (Weight k = 1; k <= kmax; ++k) out.finite += k_row_sum(lgm, n, k, base, nullptr);
    out.limit = k_limit_cdf(x);
    return out;
}

std::vector<double> conditional_R_law(Weight n, Weight k, Weight r_max) {
    if (n < 0 || k < 1 || r_max < 1) throw std::invalid_argument("conditional_R_law: bad arguments");
    const double base = hyperbolic::log_g<double>(n);
    auto lgm = [](Weight m) { return hyperbolic::log_g<double>(m) - std::log(static_cast<double>(m)); };
    std::vector<double> terms;
    const double total = k_row_sum(lgm, n, k, base, &terms);
    terms.resize(static_cast<std::size_t>(r_max), 0.0);
    for (auto& term : terms) term /= total;
    return terms;
}

}  // namespace partigrowth
