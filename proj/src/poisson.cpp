#include "partigrowth/poisson.hpp"


#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "partigrowth/combinatorics.hpp"

namespace partigrowth {

namespace {

constexpr double kB = std::numbers::pi * std::numbers::pi / 6.0;

// Li₂(w) for 0 ≤ w ≤ 1; the power series is used up to w = ½ and the
// reflection Li₂(w) = π²/6 − log w log(1 − w) − Li₂(1 − w) above it.
double dilog(double w) {
    if (w > 0.5) return kB - std::log(w) * std::log1p(-w) - dilog(1.0 - w);
    double sum = 0.0;
    double power = w;
    for (int k = 1; power > 1e-18 * sum || k == 1; ++k) {
        sum += power / (static_cast<double>(k) * k);
        power *= w;
        if (power == 0.0) break;
    }
    return sum;
}

// ∫₀^z u/(e^u − 1) du = π²/6 − Li₂(e^{−z}) + z log(1 − e^{−z})
double bose_integral(double z) {
    const double w = std::exp(-z);
    return kB - dilog(w) + z * std::log1p(-w);
}

}  // namespace

double mark_law(double s, Weight k, Weight r) {
    if (k < 1 || r < 1) throw std::invalid_argument("mark_law requires k, r >= 1");
    const double t = F_inverse(s);
    return static_cast<double>(k) * std::exp(-t * static_cast<double>(k * r)) / f_of_t(t);
}

double mark_weight_law(double t, Weight h) {
    if (h < 1) throw std::invalid_argument("mark_weight_law requires h >= 1");
    return static_cast<double>(sigma1_int(h)) * std::exp(-t * static_cast<double>(h)) / f_of_t(t);
}

MarkSampler::MarkSampler(double t) : t_(t), f_(f_of_t(t)) {
    // σ₁(h) e^{−th} is below 1e−20 of the total long before h = (60 + log f)/t
    const auto hmax = static_cast<Weight>((60.0 + std::log(f_)) / t) + 64;
    sigma_ = sigma1_table(hmax);
}

MarkedPoint MarkSampler::sample(RngStream& rng) const {
    const auto& sigma = *sigma_;
    const double target = rng.uniform() * f_;
    const double x = std::exp(-t_);
    double xh = 1.0;
    double cumulative = 0.0;
    Weight h = 0;
    for (;;) {
        ++h;
        if (static_cast<std::size_t>(h) >= sigma.size()) {
            throw std::runtime_error("mark weight inversion ran past its table (numerical fault)");
        }
        // refresh the running power now and then to keep rounding from drifting
        xh = (h % 256 == 0) ? std::exp(-t_ * static_cast<double>(h)) : xh * x;
        cumulative += static_cast<double>(sigma[static_cast<std::size_t>(h)]) * xh;
        if (target <= cumulative) break;
    }
    const auto pick = static_cast<Weight>(rng.below(static_cast<std::uint64_t>(sigma[static_cast<std::size_t>(h)])));
    Weight running = 0;
    for (Weight k : divisors(h)) {
        running += k;
        if (pick < running) return {0.0, t_, k, h / k};
    }
    throw std::logic_error("MarkSampler: divisor sum mismatch");
}

std::vector<PartRun> PoissonTrajectory::counts_at(double s) const {
    std::map<Weight, Weight> counts;
    for (const auto& p : points_) {
        if (p.s > s) break;
        counts[p.mark_k] += p.mark_r;
    }
    std::vector<PartRun> out;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) out.push_back({it->first, it->second});
    return out;
}

Partition PoissonTrajectory::partition_at(double s) const { return Partition::from_counts(counts_at(s)); }

Weight PoissonTrajectory::weight_at(double s) const {
    Weight n = 0;
    for (const auto& p : points_) {
        if (p.s > s) break;
        n += p.mark_k * p.mark_r;
    }
    return n;
}

PoissonTrajectory sample_trajectory(double s_max, RngStream& rng) {
    if (!(s_max > 0.0)) throw std::domain_error("sample_trajectory requires s_max > 0");
    std::vector<MarkedPoint> points;
    double s = 0.0;
    for (;;) {
        s += rng.exponential(1.0);
        if (s > s_max) break;
        MarkedPoint point = MarkSampler(F_inverse(s)).sample(rng);
        point.s = s;
        points.push_back(point);
    }
    return PoissonTrajectory(std::move(points));
}

double limiting_mark_cdf(double x) {
    if (!(x >= 0.0)) throw std::domain_error("limiting_mark_cdf requires x >= 0");
    if (x == 0.0) return 0.0;
    // b ∫₀^x y/(e^{by} − 1) dy = (1/b) ∫₀^{bx} u/(e^u − 1) du
    return std::min(1.0, bose_integral(kB * x) / kB);
}

double limiting_r_given_k(double x, Weight r) {
    if (!(x > 0.0) || r < 1) throw std::invalid_argument("limiting_r_given_k requires x > 0 and r >= 1");
    const double rho = std::exp(-kB * x);
    return (1.0 - rho) * std::pow(rho, static_cast<double>(r - 1));
}

}  // namespace partigrowth
