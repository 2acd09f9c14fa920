#pragma once

#include <memory>
#include <vector>

#include "partigrowth/measures.hpp"
#include "partigrowth/partition.hpp"
#include "partigrowth/rng.hpp"

namespace partigrowth {

/// An arrival of the unit-rate process in the s clock, its original time
/// t = F⁻¹(s), and the k × r rectangle it inserts.
struct MarkedPoint {
    double s = 0.0;
    double t = 0.0;
    Weight mark_k = 0;
    Weight mark_r = 0;
};

/// P[K̃ = k, R̃ = r] = k e^{−tkr}/f(t) with t = F⁻¹(s).
double mark_law(double s, Weight k, Weight r);

/// P[K̃R̃ = h] = σ₁(h) e^{−th}/f(t) at original time t.
double mark_weight_law(double t, Weight h);

/// Draws marks at a fixed original time t: weight h ∝ σ₁(h) e^{−th} by
/// cumulative inversion, then k | h with probability k/σ₁(h).
class MarkSampler {
public:
    explicit MarkSampler(double t);

    double t() const noexcept { return t_; }
    MarkedPoint sample(RngStream& rng) const;

private:
    double t_;
    double f_;
    std::shared_ptr<const std::vector<std::int64_t>> sigma_;
};

/// Marked arrivals on (0, s_max] in increasing s, with λ̃(s) reconstruction.
class PoissonTrajectory {
public:
    PoissonTrajectory() = default;
    explicit PoissonTrajectory(std::vector<MarkedPoint> points) : points_(std::move(points)) {}

    const std::vector<MarkedPoint>& points() const noexcept { return points_; }

    /// ρ̃_k(s) = Σ_{S_j ≤ s} R̃_j 1{K̃_j = k}, as (k, C_k) runs.
    std::vector<PartRun> counts_at(double s) const;
    Partition partition_at(double s) const;
    Weight weight_at(double s) const;

private:
    std::vector<MarkedPoint> points_;
};

PoissonTrajectory sample_trajectory(double s_max, RngStream& rng);

/// lim P[K̃/s < x] = (π²/6) ∫₀^x y e^{−π²y/6}/(1 − e^{−π²y/6}) dy, in closed
/// form through the dilogarithm.
double limiting_mark_cdf(double x);

/// Limiting P[R̃ = r | K̃/s = x]: geometric with ratio e^{−π²x/6}.
double limiting_r_given_k(double x, Weight r);

}  // namespace partigrowth
