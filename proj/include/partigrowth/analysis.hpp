#pragma once

#include <functional>
#include <string>
#include <vector>

#include "partigrowth/measures.hpp"
#include "partigrowth/partition.hpp"

namespace partigrowth {

/// Piecewise-constant function: value values[i] on [breaks[i], breaks[i+1]),
/// zero from breaks.back() on. breaks[0] = 0.
class StepFunction {
public:
    StepFunction(std::vector<double> breaks, std::vector<double> values);

    /// Cell averages of a function with known antiderivative.
    static StepFunction from_antiderivative(std::vector<double> breaks, const std::function<double(double)>& primitive);

    const std::vector<double>& breaks() const noexcept { return breaks_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(double x) const;
    double integral() const;
    /// ∫₀^x of the step function.
    double integral_to(double x) const;
    /// sup over [a, b] of |this − g| for a monotone continuous g, evaluated at
    /// the cell endpoints where the extremes of a monotone g lie.
    double sup_distance(const std::function<double(double)>& g, double a, double b) const;
    StepFunction scaled(double factor) const;

private:
    std::vector<double> breaks_;
    std::vector<double> values_;
};

/// sup_{x > x0} |Y_λ(x√n)/√n − y(x)| with n = N(λ).
double shape_distance(const Partition& lambda, double x0);

/// Grid for the A_r iteration: a first cell [0, x0), then geometric cells
/// with ratio (1 + rη)^{1/(2m)} up to x_max, so the dilation x ↦ cx is an
/// exact shift by m cells.
struct ArGrid {
    double r = 0.0;
    double x0 = 1e-4;
    double x_max = 50.0;
    int cells_per_dilation = 20;
};

/// (y(cx) + r h(cx))/c with c = √(1 + rη), pointwise.
double a_r_apply(const std::function<double(double)>& y, double r, double x);

/// Iterates A_r on cell averages after projecting y onto the grid; each
/// iterate is renormalized to unit area.
StepFunction a_r_iterate(const StepFunction& y, double r, int iterations, ArGrid grid = {});

/// Breakpoints of the A_r grid for the given parameters.
std::vector<double> a_r_breaks(const ArGrid& grid);

/// ℓ_o(λ) and ℓ_e(λ): numbers of odd and of even parts.
Weight odd_part_count(const Partition& lambda);
Weight even_part_count(const Partition& lambda);

/// α(n) = ¼ log n − ½ log(2π/√6).
double odd_even_shift(Weight n);

struct ScaledPair {
    double x = 0.0;
    double y = 0.0;
};
/// (π/√(6n) ℓ_o − α(n), π/√(6n) ℓ_e − α(n)).
ScaledPair odd_even_scaled(const Partition& lambda);

/// π/√(6n) ℓ − ½ log n + log(π/√6).
double scaled_length(const Partition& lambda);

struct LimitingCdfs {
    double odd = 0.0;     ///< Erfc(e^{−x})
    double even = 0.0;    ///< exp(−e^{−2x})
    double gumbel = 0.0;  ///< exp(−e^{−x})
};
LimitingCdfs limiting_cdfs(double x);

struct OddEvenSummary {
    double ks_odd = 0.0;
    double ks_even = 0.0;
    double ks_odd_vs_even_limit = 0.0;
    double ks_even_vs_odd_limit = 0.0;
    double correlation = 0.0;
    double ks_length = 0.0;
};
OddEvenSummary summarize_odd_even(const std::vector<Partition>& samples);

/// X(λ) = Σ_k φ(k, C_k(λ)) with φ(k, 0) = 0 and φ(k, ·) non-decreasing, so
/// X never decreases when parts are added.
class MonotoneStatistic {
public:
    MonotoneStatistic(std::string name, std::function<Weight(Weight k, Weight count)> phi);

    static MonotoneStatistic constant_zero();
    static MonotoneStatistic length();
    static MonotoneStatistic odd_parts();
    static MonotoneStatistic even_parts();
    static MonotoneStatistic weight();
    static MonotoneStatistic distinct_parts();
    /// Number of parts ≥ c; "largest part ≥ c" is the event X ≥ 1.
    static MonotoneStatistic parts_at_least(Weight c);
    static MonotoneStatistic ones();

    const std::string& name() const noexcept { return name_; }
    Weight operator()(const Partition& lambda) const;
    Weight phi(Weight k, Weight count) const { return phi_(k, count); }

    /// Checks X(λ) ≤ X(λ + one part) for every λ with weight below
    /// `max_weight`, which covers every comparable pair up to that weight.
    bool verify(Weight max_weight = 10);
    bool verified() const noexcept { return verified_; }

private:
    std::string name_;
    std::function<Weight(Weight, Weight)> phi_;
    bool verified_ = false;
};

/// #{λ ⊢ m : X(λ) ≥ c} for m = 0..m_max by dynamic programming over part
/// sizes, tracking min(X, c).
std::vector<BigCount> count_at_least(const MonotoneStatistic& stat, Weight c, Weight m_max);

struct MonotonicityCheck {
    double lhs = 0.0;         ///< Σ_{m<n} q_{n,m} M_m(B)
    double mid = 0.0;         ///< M_n(B)
    double rhs = 0.0;         ///< truncated Σ_{m>n} q̂_{n,m} M_m(B)
    double rhs_tail = 0.0;    ///< certified bound on the omitted right tail
    Weight rhs_terms = 0;
    bool pass = false;
};

inline constexpr Weight kMonotonicityCap = 18;

/// Both sides of the sandwich for B = {λ : X(λ) ≥ c}. Requires a verified
/// statistic and n ≤ 18; the right sum is cut once its certified tail is
/// below 1e−12.
MonotonicityCheck verify_monotonicity_lemma(const MonotoneStatistic& stat, Weight c, Weight n);

}  // namespace partigrowth
