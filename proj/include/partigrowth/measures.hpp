#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "partigrowth/combinatorics.hpp"
#include "partigrowth/hyperbolic.hpp"
#include "partigrowth/log_prob.hpp"
#include "partigrowth/partition.hpp"

namespace partigrowth {

/// η = ∫₀^∞ h(x) dx = 2√6/π.
inline constexpr double kEta = 4.898979485566356 / 3.141592653589793;

/// (t, q = e^{−t}, s = F(t)) for the grand canonical measure M_q.
struct GrandCanonicalParams {
    double t = 0.0;
    double q = 0.0;
    double s = 0.0;

    static GrandCanonicalParams from_t(double t);
    /// t_n = π/√(6n).
    static GrandCanonicalParams for_n(Weight n);
    static GrandCanonicalParams from_s(double s);
};

/// f(t) = Σ_k k e^{−kt}/(1 − e^{−kt}) = E N under M_{e^{−t}}.
/// Small t goes through the modular transform of the eta function.
double f_of_t(double t);
/// F(t) = −Σ_k log(1 − e^{−kt}) = log P(e^{−t}).
double F_of_t(double t);

/// Plain truncated sums with a geometric tail bound, for any t > 0.
double f_of_t_direct(double t);
double F_of_t_direct(double t);
/// F via the divisor form Σ_h σ₁(h) e^{−th}/h.
double F_of_t_divisor_series(double t);

/// t with F(t) = s, to relative error 1e−13 in s.
double F_inverse(double s);

/// Var N under M_{e^{−t}}: Σ_k k² e^{−kt}/(1 − e^{−kt})².
double gc_variance(double t);

struct GcMoments {
    double mean = 0.0;
    double variance = 0.0;
};
GcMoments gc_moments(Weight n);

/// log M_q{λ} = N(λ) log q − log P(q).
LogProb gc_log_prob(const Partition& lambda, double q);

/// Closed-form visit probability g(n); g(0) = 1.
LogProb log_g(Weight n);

/// The τ = 0 alternating series Σ_k (−1)^k n/(n + k(3k+1)/2), summed in
/// symmetric pairs ±k up to `pairs`, with repeated averaging of the last
/// partial sums to cancel the alternating tail. The terms cancel down to
/// g(n), so the sum runs in MPFR with digits scaled to log(1/g(n)).
double g_series(Weight n, Weight pairs = 20000);

/// g^τ(n) = Σ_k (−1)^k n e^{−(n+k(3k+1)/2)τ}/(n + k(3k+1)/2), summed in MPFR
/// for the same cancellation reason as g_series.
LogProb g_tau(Weight n, double tau);

/// γ(n) = g(n) p(n), the probability that level n is visited.
LogProb gamma_visit(Weight n);

/// q_{n,m} = p(m) σ₁(n−m)/(n p(n)) for 0 ≤ m < n.
LogProb q_forward(Weight n, Weight m);
mpq_class q_forward_exact(Weight n, Weight m);

/// q̂_{n,n+h} = g(n+h) σ₁(h)/((n+h) g(n)).
LogProb q_backward(Weight n, Weight h);

/// Working precision for the identity verifiers.
struct Precision {
    unsigned digits = 0;  ///< 0 selects hardware doubles

    bool multiprecision() const noexcept { return digits > 0; }
    std::string to_string() const;
    /// "double" or "mp:<digits>" with digits ≥ 50.
    static Precision parse(const std::string& text);
};

using hyperbolic::IdentityCheck;

/// Certified-truncation residual of Σ_{m>n} g(m)σ₁(m−n)/m = g(n).
IdentityCheck backward_normalization_residual(Weight n, Precision precision = {});
/// Certified-truncation residual of the hyperbolic divisor identity.
IdentityCheck divisor_identity_residual(Weight n, Precision precision = {});

/// π sinh(πx/6) / (√3 (2cosh(πx/3) − 1)).
double appendix_g(double x);
/// Σ_{|k|≤K} (−1)^{k+1} x/((6k+1)² + x²), added in pairs ±k.
double appendix_partial_sum(double x, Weight K);
/// |appendix_g(x) + appendix_partial_sum(x, K)|.
double appendix_series_residual(double x, Weight K);
/// g(n) recovered from the residue series at x = √(24n − 1). The partial
/// sums K..K+8 are repeatedly averaged to cancel the alternating tail.
double appendix_g_of_n(Weight n, Weight K);

/// ∏_{j≤J}(1 − q^j) and Σ_{|k|≤K} (−1)^k q^{k(3k+1)/2}.
double euler_product(double q, Weight J);
double pentagonal_series(double q, Weight K);

/// Limit shape y(x) = −(√6/π) log(1 − e^{−πx/√6}) and its derivative.
double limit_shape_y(double x);
double limit_shape_dy(double x);
/// h(x) = √6 x e^{−cx}/(π(1 − e^{−cx})) − 6 log(1 − e^{−cx})/π², c = π/√6.
double h_func(double x);
/// ∫₀^x h; the log singularity at 0 is integrable.
double h_integral(double x);

/// ∫₀^x y e^{−cy}/(1 − e^{−cy}) dy with c = π/√6: the limiting CDF of K/√n.
/// Zero at x = 0.
double k_limit_cdf(double x);

/// Precomputed log g(m) and log(g(m)/m) for m ≤ cap; values beyond the cap
/// are computed on the fly. Read-only after construction.
class VisitTable {
public:
    explicit VisitTable(Weight cap);

    Weight cap() const noexcept { return cap_; }
    double log_g(Weight m) const;
    /// log(g(m)/m) for m ≥ 1.
    double log_g_over_m(Weight m) const;

private:
    Weight cap_;
    std::vector<double> log_g_;
};

}  // namespace partigrowth
