#pragma once

// Closed forms for the visit probability g(n) and the two infinite-sum
// identities it satisfies, templated on the real type so the same code runs
// in hardware doubles and in MPFR-backed multiprecision.

#include <cmath>
#include <cstdint>
#include <type_traits>

#include "partigrowth/combinatorics.hpp"

namespace partigrowth::hyperbolic {

inline double m_cast(Weight n) { return static_cast<double>(n); }

template <class Real>
Real pi() {
    using std::acos;
    return acos(Real(-1));
}

template <class Real>
Real log1p_generic(const Real& x) {
    if constexpr (std::is_floating_point_v<Real>) {
        return std::log1p(x);
    } else {
        using std::log;
        return log(Real(1) + x);
    }
}

/// A_n(h) = (π/6)·√(24(n+h) − 1) for n + h ≥ 1.
template <class Real>
Real a_of(Weight m) {
    using std::sqrt;
    return pi<Real>() / Real(6) * sqrt(Real(24) * Real(m) - Real(1));
}

/// log[ sinh(A) / (A·(2 cosh 2A − 1)) ], evaluated without overflow.
template <class Real>
Real log_hyperbolic_kernel(const Real& a) {
    using std::exp;
    using std::log;
    const Real e2 = exp(Real(-2) * a);
    const Real log_sinh = a - log(Real(2)) + log1p_generic<Real>(-e2);
    const Real log_denominator = Real(2) * a + log1p_generic<Real>(e2 * e2 - e2);
    return log_sinh - log(a) - log_denominator;
}

/// log g(n) from the closed hyperbolic form; g(0) = 1.
template <class Real>
Real log_g(Weight n) {
    using std::log;
    if (n == 0) return Real(0);
    // g(m) = (4√3 π² m / 3) · sinh(A)/(A(2cosh 2A − 1)) with A = A_0(m)
    const Real p = pi<Real>();
    const Real prefactor = log(Real(4) * p * p * Real(m_cast(n)) / Real(3)) + log(Real(3)) / Real(2);
    return prefactor + log_hyperbolic_kernel<Real>(a_of<Real>(n));
}

/// Outcome of a certified-truncation identity check.
struct IdentityCheck {
    double residual = 0.0;    ///< |LHS − RHS| / RHS
    double tail_bound = 0.0;  ///< certified bound on the omitted tail, relative to RHS
    Weight terms = 0;         ///< number of summed terms
};

/// Upper bound on Σ_{m>M} (m−n)^power g(m) σ₁(m − n) / (m g(n)), valid for
/// M ≥ max(n, (power+2)² + 2).
///
/// Uses g(m)/m ≤ 4√3π e^{−A}/(√(24m−1)(1 − e^{−2A_1})) and σ₁(h) ≤ h(1 + ln h);
/// the resulting majorant ψ(m) is decreasing past that M, and the sum over
/// m > M is bounded by doubling blocks Σ_j 2^j M' ψ(2^j M').
double backward_tail_bound(Weight n, Weight M, double log_g_n, int power = 0);

/// Σ_{m>n} g(m) σ₁(m−n)/m = g(n), summed until the certified tail bound
/// drops below `tail_target` (relative to g(n)).
template <class Real>
IdentityCheck backward_normalization(Weight n, double tail_target = 1e-17) {
    using std::abs;
    using std::exp;
    using std::log;
    const Real lg_n = log_g<Real>(n);
    const double lg_n_d = static_cast<double>(lg_n);
    Real sum = 0;
    IdentityCheck out;
    Weight m = n;
    for (;;) {
        ++m;
        const Weight h = m - n;
        const Real term = exp(log_g<Real>(m) - lg_n - log(Real(m_cast(m)))) * Real(m_cast(sigma1_int(h)));
        sum += term;
        ++out.terms;
        if (h % 16 == 0 && m >= 6) {
            const double bound = backward_tail_bound(n, m, lg_n_d);
            if (bound <= tail_target) {
                out.tail_bound = bound;
                break;
            }
        }
    }
    out.residual = static_cast<double>(abs(sum - Real(1)));
    return out;
}

/// Σ_{h≥1} sinh(A_n(h)) σ₁(h) / (A_n(h)(2cosh 2A_n(h) − 1))
///     = n sinh(A_n(0)) / (A_n(0)(2cosh 2A_n(0) − 1)),
/// with right-hand side √3/(4π²) at n = 0.
template <class Real>
IdentityCheck divisor_identity(Weight n, double tail_target = 1e-17) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;
    const Real p = pi<Real>();
    const Real log_rhs = n == 0 ? log(sqrt(Real(3)) / (Real(4) * p * p))
                                : log(Real(m_cast(n))) + log_hyperbolic_kernel<Real>(a_of<Real>(n));
    const double lg_n_d = static_cast<double>(log_g<Real>(n));
    Real sum = 0;
    IdentityCheck out;
    for (Weight h = 1;; ++h) {
        const Real term = exp(log_hyperbolic_kernel<Real>(a_of<Real>(n + h)) - log_rhs) * Real(m_cast(sigma1_int(h)));
        sum += term;
        ++out.terms;
        if (h % 16 == 0 && n + h >= 6) {
            // the kernel equals 3g(m)/(4√3π² m), so the relative tail matches
            // the backward normalization tail
            const double bound = backward_tail_bound(n, n + h, lg_n_d);
            if (bound <= tail_target) {
                out.tail_bound = bound;
                break;
            }
        }
    }
    out.residual = static_cast<double>(abs(sum - Real(1)));
    return out;
}

}  // namespace partigrowth::hyperbolic
