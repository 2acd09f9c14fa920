#include "partigrowth/measures.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <vector>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace partigrowth {

namespace {

constexpr double kPi = std::numbers::pi;
const double kC = kPi / std::sqrt(6.0);  // π/√6
// below this t the modular transform is used for f, F and the variance
constexpr double kModularThreshold = 1.0;

using MpReal = boost::multiprecision::mpfr_float;

class ScopedMpPrecision {
public:
    explicit ScopedMpPrecision(unsigned digits) : saved_(MpReal::default_precision()) {
        MpReal::default_precision(digits);
    }
    ~ScopedMpPrecision() { MpReal::default_precision(saved_); }
    ScopedMpPrecision(const ScopedMpPrecision&) = delete;
    ScopedMpPrecision& operator=(const ScopedMpPrecision&) = delete;

private:
    unsigned saved_;
};

// the alternating g-series cancel down to g(n) ≈ e^{−π√(2n/3)}, so they need
// about that many extra digits on top of the target accuracy
unsigned cancellation_digits(Weight n) {
    return 30u + static_cast<unsigned>(kPi * std::sqrt(2.0 * static_cast<double>(n) / 3.0) / std::numbers::ln10);
}

// repeated averaging of consecutive partial sums; cancels the smooth
// alternating tail to high order
template <class Real>
Real euler_average(std::vector<Real> partial) {
    for (std::size_t level = partial.size() - 1; level > 0; --level) {
        for (std::size_t i = 0; i < level; ++i) partial[i] = (partial[i] + partial[i + 1]) / 2;
    }
    return partial.front();
}

void require_positive_t(double t, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(who) + " requires t > 0");
}

}  // namespace

// ---------------------------------------------------------------- f and F

double f_of_t_direct(double t) {
    require_positive_t(t, "f_of_t");
    const double x = std::exp(-t);
    double sum = 0.0;
    double xk = 1.0;
    Weight k = 0;
    for (;;) {
        ++k;
        xk *= x;
        const double term = static_cast<double>(k) * xk / -std::expm1(-static_cast<double>(k) * t);
        sum += term;
        if (xk < 1e-18 && term <= 1e-18 * sum) break;
    }
    // Σ_{j>k} j x^j/(1 − x^j) ≤ x^{k+1}((k+1) − kx)/((1 − x)²(1 − x^{k+1}))
    const double kd = static_cast<double>(k);
    const double tail = xk * x * ((kd + 1.0) - kd * x) / (std::expm1(-t) * std::expm1(-t) * (1.0 - xk * x));
    return sum + tail;
}

double F_of_t_direct(double t) {
    require_positive_t(t, "F_of_t");
    const double x = std::exp(-t);
    double sum = 0.0;
    double xk = 1.0;
    for (Weight k = 1;; ++k) {
        xk *= x;
        const double term = -std::log1p(-xk);
        sum += term;
        if (xk < 1e-18 && term <= 1e-18 * sum) break;
    }
    // −log(1 − y) ≤ y/(1 − y), so the rest is at most x^{k+1}/((1 − x)(1 − x^{k+1}))
    return sum + xk * x / ((1.0 - x) * (1.0 - xk * x));
}

double f_of_t(double t) {
    require_positive_t(t, "f_of_t");
    if (t >= kModularThreshold) return f_of_t_direct(t);
    // from log P(e^{−t}) = π²/(6t) + ½log(t/2π) − t/24 + log P(e^{−4π²/t})
    const double u = 4.0 * kPi * kPi / t;
    return kPi * kPi / (6.0 * t * t) - 0.5 / t + 1.0 / 24.0 - u / t * f_of_t_direct(u);
}

double F_of_t(double t) {
    require_positive_t(t, "F_of_t");
    if (t >= kModularThreshold) return F_of_t_direct(t);
    const double u = 4.0 * kPi * kPi / t;
    return kPi * kPi / (6.0 * t) + 0.5 * std::log(t / (2.0 * kPi)) - t / 24.0 + F_of_t_direct(u);
}

double F_of_t_divisor_series(double t) {
    require_positive_t(t, "F_of_t_divisor_series");
    double sum = 0.0;
    // σ₁(h)/h ≤ 1 + ln h keeps the terms summable once e^{−th} is tiny
    for (Weight h = 1;; ++h) {
        const double hd = static_cast<double>(h);
        const double term = static_cast<double>(sigma1_int(h)) / hd * std::exp(-t * hd);
        sum += term;
        if (t * hd > 45.0 + std::log1p(std::log(hd) + 1.0) && term < 1e-18 * sum) break;
    }
    return sum;
}

namespace {

double variance_direct(double t) {
    const double x = std::exp(-t);
    double sum = 0.0;
    double xk = 1.0;
    for (Weight k = 1;; ++k) {
        xk *= x;
        const double kd = static_cast<double>(k);
        const double d = -std::expm1(-kd * t);
        const double term = kd * kd * xk / (d * d);
        sum += term;
        if (xk < 1e-18 && term <= 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

double gc_variance(double t) {
    require_positive_t(t, "gc_variance");
    if (t >= kModularThreshold) return variance_direct(t);
    // second derivative of the modular form of F
    const double u = 4.0 * kPi * kPi / t;
    const double t2 = t * t;
    return kPi * kPi / (3.0 * t2 * t) - 0.5 / t2 - 2.0 * u / t2 * f_of_t_direct(u) + u * u / t2 * variance_direct(u);
}

double F_inverse(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("F_inverse requires s > 0");
    const double log_s = std::log(s);
    // φ(u) = log F(e^u) − log s is strictly decreasing in u
    auto phi = [&](double u) { return std::log(F_of_t(std::exp(u))) - log_s; };
    double u = s > 1.0 ? std::log(kPi * kPi / (6.0 * s)) : std::log(std::max(-std::log(s), 0.5));
    double lo = u;
    double hi = u;
    while (phi(lo) < 0.0) lo -= 1.0;
    while (phi(hi) > 0.0) hi += 1.0;
    u = std::clamp(u, lo, hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double t = std::exp(u);
        const double F = F_of_t(t);
        const double value = std::log(F) - log_s;
        if (std::abs(value) < 1e-15) break;
        if (value > 0.0) lo = u; else hi = u;
        const double slope = -t * f_of_t(t) / F;
        double next = u - value / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) < 1e-16 * std::max(1.0, std::abs(u))) {
            u = next;
            break;
        }
        u = next;
    }
    return std::exp(u);
}

GrandCanonicalParams GrandCanonicalParams::from_t(double t) {
    require_positive_t(t, "GrandCanonicalParams");
    return {t, std::exp(-t), F_of_t(t)};
}

GrandCanonicalParams GrandCanonicalParams::for_n(Weight n) {
    if (n < 1) throw std::invalid_argument("GrandCanonicalParams::for_n requires n >= 1");
    return from_t(kPi / std::sqrt(6.0 * static_cast<double>(n)));
}

GrandCanonicalParams GrandCanonicalParams::from_s(double s) {
    const double t = F_inverse(s);
    return {t, std::exp(-t), s};
}

GcMoments gc_moments(Weight n) {
    const auto params = GrandCanonicalParams::for_n(n);
    return {f_of_t(params.t), gc_variance(params.t)};
}

LogProb gc_log_prob(const Partition& lambda, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("gc_log_prob requires 0 < q < 1");
    const double log_q = std::log(q);
    return LogProb::from_log(static_cast<double>(lambda.weight()) * log_q - F_of_t(-log_q));
}

// ------------------------------------------------------------ visit laws

LogProb log_g(Weight n) {
    if (n < 0) throw std::invalid_argument("log_g requires n >= 0");
    return LogProb::from_log(hyperbolic::log_g<double>(n));
}

double g_series(Weight n, Weight pairs) {
    if (n < 1) throw std::invalid_argument("g_series requires n >= 1");
    if (pairs < 16) throw std::invalid_argument("g_series requires at least 16 pairs");
    constexpr Weight kLevels = 10;
    ScopedMpPrecision scope(cancellation_digits(n));
    const MpReal nr = static_cast<double>(n);
    std::vector<MpReal> last;
    MpReal sum = 1;
    for (Weight k = 1; k <= pairs; ++k) {
        const MpReal kd = static_cast<double>(k);
        MpReal pair = nr / (nr + kd * (3 * kd + 1) / 2) + nr / (nr + kd * (3 * kd - 1) / 2);
        if (k % 2 == 0) sum += pair; else sum -= pair;
        if (k >= pairs - kLevels) last.push_back(sum);
    }
    return static_cast<double>(euler_average(std::move(last)));
}

LogProb g_tau(Weight n, double tau) {
    if (n < 1) throw std::invalid_argument("g_tau requires n >= 1");
    if (!(tau > 0.0)) throw std::domain_error("g_tau requires tau > 0");
    ScopedMpPrecision scope(cancellation_digits(n));
    const MpReal nr = static_cast<double>(n);
    const MpReal tr = tau;
    // factor e^{−nτ} out so large τ does not underflow
    MpReal sum = 1;
    for (Weight k = 1;; ++k) {
        const MpReal kd = static_cast<double>(k);
        const MpReal p1 = kd * (3 * kd + 1) / 2;
        const MpReal p2 = kd * (3 * kd - 1) / 2;
        MpReal pair = nr * exp(-p1 * tr) / (nr + p1) + nr * exp(-p2 * tr) / (nr + p2);
        if (k % 2 == 0) sum += pair; else sum -= pair;
        if (pair < abs(sum) * 1e-18) break;
    }
    if (!(sum > 0)) return LogProb::zero();
    return LogProb::from_log(-static_cast<double>(n) * tau + static_cast<double>(log(sum)));
}

LogProb gamma_visit(Weight n) {
    if (n < 0) throw std::invalid_argument("gamma_visit requires n >= 0");
    return LogProb::from_log(hyperbolic::log_g<double>(n) + log_partition_count(n));
}

LogProb q_forward(Weight n, Weight m) {
    if (n < 1 || m < 0 || m >= n) throw std::invalid_argument("q_forward requires 0 <= m < n");
    return LogProb::from_log(log_partition_count(m) + std::log(static_cast<double>(sigma1_int(n - m))) -
                             std::log(static_cast<double>(n)) - log_partition_count(n));
}

mpq_class q_forward_exact(Weight n, Weight m) {
    if (n < 1 || m < 0 || m >= n) throw std::invalid_argument("q_forward_exact requires 0 <= m < n");
    mpz_class num = partition_count(m) * sigma1(n - m);
    mpz_class den = partition_count(n);
    den *= static_cast<unsigned long>(n);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

LogProb q_backward(Weight n, Weight h) {
    if (n < 0 || h < 1) throw std::invalid_argument("q_backward requires n >= 0 and h >= 1");
    const Weight m = n + h;
    return LogProb::from_log(hyperbolic::log_g<double>(m) - std::log(static_cast<double>(m)) +
                             std::log(static_cast<double>(sigma1_int(h))) - hyperbolic::log_g<double>(n));
}

// ------------------------------------------------------------- identities

std::string Precision::to_string() const { return digits == 0 ? "double" : "mp:" + std::to_string(digits); }

Precision Precision::parse(const std::string& text) {
    if (text == "double") return {};
    if (text.rfind("mp:", 0) == 0) {
        std::size_t used = 0;
        unsigned long digits = 0;
        try {
            digits = std::stoul(text.substr(3), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 3) throw std::invalid_argument("bad precision: " + text);
        if (digits < 50) throw std::invalid_argument("multiprecision mode needs at least 50 digits");
        return Precision{static_cast<unsigned>(digits)};
    }
    throw std::invalid_argument("precision must be 'double' or 'mp:<digits>', got " + text);
}

double hyperbolic::backward_tail_bound(Weight n, Weight M, double log_g_n, int power) {
    if (power < 0) throw std::invalid_argument("backward_tail_bound requires power >= 0");
    const Weight floor_m = static_cast<Weight>((power + 2) * (power + 2) + 2);
    if (M < std::max(n, floor_m)) throw std::invalid_argument("backward_tail_bound: M below its validity range");
    const double a1 = kPi * std::sqrt(23.0) / 6.0;
    const double log_c = std::log(4.0 * std::sqrt(3.0) * kPi) - std::log1p(-std::exp(-2.0 * a1));
    // log ψ(m) with σ₁(m − n) ≤ m(1 + ln m)
    auto log_psi = [&](double m) {
        const double root = std::sqrt(24.0 * m - 1.0);
        return log_c - kPi * root / 6.0 - std::log(root) + (1.0 + power) * std::log(m) + std::log1p(std::log(m));
    };
    double total = 0.0;
    double block = static_cast<double>(M + 1);
    for (int j = 0; j < 200 && block < 1e300; ++j, block *= 2.0) {
        const double log_term = std::log(block) + log_psi(block) - log_g_n;
        if (log_term < -745.0) break;
        total += std::exp(log_term);
    }
    return total;
}

IdentityCheck backward_normalization_residual(Weight n, Precision precision) {
    if (n < 0) throw std::invalid_argument("backward_normalization_residual requires n >= 0");
    if (!precision.multiprecision()) return hyperbolic::backward_normalization<double>(n);
    ScopedMpPrecision scope(precision.digits);
    return hyperbolic::backward_normalization<MpReal>(n);
}

IdentityCheck divisor_identity_residual(Weight n, Precision precision) {
    if (n < 0) throw std::invalid_argument("divisor_identity_residual requires n >= 0");
    if (!precision.multiprecision()) return hyperbolic::divisor_identity<double>(n);
    ScopedMpPrecision scope(precision.digits);
    return hyperbolic::divisor_identity<MpReal>(n);
}

double appendix_g(double x) {
    if (!(x > 0.0)) throw std::domain_error("appendix_g requires x > 0");
    const double a = kPi * x / 6.0;
    const double e2 = std::exp(-2.0 * a);
    const double log_sinh = a - std::numbers::ln2 + std::log1p(-e2);
    const double log_den = 2.0 * a + std::log1p(e2 * e2 - e2);
    return std::exp(std::log(kPi) + log_sinh - 0.5 * std::log(3.0) - log_den);
}

double appendix_partial_sum(double x, Weight K) {
    if (K < 0) throw std::invalid_argument("appendix_partial_sum requires K >= 0");
    const double x2 = x * x;
    double sum = -x / (1.0 + x2);
    for (Weight k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        const double a = 6.0 * kd + 1.0;
        const double b = 6.0 * kd - 1.0;
        const double pair = x / (a * a + x2) + x / (b * b + x2);
        sum += (k % 2 == 1) ? pair : -pair;
    }
    return sum;
}

double appendix_series_residual(double x, Weight K) {
    if (K < 1) throw std::invalid_argument("appendix_series_residual requires K >= 1");
    return std::abs(appendix_g(x) + appendix_partial_sum(x, K));
}

double appendix_g_of_n(Weight n, Weight K) {
    if (n < 1 || K < 1) throw std::invalid_argument("appendix_g_of_n requires n >= 1 and K >= 1");
    constexpr Weight kLevels = 8;
    const double x = std::sqrt(24.0 * static_cast<double>(n) - 1.0);
    std::vector<double> partial{appendix_partial_sum(x, K)};
    for (Weight k = K + 1; k <= K + kLevels; ++k) {
        const double kd = static_cast<double>(k);
        const double a = 6.0 * kd + 1.0;
        const double b = 6.0 * kd - 1.0;
        const double pair = x / (a * a + x * x) + x / (b * b + x * x);
        partial.push_back(partial.back() + (k % 2 == 1 ? pair : -pair));
    }
    return 24.0 * static_cast<double>(n) / x * -euler_average(std::move(partial));
}

double euler_product(double q, Weight J) {
    double product = 1.0;
    double qj = 1.0;
    for (Weight j = 1; j <= J; ++j) {
        qj *= q;
        product *= 1.0 - qj;
    }
    return product;
}

double pentagonal_series(double q, Weight K) {
    double sum = 1.0;
    for (Weight k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        const double term = std::pow(q, kd * (3.0 * kd + 1.0) / 2.0) + std::pow(q, kd * (3.0 * kd - 1.0) / 2.0);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

// ------------------------------------------------------------ limit shape

double limit_shape_y(double x) {
    if (!(x > 0.0)) throw std::domain_error("limit_shape_y requires x > 0");
    return -std::log(-std::expm1(-kC * x)) / kC;
}

double limit_shape_dy(double x) {
    if (!(x > 0.0)) throw std::domain_error("limit_shape_dy requires x > 0");
    return -1.0 / std::expm1(kC * x);
}

double h_func(double x) {
    if (!(x > 0.0)) throw std::domain_error("h_func requires x > 0");
    return x / (kC * std::expm1(kC * x)) - std::log(-std::expm1(-kC * x)) / (kC * kC);
}

double h_integral(double x) {
    if (!(x > 0.0)) throw std::domain_error("h_integral requires x > 0");
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate([](double y) { return y > 0.0 ? h_func(y) : 0.0; }, 0.0, x);
}

double k_limit_cdf(double x) {
    if (!(x >= 0.0)) throw std::domain_error("k_limit_cdf requires x >= 0");
    if (x == 0.0) return 0.0;
    auto integrand = [](double y) { return y > 0.0 ? y / std::expm1(kC * y) : 1.0 / kC; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, x, 15, 1e-14);
}

VisitTable::VisitTable(Weight cap) : cap_(cap) {
    if (cap < 0) throw std::invalid_argument("VisitTable requires cap >= 0");
    log_g_.resize(static_cast<std::size_t>(cap + 1));
    for (Weight m = 0; m <= cap; ++m) log_g_[static_cast<std::size_t>(m)] = hyperbolic::log_g<double>(m);
}

double VisitTable::log_g(Weight m) const {
    if (m >= 0 && m <= cap_) return log_g_[static_cast<std::size_t>(m)];
    return hyperbolic::log_g<double>(m);
}

double VisitTable::log_g_over_m(Weight m) const { return log_g(m) - std::log(static_cast<double>(m)); }

}  // namespace partigrowth
