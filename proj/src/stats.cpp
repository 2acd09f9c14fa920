#include "partigrowth/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace partigrowth {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic needs samples");
    std::sort(samples.begin(), samples.end());
    const double m = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
}

double chi_square_sf(double statistic, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_sf needs dof >= 1");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw std::invalid_argument("chi_square needs matching cell vectors with at least two cells");
    }
    const double mass = std::accumulate(expected.begin(), expected.end(), 0.0);
    if (std::abs(mass - 1.0) > 1e-9) throw std::invalid_argument("chi_square: expected probabilities must sum to 1");
    const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
    if (total <= 0.0) throw std::invalid_argument("chi_square: no observations");
    ChiSquareResult out;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square: every cell needs positive probability");
        const double e = total * expected[i];
        const double diff = static_cast<double>(observed[i]) - e;
        out.statistic += diff * diff / e;
    }
    out.dof = static_cast<int>(observed.size()) - 1;
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance needs two samples");
    const double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return acc / static_cast<double>(xs.size() - 1);
}

double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("correlation needs paired samples");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("correlation of a constant sample");
    return sxy / std::sqrt(sxx * syy);
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    if (xs.size() % 2 == 1) return *mid;
    return 0.5 * (*mid + *std::max_element(xs.begin(), mid));
}

}  // namespace partigrowth
