#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace partigrowth {

/// One-sample Kolmogorov–Smirnov statistic sup |F_emp − F|.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit; `expected` are cell probabilities summing to 1.
ChiSquareResult chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& expected);

/// Upper tail of the chi-square law with `dof` degrees of freedom.
double chi_square_sf(double statistic, int dof);

double mean(const std::vector<double>& xs);
/// Unbiased sample variance.
double variance(const std::vector<double>& xs);
double correlation(const std::vector<double>& xs, const std::vector<double>& ys);
double median(std::vector<double> xs);

}  // namespace partigrowth
