#pragma once

#include <cstddef>
#include <span>

namespace equidist::stats {

// Inverse standard-normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Two-sided normal p-value for a z statistic.
double two_sided_p(double z);

double mean(std::span<const double> x);

// Sample standard deviation, n-1 denominator.
double sample_sd(std::span<const double> x);

double sample_variance(std::span<const double> x);

}  // namespace equidist::stats
