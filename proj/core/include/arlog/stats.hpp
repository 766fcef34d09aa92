#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace arlog::analysis {

// Population-style estimators (divisor n). Sums are pairwise so the result
// depends only on the order of the data.
struct SampleMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double std_dev() const;
};

// Requires at least two points and nonzero variance.
SampleMoments sample_moments(std::span<const double> data);

// Asymptotic 1% critical value of sqrt(n) D.
inline constexpr double kKsCritical1Percent = 1.6276;

struct KSResult {
  double statistic = 0.0;  // D
  double effective_n = 0.0;
  double p_value = 1.0;
  double scaled() const;  // sqrt(n) D
  bool rejects(double alpha) const { return p_value < alpha; }
};

// P(K > lambda) for the Kolmogorov distribution, first 100 series terms.
double kolmogorov_survival(double lambda);

// One-sample test; the data need at least ten points.
KSResult ks_test(std::span<const double> data, const std::function<double(double)>& reference_cdf);
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

double normal_cdf(double x);

}  // namespace arlog::analysis
