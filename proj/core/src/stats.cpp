#include "arlog/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "arlog/error.hpp"
#include "arlog/parallel.hpp"

namespace arlog::analysis {

double SampleMoments::std_dev() const { return std::sqrt(variance); }

SampleMoments sample_moments(std::span<const double> data) {
  if (data.size() < 2) throw DomainError("sample moments need at least two points");
  const double n = static_cast<double>(data.size());
  SampleMoments m;
  m.count = data.size();
  m.mean = pairwise_sum(data) / n;
  std::vector<double> d2(data.size()), d3(data.size()), d4(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = data[i] - m.mean;
    d2[i] = d * d;
    d3[i] = d2[i] * d;
    d4[i] = d2[i] * d2[i];
  }
  m.variance = pairwise_sum(d2) / n;
  if (!(m.variance > 0.0)) throw DomainError("degenerate sample: zero variance");
  m.skewness = pairwise_sum(d3) / n / std::pow(m.variance, 1.5);
  m.excess_kurtosis = pairwise_sum(d4) / n / (m.variance * m.variance) - 3.0;
  return m;
}

double KSResult::scaled() const { return std::sqrt(effective_n) * statistic; }

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KSResult ks_test(std::span<const double> data, const std::function<double(double)>& reference_cdf) {
  if (data.size() < 10) throw DomainError("KS test needs at least ten points");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KSResult r;
  r.statistic = std::clamp(d, 0.0, 1.0);
  r.effective_n = n;
  r.p_value = kolmogorov_survival(r.scaled());
  return r;
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  KSResult r;
  r.statistic = d;
  r.effective_n = nx * ny / (nx + ny);
  r.p_value = kolmogorov_survival(r.scaled());
  return r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace arlog::analysis
