#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace arlog::analysis {

// Companion matrix of X_t = a_1 X_{t-1} + ... + a_m X_{t-m}: top row a,
// ones on the subdiagonal, zeros elsewhere.
class CompanionMatrix {
 public:
  explicit CompanionMatrix(std::vector<double> top_row);
  std::size_t order() const { return top_row_.size(); }
  const std::vector<double>& top_row() const { return top_row_; }
  double entry(std::size_t row, std::size_t col) const;
  // Monic coefficients, highest degree first: 1, -a_1, ..., -a_m.
  std::vector<double> characteristic_polynomial() const;

 private:
  std::vector<double> top_row_;
};

struct SpectralResult {
  double radius = 0.0;
  std::vector<std::complex<double>> roots;
  std::vector<std::complex<double>> dominant;  // roots within 1e-9 of the radius
  double max_residual = 0.0;
  int iterations = 0;
};

// Roots of a monic polynomial (highest degree first) by Aberth-Ehrlich
// iteration, capped at 500 sweeps. Throws ConvergenceError when some
// |p(z)| stays above 1e-10.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> monic, int* iterations = nullptr);

std::complex<double> evaluate(std::span<const double> monic, std::complex<double> z);

// Eigenvalues of the companion matrix of a_1..a_m, 1 <= m <= 32.
SpectralResult spectral_radius(std::span<const double> coeffs);

// |a_2| > 1 or |a_1| > 1 - a_2.
bool ar2_explosive(double a1, double a2);

struct RegionScan {
  int grid = 0;
  int compared = 0;
  int excluded = 0;
  std::vector<std::pair<double, double>> mismatches;
};

// Compares ar2_explosive against spectral_radius > 1 on a grid x grid lattice
// over [lo, hi]^2, skipping points with |radius - 1| < band.
RegionScan ar2_region_scan(int grid = 41, double lo = -2.0, double hi = 2.0, double band = 1e-6);

}  // namespace arlog::analysis
