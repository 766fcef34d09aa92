#include "arlog/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "arlog/error.hpp"

namespace arlog::analysis {
namespace {

constexpr int kMaxSweeps = 500;
constexpr double kResidualLimit = 1e-10;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Horner {
  std::complex<double> p;
  std::complex<double> dp;
  double scale;  // sum |c_i| |z|^(deg - i), for the roundoff bound
};

Horner horner(std::span<const double> c, std::complex<double> z) {
  std::complex<double> p = c[0], dp = 0.0;
  double scale = std::abs(c[0]);
  const double az = std::abs(z);
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + c[i];
    scale = scale * az + std::abs(c[i]);
  }
  return {p, dp, scale};
}

// Accepts |p(z)| below the absolute limit, or within roundoff of the
// evaluation itself when the coefficients are large.
bool acceptable(const Horner& h, std::size_t degree) {
  return std::abs(h.p) < std::max(kResidualLimit, 8.0 * static_cast<double>(degree) * kEps * h.scale);
}

}  // namespace

CompanionMatrix::CompanionMatrix(std::vector<double> top_row) : top_row_(std::move(top_row)) {
  if (top_row_.empty() || top_row_.size() > 32) throw DomainError("order must be in 1..32");
}

double CompanionMatrix::entry(std::size_t row, std::size_t col) const {
  if (row >= order() || col >= order()) throw DomainError("companion index out of range");
  if (row == 0) return top_row_[col];
  return col + 1 == row ? 1.0 : 0.0;
}

std::vector<double> CompanionMatrix::characteristic_polynomial() const {
  std::vector<double> c{1.0};
  for (double a : top_row_) c.push_back(-a);
  return c;
}

std::complex<double> evaluate(std::span<const double> monic, std::complex<double> z) {
  return horner(monic, z).p;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> monic, int* iterations) {
  if (monic.empty() || monic[0] != 1.0) throw DomainError("polynomial must be monic");
  const std::size_t deg = monic.size() - 1;
  if (iterations) *iterations = 0;
  if (deg == 0) return {};

  double r = 0.0;
  for (std::size_t i = 1; i <= deg; ++i) {
    r = std::max(r, std::pow(std::abs(monic[i]), 1.0 / static_cast<double>(i)));
  }
  std::vector<std::complex<double>> z(deg);
  if (r == 0.0) return z;  // x^m

  const std::complex<double> center(-monic[1] / static_cast<double>(deg) + 0.013 * r, 0.007 * r);
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.7;
    z[k] = center + std::polar(r, angle);
  }

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double largest_step = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      const Horner h = horner(monic, z[k]);
      if (h.p == 0.0) continue;
      if (h.dp == 0.0) {
        z[k] += 1e-8 * (1.0 + std::abs(z[k]));
        largest_step = std::max(largest_step, 1e-8);
        continue;
      }
      const std::complex<double> ratio = h.p / h.dp;
      std::complex<double> repulsion = 0.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      const std::complex<double> w = ratio / (1.0 - ratio * repulsion);
      z[k] -= w;
      largest_step = std::max(largest_step, std::abs(w) / (1.0 + std::abs(z[k])));
    }
    if (largest_step < 4.0 * kEps) break;
  }
  if (iterations) *iterations = std::min(sweep + 1, kMaxSweeps);

  for (const auto& root : z) {
    if (!acceptable(horner(monic, root), deg)) {
      throw ConvergenceError("root finder did not converge: |p(z)| = " +
                             std::to_string(std::abs(horner(monic, root).p)));
    }
  }
  return z;
}

SpectralResult spectral_radius(std::span<const double> coeffs) {
  const CompanionMatrix companion(std::vector<double>(coeffs.begin(), coeffs.end()));
  const auto poly = companion.characteristic_polynomial();
  SpectralResult out;
  out.roots = polynomial_roots(poly, &out.iterations);
  for (const auto& z : out.roots) {
    out.radius = std::max(out.radius, std::abs(z));
    out.max_residual = std::max(out.max_residual, std::abs(evaluate(poly, z)));
  }
  for (const auto& z : out.roots) {
    if (std::abs(z) >= out.radius - 1e-9 * std::max(1.0, out.radius)) out.dominant.push_back(z);
  }
  return out;
}

bool ar2_explosive(double a1, double a2) { return std::abs(a2) > 1.0 || std::abs(a1) > 1.0 - a2; }

RegionScan ar2_region_scan(int grid, double lo, double hi, double band) {
  if (grid < 2) throw DomainError("grid must have at least two points per axis");
  RegionScan scan;
  scan.grid = grid;
  const double steps = grid - 1;
  auto at = [&](int i) { return (lo * (steps - i) + hi * i) / steps; };
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double a[] = {at(i), at(j)};
      const double radius = spectral_radius(a).radius;
      if (std::abs(radius - 1.0) < band) {
        ++scan.excluded;
        continue;
      }
      ++scan.compared;
      if (ar2_explosive(a[0], a[1]) != (radius > 1.0)) scan.mismatches.emplace_back(a[0], a[1]);
    }
  }
  return scan;
}

}  // namespace arlog::analysis
