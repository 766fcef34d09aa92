#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

#include "arlog/bigfloat.hpp"

// Law of the standardized residual (ln|X_n| - mu_n) / sigma of the explosive
// AR(1) process X_t = rho X_{t-1} + sqrt(rho^2 - 1) e_t, X_0 = 0. Because
// X_n ~ N(0, rho^2n - 1) exactly, the law is the same for every rho and n:
//
//   pdf(x) = 1/2 sqrt(pi/2) exp(-e^z / 4 + z / 2),   z = pi x / sqrt(2) - gamma
//   cdf(x) = erf(e^(z/2) / 2)
//
// The double-precision functions serve simulation and testing; the BigFloat
// overloads produce the published high-precision constants.
namespace arlog::residual {

inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kSigma = std::numbers::pi / (2.0 * std::numbers::sqrt2);
inline constexpr double kRawFourthMoment = 7.0;
inline constexpr double kExcessKurtosis = 4.0;

class ExplosiveRho {
 public:
  static ExplosiveRho parse(std::string_view text);
  static ExplosiveRho from_value(BigFloat value);
  const BigFloat& value() const { return value_; }
  double to_double() const { return value_.to_double(); }

 private:
  explicit ExplosiveRho(BigFloat value) : value_(std::move(value)) {}
  BigFloat value_;
};

// mu_n = E ln|X_n| = (ln(rho^2n - 1) - ln 2 - gamma) / 2.
BigFloat mu_n(const ExplosiveRho& rho, std::int64_t n, int digits);
double mu_n(double rho, std::int64_t n);

double pdf(double x);
double log_pdf(double x);
double cdf(double x);
// 1 - cdf(x) without cancellation.
double survival(double x);
// Inverse cdf to double precision; p in (0, 1).
double quantile(double p);

BigFloat pdf(const BigFloat& x);
BigFloat cdf(const BigFloat& x);
// Root of cdf(x) = p: bisection on a bracket to 1e-3, then Newton at
// digits + 10 working digits. Throws DomainError for p outside (0, 1) and
// ConvergenceError if Newton stalls.
BigFloat quantile(const BigFloat& p, int digits);

struct Moments {
  BigFloat mean;
  BigFloat variance;
  BigFloat skewness;  // -28 sqrt(2) zeta(3) / pi^3
  BigFloat excess_kurtosis;
  BigFloat raw_fourth_moment;
};
Moments moments(int digits);

// Location of the density maximum, sqrt(2) (ln 2 + gamma) / pi.
BigFloat mode(int digits);

double standardize(double ln_abs_xn, double rho, std::int64_t n);

// Explosive Ornstein-Uhlenbeck process dY = -theta Y dt + sqrt(-2 theta) dW,
// theta < 0, Y_0 = 0: Y_T ~ N(0, e^(-2 theta T) - 1), the AR(1) law with
// rho = e^(-theta) and n = T.
ExplosiveRho ou_equivalent_rho(const BigFloat& theta);
BigFloat ou_mu(const BigFloat& theta, const BigFloat& horizon, int digits);
double ou_mu(double theta, double horizon);

}  // namespace arlog::residual
