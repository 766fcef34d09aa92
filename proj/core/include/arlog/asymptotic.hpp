#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "arlog/bigfloat.hpp"
#include "arlog/biguint.hpp"

// Closed forms for the stationary AR(1) / Ornstein-Uhlenbeck log-magnitude
// process: the Hermite-type coefficients nu_2k, the covariance of ln|X_t|,
// the finite-n variance of the normalized time average and its limit xi_rho,
// and the OU constant eta_theta.
//
// `digits` always means decimals to be reported; results are returned at the
// working precision digits + 10.
namespace arlog::asym {

inline constexpr int kGuardDigits = 10;

// Lag-one correlation of a stationary AR(1) process, |rho| < 1. Kept as an
// exact decimal so that rho^2k carries no binary conversion error.
class StationaryRho {
 public:
  static StationaryRho parse(std::string_view text);
  const BigFloat& value() const { return value_; }
  const std::string& text() const { return text_; }

 private:
  StationaryRho(BigFloat value, std::string text) : value_(std::move(value)), text_(std::move(text)) {}
  BigFloat value_;
  std::string text_;
};

// Mean-reversion rate of a stationary OU process, theta > 0.
class OUTheta {
 public:
  static OUTheta parse(std::string_view text);
  const BigFloat& value() const { return value_; }

 private:
  explicit OUTheta(BigFloat value) : value_(std::move(value)) {}
  BigFloat value_;
};

// nu_2k = 2^(k-1) (k-1)!, exactly. k >= 1.
BigUInt nu_2k(int k);

// Exact rational nu_2k^2 / (2k)! rounded once to `precision` digits.
BigFloat lambert_coefficient(int k, int precision);

struct MuSigma {
  BigFloat mu;     // E ln|N(0,1)| = -(ln 2 + gamma)/2
  BigFloat sigma;  // sqrt(Var ln|N(0,1)|) = pi / (2 sqrt 2)
};
MuSigma mu_sigma(int digits);

// Cov(ln|X_1|, ln|X_{lag+1}|) = sum_k nu_2k^2 rho^(2k lag) / (2k)!.
BigFloat log_abs_autocov(const StationaryRho& rho, std::int64_t lag, int digits);

// Var(n^{-1/2} sum_{t=1}^n ln|X_t|), summed in closed form over lags.
BigFloat finite_n_variance(const StationaryRho& rho, std::int64_t n, int digits);

BigFloat xi_squared(const StationaryRho& rho, int digits);
BigFloat xi(const StationaryRho& rho, int digits);

// eta_theta = sqrt((pi^2 ln2 / 4 - 7 zeta(3) / 8) / theta).
BigFloat eta(const OUTheta& theta, int digits);

// Partial sums of the central-binomial series for theta * eta_theta^2, with
// an upper bound on the omitted tail. [lower(), upper()] brackets the limit.
struct SeriesBracket {
  std::int64_t last_index = 0;
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  double lower() const { return partial_sum; }
  double upper() const { return partial_sum + tail_bound; }
  double width() const { return tail_bound; }
};
SeriesBracket eta_series_check(std::int64_t last_index);

}  // namespace arlog::asym
