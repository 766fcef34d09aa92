#include "arlog/residual.hpp"

#include <cmath>
#include <limits>

#include "arlog/constants.hpp"
#include "arlog/error.hpp"

namespace arlog::residual {
namespace {

constexpr int kGuardDigits = 10;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kPdfScale = 0.5 * 1.2533141373155002512;  // 1/2 sqrt(pi/2)

double z_of(double x) { return std::numbers::pi * x / std::numbers::sqrt2 - kEulerGamma; }

int working_digits(int digits) {
  if (digits < 1 || digits + kGuardDigits > BigFloat::kMaxPrecision)
    throw DomainError("digits out of range");
  return digits + kGuardDigits;
}

BigFloat one(int w) { return BigFloat::from_int(1, BigFloat::kMinPrecision).with_precision(w); }

BigFloat z_of(const BigFloat& x) {
  const int w = x.precision();
  return constant(Constant::kPi, w) * x / sqrt(BigFloat::from_int(2, w)) -
         constant(Constant::kGamma, w);
}

// ln(a - 1) for a > 1 given ln a, switching to ln a + ln(1 - 1/a) once a is
// too large to hold the "- 1" at working precision.
BigFloat ln_power_minus_one(const BigFloat& base_sq, std::int64_t n, int w) {
  const BigFloat log_base = ln(base_sq);
  const BigFloat n_bf = BigFloat::from_int(n, w);
  const double decimal_size = static_cast<double>(n) * log_base.to_double() / std::log(10.0);
  if (decimal_size < w) return ln(powi(base_sq, n) - one(w));
  return n_bf * log_base + ln(one(w) - powi(base_sq, -n));
}

BigFloat mu_from_log_variance(const BigFloat& log_variance, int w) {
  return (log_variance - constant(Constant::kLn2, w) - constant(Constant::kGamma, w)) /
         BigFloat::from_int(2, w);
}

}  // namespace

ExplosiveRho ExplosiveRho::parse(std::string_view text) {
  return from_value(BigFloat::parse(text, BigFloat::kMaxPrecision));
}

ExplosiveRho ExplosiveRho::from_value(BigFloat value) {
  if (value.abs() <= one(BigFloat::kMinPrecision)) throw DomainError("rho out of range");
  return ExplosiveRho(std::move(value));
}

BigFloat mu_n(const ExplosiveRho& rho, std::int64_t n, int digits) {
  if (n < 1) throw DomainError("n must be >= 1");
  const int w = working_digits(digits);
  const BigFloat r = rho.value().with_precision(std::max(w, rho.value().precision())).abs();
  return mu_from_log_variance(ln_power_minus_one((r * r).with_precision(w), n, w), w);
}

double mu_n(double rho, std::int64_t n) {
  if (!(std::fabs(rho) > 1.0)) throw DomainError("rho out of range");
  if (n < 1) throw DomainError("n must be >= 1");
  const double log_var_leading = 2.0 * static_cast<double>(n) * std::log(std::fabs(rho));
  const double log_variance = log_var_leading + std::log1p(-std::exp(-log_var_leading));
  return 0.5 * (log_variance - kLn2 - kEulerGamma);
}

double log_pdf(double x) {
  const double z = z_of(x);
  return std::log(kPdfScale) - 0.25 * std::exp(z) + 0.5 * z;
}

double pdf(double x) { return std::exp(log_pdf(x)); }

double cdf(double x) { return std::erf(0.5 * std::exp(0.5 * z_of(x))); }

double survival(double x) { return std::erfc(0.5 * std::exp(0.5 * z_of(x))); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  // Invert erf(e^(z/2)/2) = p by bisection on a bracket, then Newton.
  const bool upper = p > 0.5;
  const double q = 1.0 - p;
  auto below = [&](double x) { return upper ? survival(x) > q : cdf(x) < p; };
  double lo = -20.0;
  double hi = 20.0;
  while (!below(lo)) {
    lo *= 2;
    if (lo < -1e6) throw ConvergenceError("quantile: bracket search failed");
  }
  while (below(hi)) {
    hi *= 2;
    if (hi > 1e6) throw ConvergenceError("quantile: bracket search failed");
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 50; ++iter) {
    const double resid = upper ? q - survival(x) : cdf(x) - p;
    const double step = resid / pdf(x);
    x -= step;
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

BigFloat pdf(const BigFloat& x) {
  const int w = x.precision();
  const BigFloat z = z_of(x);
  const BigFloat quarter = BigFloat::parse("0.25", BigFloat::kMinPrecision).with_precision(w);
  const BigFloat half = BigFloat::parse("0.5", BigFloat::kMinPrecision).with_precision(w);
  const BigFloat scale = half * sqrt(constant(Constant::kPi, w) * half);
  return scale * exp(half * z - quarter * exp(z));
}

BigFloat cdf(const BigFloat& x) {
  const int w = x.precision();
  const BigFloat half = BigFloat::parse("0.5", BigFloat::kMinPrecision).with_precision(w);
  return erf(half * exp(half * z_of(x)));
}

BigFloat quantile(const BigFloat& p, int digits) {
  const int w = working_digits(digits);
  const BigFloat target = p.with_precision(w);
  if (target.sign() <= 0 || target >= one(w)) throw DomainError("p must lie in (0, 1)");

  // Coarse bracket in double precision, then Newton in BigFloat.
  const double pd = target.to_double();
  const double qd = (one(w) - target).to_double();
  const bool upper = pd > 0.5;
  auto below = [&](double x) { return upper ? survival(x) > qd : cdf(x) < pd; };
  double lo = -20.0;
  double hi = 20.0;
  while (!below(lo)) {
    lo *= 2;
    if (lo < -1e6) throw ConvergenceError("quantile: bracket search failed");
  }
  while (below(hi)) {
    hi *= 2;
    if (hi > 1e6) throw ConvergenceError("quantile: bracket search failed");
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? lo : hi) = mid;
  }

  BigFloat x = BigFloat::from_double(0.5 * (lo + hi), BigFloat::kMinPrecision).with_precision(w);
  for (int iter = 0; iter < 100; ++iter) {
    const BigFloat step = (cdf(x) - target) / pdf(x);
    x -= step;
    const std::int64_t resolution = std::max<std::int64_t>(-(digits + 8), x.magnitude() - w + 2);
    if (step.is_zero() || step.magnitude() < resolution) {
      const BigFloat resid = (cdf(x) - target).abs();
      if (!resid.is_zero() && resid.magnitude() >= -(digits + 2))
        throw ConvergenceError("quantile: residual above tolerance");
      return x;
    }
  }
  throw ConvergenceError("quantile: Newton iteration did not converge");
}

Moments moments(int digits) {
  const int w = working_digits(digits);
  const BigFloat pi = constant(Constant::kPi, w);
  Moments m;
  m.mean = BigFloat::zero(std::min(w, BigFloat::kMaxPrecision));
  m.variance = one(w);
  m.skewness = -(BigFloat::from_int(28, w) * sqrt(BigFloat::from_int(2, w)) *
                 constant(Constant::kZeta3, w) / (pi * pi * pi));
  m.excess_kurtosis = BigFloat::from_int(4, w);
  m.raw_fourth_moment = BigFloat::from_int(7, w);
  return m;
}

BigFloat mode(int digits) {
  const int w = working_digits(digits);
  return sqrt(BigFloat::from_int(2, w)) *
         (constant(Constant::kLn2, w) + constant(Constant::kGamma, w)) / constant(Constant::kPi, w);
}

double standardize(double ln_abs_xn, double rho, std::int64_t n) {
  return (ln_abs_xn - mu_n(rho, n)) / kSigma;
}

ExplosiveRho ou_equivalent_rho(const BigFloat& theta) {
  if (theta.sign() >= 0) throw DomainError("theta must be negative");
  return ExplosiveRho::from_value(exp(-theta));
}

BigFloat ou_mu(const BigFloat& theta, const BigFloat& horizon, int digits) {
  if (theta.sign() >= 0) throw DomainError("theta must be negative");
  if (horizon.sign() <= 0) throw DomainError("horizon must be positive");
  const int w = working_digits(digits);
  const BigFloat growth = BigFloat::from_int(-2, w) * theta.with_precision(w) * horizon.with_precision(w);
  // ln(e^g - 1) = g + ln(1 - e^-g)
  const BigFloat log_variance = growth + ln(one(w) - exp(-growth));
  return mu_from_log_variance(log_variance, w);
}

double ou_mu(double theta, double horizon) {
  if (!(theta < 0.0)) throw DomainError("theta must be negative");
  const double growth = -2.0 * theta * horizon;
  return 0.5 * (growth + std::log1p(-std::exp(-growth)) - kLn2 - kEulerGamma);
}

}  // namespace arlog::residual
