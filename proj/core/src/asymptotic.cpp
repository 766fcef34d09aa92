#include "arlog/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arlog/constants.hpp"
#include "arlog/error.hpp"

namespace arlog::asym {
namespace {

constexpr int kMaxSeriesTerms = 2'000'000;

// Parses an exact decimal and keeps just enough precision to hold it.
BigFloat parse_exact(std::string_view text) {
  const BigFloat wide = BigFloat::parse(text, BigFloat::kMaxPrecision);
  if (wide.is_zero()) return BigFloat::zero(BigFloat::kMinPrecision);
  const std::string rendered = wide.to_string();
  const auto digits = std::count_if(rendered.begin(), rendered.begin() + static_cast<std::ptrdiff_t>(rendered.find('e')),
                                    [](char c) { return c >= '0' && c <= '9'; });
  return wide.with_precision(std::max<int>(BigFloat::kMinPrecision, static_cast<int>(digits)));
}

BigFloat one(int precision) { return BigFloat::from_int(1, BigFloat::kMinPrecision).with_precision(precision); }

BigFloat power_of_ten(std::int64_t exponent, int precision) {
  return one(precision).scaled_pow10(exponent);
}

// Yields nu_2k^2 / (2k)! for k = 1, 2, ... from exact integer numerator and
// denominator, each coefficient rounded exactly once.
class LambertCoefficients {
 public:
  explicit LambertCoefficients(int precision) : precision_(precision) {}

  BigFloat next() {
    if (k_ > 0) {
      numerator_.mul_small(2 * k_);
      numerator_.mul_small(2 * k_);
      denominator_.mul_small(2 * k_ + 1);
      denominator_.mul_small(2 * k_ + 2);
    }
    ++k_;
    return BigFloat::from_rational(numerator_, denominator_, precision_);
  }
  std::uint32_t index() const { return k_; }

 private:
  int precision_;
  std::uint32_t k_ = 0;
  BigUInt numerator_{1};    // nu_2k^2
  BigUInt denominator_{2};  // (2k)!
};

int checked_digits(int digits) {
  if (digits < 1 || digits + kGuardDigits > BigFloat::kMaxPrecision)
    throw DomainError("digits out of range");
  return digits;
}

}  // namespace

StationaryRho StationaryRho::parse(std::string_view text) {
  BigFloat value = parse_exact(text);
  if (value.abs() >= one(BigFloat::kMinPrecision)) throw DomainError("rho out of range");
  return StationaryRho(std::move(value), std::string(text));
}

OUTheta OUTheta::parse(std::string_view text) {
  BigFloat value = parse_exact(text);
  if (value.sign() <= 0) throw DomainError("theta out of range");
  return OUTheta(std::move(value));
}

BigUInt nu_2k(int k) {
  if (k < 1) throw DomainError("nu_2k requires k >= 1");
  BigUInt out(1);
  for (int i = 1; i < k; ++i) {
    out.mul_small(2);
    out.mul_small(static_cast<std::uint32_t>(i));
  }
  return out;
}

BigFloat lambert_coefficient(int k, int precision) {
  if (k < 1) throw DomainError("coefficient index must be >= 1");
  const BigUInt nu = nu_2k(k);
  BigUInt factorial(1);
  for (int i = 2; i <= 2 * k; ++i) factorial.mul_small(static_cast<std::uint32_t>(i));
  return BigFloat::from_rational(nu * nu, factorial, precision);
}

MuSigma mu_sigma(int digits) {
  const int w = checked_digits(digits) + kGuardDigits;
  const BigFloat two = BigFloat::from_int(2, w);
  MuSigma out;
  out.mu = -(constant(Constant::kLn2, w) + constant(Constant::kGamma, w)) / two;
  out.sigma = constant(Constant::kPi, w) / sqrt(BigFloat::from_int(8, w));
  return out;
}

BigFloat log_abs_autocov(const StationaryRho& rho, std::int64_t lag, int digits) {
  if (lag < 1) throw DomainError("lag must be >= 1");
  const int w = checked_digits(digits) + kGuardDigits;
  const BigFloat r = rho.value().with_precision(std::max(w, rho.value().precision()));
  const BigFloat ratio = powi(r * r, lag).with_precision(w);
  BigFloat sum = BigFloat::zero(w);
  if (ratio.is_zero()) return sum;
  const BigFloat threshold = power_of_ten(-(digits + 5), w);
  const BigFloat tail_factor = one(w) / (one(w) - ratio);

  LambertCoefficients coeffs(w);
  BigFloat power = one(w);
  while (coeffs.index() < kMaxSeriesTerms) {
    power *= ratio;
    const BigFloat term = coeffs.next() * power;
    // Successive terms shrink by at least `ratio`, so the omitted tail is
    // bounded by term / (1 - ratio).
    if (term * tail_factor < threshold) return sum;
    sum += term;
  }
  throw ConvergenceError("log_abs_autocov: series did not converge");
}

BigFloat finite_n_variance(const StationaryRho& rho, std::int64_t n, int digits) {
  if (n < 1) throw DomainError("n must be >= 1");
  const int w = checked_digits(digits) + kGuardDigits +
                static_cast<int>(std::ceil(std::log10(static_cast<double>(n) + 1)));
  const BigFloat r = rho.value().with_precision(std::max(w, rho.value().precision()));
  const BigFloat q = (r * r).with_precision(w);
  const MuSigma ms = mu_sigma(digits);
  const BigFloat sigma2 = (ms.sigma * ms.sigma).with_precision(w);
  if (q.is_zero()) return sigma2;

  const BigFloat n_bf = BigFloat::from_int(n, w);
  const BigFloat scale = BigFloat::from_int(2, w) / n_bf;
  const BigFloat threshold = power_of_ten(-(digits + 5), w);
  const BigFloat tail_factor = one(w) / (one(w) - q);

  LambertCoefficients coeffs(w);
  BigFloat qk = one(w);
  BigFloat sum = BigFloat::zero(w);
  while (coeffs.index() < kMaxSeriesTerms) {
    qk *= q;
    const BigFloat gap = one(w) - qk;
    // sum_{l=1}^{n-1} (n - l) a^l = a (n (1 - a) - (1 - a^n)) / (1 - a)^2
    const BigFloat lag_sum = qk * (n_bf * gap - (one(w) - powi(qk, n))) / (gap * gap);
    const BigFloat term = coeffs.next() * lag_sum;
    if (scale * term * tail_factor < threshold) return sigma2 + scale * sum;
    sum += term;
  }
  throw ConvergenceError("finite_n_variance: series did not converge");
}

BigFloat xi_squared(const StationaryRho& rho, int digits) {
  const int w = checked_digits(digits) + kGuardDigits;
  const BigFloat r = rho.value().with_precision(std::max(w, rho.value().precision()));
  const BigFloat q = (r * r).with_precision(w);
  const MuSigma ms = mu_sigma(digits);
  const BigFloat sigma2 = ms.sigma * ms.sigma;
  if (q.is_zero()) return sigma2;

  const BigFloat threshold = power_of_ten(-(digits + 5), w);
  const BigFloat tail_factor = one(w) / (one(w) - q);
  LambertCoefficients coeffs(w);
  BigFloat qk = one(w);
  BigFloat sum = BigFloat::zero(w);
  while (coeffs.index() < kMaxSeriesTerms) {
    qk *= q;
    const BigFloat term = coeffs.next() * qk / (one(w) - qk);
    if (term * tail_factor < threshold) {
      return sigma2 + BigFloat::from_int(2, w) * sum;
    }
    sum += term;
  }
  throw ConvergenceError("xi: Lambert series did not converge");
}

BigFloat xi(const StationaryRho& rho, int digits) { return sqrt(xi_squared(rho, digits)); }

BigFloat eta(const OUTheta& theta, int digits) {
  const int w = checked_digits(digits) + kGuardDigits;
  const BigFloat pi = constant(Constant::kPi, w);
  const BigFloat limit = pi * pi * constant(Constant::kLn2, w) / BigFloat::from_int(4, w) -
                         BigFloat::from_int(7, w) * constant(Constant::kZeta3, w) /
                             BigFloat::from_int(8, w);
  return sqrt(limit / theta.value().with_precision(std::max(w, theta.value().precision())))
      .with_precision(w);
}

SeriesBracket eta_series_check(std::int64_t last_index) {
  if (last_index < 0) throw DomainError("term count must be >= 0");
  // term_n = 2^(2n-1) / (C(2n,n) (n+1)^2 (2n+1)) with r_n = 4^n / C(2n,n)
  // advanced by r_{n+1} = r_n (2n+2)/(2n+1).
  long double sum = 0.0L;
  long double compensation = 0.0L;
  long double ratio = 1.0L;
  for (std::int64_t n = 0; n <= last_index; ++n) {
    const long double m = static_cast<long double>(n);
    const long double term = ratio / (2.0L * (m + 1) * (m + 1) * (2 * m + 1));
    const long double y = term - compensation;
    const long double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    ratio *= (2 * m + 2) / (2 * m + 1);
  }
  // Since 4^n / C(2n,n) <= sqrt(pi (n + 1/2)), term_n <= (sqrt(pi)/2) n^(-5/2)
  // and the tail past N is at most the integral of that from N to infinity.
  SeriesBracket out;
  out.last_index = last_index;
  out.partial_sum = static_cast<double>(sum);
  const double root_pi = std::sqrt(std::numbers::pi);
  if (last_index == 0) {
    out.tail_bound = root_pi / 2 * (1.0 + 2.0 / 3.0);
  } else {
    out.tail_bound = root_pi / 3 * std::pow(static_cast<double>(last_index), -1.5);
  }
  return out;
}

}  // namespace arlog::asym
