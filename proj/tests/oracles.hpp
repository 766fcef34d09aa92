#pragma once

// Test-only reference computations. Each routine here reaches its value by a
// different route from the library code it checks.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>

#include "arlog/asymptotic.hpp"
#include "arlog/bigfloat.hpp"
#include "arlog/biguint.hpp"

namespace arlog::oracle {

// Relative distance |a - b| / |b| as a double (b nonzero).
inline double rel_diff(const BigFloat& a, const BigFloat& b) {
  const BigFloat d = (a - b).abs() / b.abs();
  return d.to_double();
}

// atan(1/x) = sum (-1)^n / ((2n+1) x^(2n+1)), each term an exact rational.
inline BigFloat atan_inv(std::uint32_t x, int precision) {
  BigFloat sum = BigFloat::zero(precision);
  BigUInt power(x);
  const BigUInt x2(static_cast<std::uint64_t>(x) * x);
  for (std::uint32_t n = 0;; ++n) {
    BigUInt den = power;
    den.mul_small(2 * n + 1);
    const BigFloat term = BigFloat::from_rational(BigUInt(1), den, precision);
    if (term.magnitude() < -precision - 3) break;
    sum = (n % 2 == 0) ? sum + term : sum - term;
    power = power * x2;
  }
  return sum;
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
inline BigFloat machin_pi(int precision) {
  const int w = precision + 5;
  const BigFloat pi = BigFloat::from_int(16, w) * atan_inv(5, w) -
                      BigFloat::from_int(4, w) * atan_inv(239, w);
  return pi.with_precision(precision);
}

// ln 2 = 2 atanh(1/3) = sum 2 / ((2k+1) 3^(2k+1)).
inline BigFloat atanh_ln2(int precision) {
  const int w = precision + 5;
  BigFloat sum = BigFloat::zero(w);
  BigUInt power(3);
  for (std::uint32_t k = 0;; ++k) {
    BigUInt den = power;
    den.mul_small(2 * k + 1);
    const BigFloat term = BigFloat::from_rational(BigUInt(2), den, w);
    if (term.magnitude() < -w - 3) break;
    sum += term;
    power.mul_small(9);
  }
  return sum.with_precision(precision);
}

// zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 C(2k,k)); terms shrink by ~4x.
inline BigFloat apery_zeta3(int precision) {
  const int w = precision + 5;
  BigFloat sum = BigFloat::zero(w);
  BigUInt central(2);  // C(2k, k) at k = 1
  for (std::uint32_t k = 1;; ++k) {
    BigUInt den = central;
    den.mul_small(k);
    den.mul_small(k);
    den.mul_small(k);
    const BigFloat term = BigFloat::from_rational(BigUInt(1), den, w);
    if (term.magnitude() < -w - 3) break;
    sum = (k % 2 == 1) ? sum + term : sum - term;
    // C(2k+2, k+1) = C(2k, k) * (2k+1)(2k+2) / (k+1)^2
    central.mul_small(2 * k + 1);
    central.mul_small(2 * k + 2);
    central.div_small(k + 1);
    central.div_small(k + 1);
  }
  return (sum * BigFloat::from_int(5, w) / BigFloat::from_int(2, w)).with_precision(precision);
}

// Brent-McMillan: gamma = U/V (A_0 carries the -ln N term) with
//   B_k = B_{k-1} N^2 / k^2,  A_k = (A_{k-1} N^2 / k + B_k) / k,
//   A_0 = -ln N, B_0 = 1; the error is O(exp(-4N)).
inline BigFloat brent_mcmillan_gamma(int precision) {
  const auto big_n = static_cast<std::uint32_t>(std::ceil(precision * std::log(10.0) / 4.0)) + 2;
  const int w = precision + 10 + static_cast<int>(std::ceil(2.0 * big_n / std::log(10.0)));
  const BigFloat ln_n = ln(BigFloat::from_int(big_n, w));
  const BigFloat n2 = BigFloat::from_int(static_cast<std::int64_t>(big_n) * big_n, w);
  BigFloat a = -ln_n;
  BigFloat b = BigFloat::from_int(1, w);
  BigFloat u = a;
  BigFloat v = b;
  for (std::uint32_t k = 1; k < 100 * big_n; ++k) {
    const BigFloat kk = BigFloat::from_int(k, w);
    b = b * n2 / (kk * kk);
    a = (a * n2 / kk + b) / kk;
    u += a;
    v += b;
    if (k > 3 * big_n && b.magnitude() < v.magnitude() - w - 2 &&
        (a.is_zero() || a.magnitude() < u.magnitude() - w - 2))
      break;
  }
  return (u / v).with_precision(precision);
}

// sigma^2 + (2/n) sum_{l=1}^{n-1} (n - l) Cov(ln|X_1|, ln|X_{l+1}|), i.e. the
// double sum over (t, s) collapsed by lag and assembled term by term.
inline BigFloat double_sum_variance(const asym::StationaryRho& r, std::int64_t n, int digits) {
  const int w = digits + 10;
  const asym::MuSigma ms = asym::mu_sigma(digits);
  BigFloat lagged = BigFloat::zero(w);
  for (std::int64_t lag = 1; lag < n; ++lag)
    lagged += BigFloat::from_int(n - lag, w) * asym::log_abs_autocov(r, lag, digits + 3);
  return ms.sigma * ms.sigma + BigFloat::from_int(2, w) * lagged / BigFloat::from_int(n, w);
}

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;

// Integral of f over the real line; the left tail decays like e^{1.1 x} and
// the right tail doubly exponentially, so [-120, 12] holds all the mass.
template <class F>
double integrate_line(F f) {
  return Quadrature::integrate(f, -120.0, -20.0, 20, 1e-15) +
         Quadrature::integrate(f, -20.0, 0.0, 20, 1e-15) +
         Quadrature::integrate(f, 0.0, 12.0, 20, 1e-15);
}

}  // namespace arlog::oracle
