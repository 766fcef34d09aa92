#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "arlog/biguint.hpp"

namespace arlog {

enum class Rounding { kNearestEven, kTruncate };

// Decimal floating-point value  sign * mantissa * 10^exponent  where the
// mantissa carries exactly `precision` significant digits (leading digit
// nonzero) unless the value is zero.
//
// Every arithmetic result is the exact result rounded once, half-to-even, to
// the larger of the operand precisions. Values are immutable.
//
// Text form (see docs/number_format.md):
//   to_string():  [-]d[.ddd]e[-]E      e.g. "-1.25e-3", "7e0", "0"
//   parse():      [+-]digits[.digits][(e|E)[+-]digits]  or  [+-].digits[...]
class BigFloat {
 public:
  // Configuration bounds for user-facing precisions.
  static constexpr int kMinPrecision = 10;
  static constexpr int kMaxPrecision = 200;
  // Internal computations may add guard digits up to this limit.
  static constexpr int kMaxWorkingPrecision = 512;
  static constexpr int kDefaultPrecision = 30;

  BigFloat() = default;

  static BigFloat zero(int precision);
  static BigFloat from_int(std::int64_t value, int precision);
  static BigFloat from_integer(const BigUInt& magnitude, int sign, int precision);
  // num/den rounded once; den must be nonzero.
  static BigFloat from_rational(const BigUInt& num, const BigUInt& den,
                                int precision, int sign = 1);
  static BigFloat from_double(double value, int precision);
  static BigFloat parse(std::string_view text, int precision);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  int precision() const { return precision_; }
  const BigUInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  // Decimal exponent of the leading digit: |x| in [10^m, 10^(m+1)).
  // Undefined for zero (returns a very negative sentinel).
  std::int64_t magnitude() const;

  BigFloat with_precision(int precision) const;
  // One unit in the last place.
  BigFloat ulp() const;
  BigFloat abs() const;
  BigFloat operator-() const;
  // Exact multiplication by 10^k.
  BigFloat scaled_pow10(std::int64_t k) const;

  std::string to_string() const;
  // Renders exactly `decimals` digits after the decimal point.
  std::string to_fixed(int decimals, Rounding rounding = Rounding::kNearestEven) const;
  double to_double() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

  // Value comparison; precision is ignored.
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  int sign_ = 0;
  BigUInt mantissa_;
  std::int64_t exponent_ = 0;
  int precision_ = kDefaultPrecision;

  static BigFloat round_exact(int sign, BigUInt mantissa, std::int64_t exponent,
                              int precision, bool sticky = false);
  friend BigFloat add_signed(const BigFloat& a, const BigFloat& b, int b_sign);
};

enum class ArithOp { kAdd, kSub, kMul, kDiv };
BigFloat bf_arith(ArithOp op, const BigFloat& a, const BigFloat& b);

// Square-and-multiply; 0^k for k < 0 is a domain error.
BigFloat powi(const BigFloat& base, std::int64_t k);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat ln(const BigFloat& x);
// Maclaurin series; |x| > 10 returns +-1.
BigFloat erf(const BigFloat& x);

// Validates a user-facing precision against the configuration bounds.
int checked_precision(int precision);

}  // namespace arlog
