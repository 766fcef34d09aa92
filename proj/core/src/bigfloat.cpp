#include "arlog/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "arlog/constants.hpp"
#include "arlog/error.hpp"

namespace arlog {
namespace {

constexpr std::int64_t kZeroMagnitude = std::numeric_limits<std::int64_t>::min() / 4;

void check_working(int precision) {
  if (precision < BigFloat::kMinPrecision || precision > BigFloat::kMaxWorkingPrecision)
    throw DomainError("precision out of range: " + std::to_string(precision));
}

int working(int precision, int guard) {
  return std::min(precision + guard, BigFloat::kMaxWorkingPrecision);
}

// Rounds `value` (a nonnegative integer) to the nearest integer after dividing
// by 10^drop, ties to even; `sticky` marks discarded nonzero digits beyond
// `value` itself.
bool round_up_after_split(BigUInt& quotient, const BigUInt& remainder, int drop,
                          bool sticky) {
  BigUInt twice = remainder;
  twice.mul_small(2);
  const auto cmp = twice <=> BigUInt::pow10(drop);
  if (cmp > 0) return true;
  if (cmp < 0) return false;
  return sticky || quotient.is_odd();
}

}  // namespace

int checked_precision(int precision) {
  if (precision < BigFloat::kMinPrecision || precision > BigFloat::kMaxPrecision)
    throw DomainError("precision must lie in [" + std::to_string(BigFloat::kMinPrecision) +
                      ", " + std::to_string(BigFloat::kMaxPrecision) + "]");
  return precision;
}

BigFloat BigFloat::round_exact(int sign, BigUInt mantissa, std::int64_t exponent,
                               int precision, bool sticky) {
  check_working(precision);
  BigFloat out;
  out.precision_ = precision;
  if (mantissa.is_zero() || sign == 0) return out;

  const int digits = mantissa.digit_count();
  if (digits > precision) {
    const int drop = digits - precision;
    BigUInt rem = mantissa.split_pow10(drop);
    exponent += drop;
    if (round_up_after_split(mantissa, rem, drop, sticky)) {
      mantissa += BigUInt(1);
      if (mantissa.digit_count() > precision) {
        mantissa.split_pow10(1);
        exponent += 1;
      }
    }
  } else if (digits < precision) {
    mantissa.shift_pow10(precision - digits);
    exponent -= precision - digits;
  }
  out.sign_ = sign;
  out.mantissa_ = std::move(mantissa);
  out.exponent_ = exponent;
  return out;
}

BigFloat BigFloat::zero(int precision) {
  BigFloat out;
  out.precision_ = checked_precision(precision);
  return out;
}

BigFloat BigFloat::from_int(std::int64_t value, int precision) {
  checked_precision(precision);
  const int sign = value > 0 ? 1 : (value < 0 ? -1 : 0);
  const std::uint64_t mag = value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                                      : static_cast<std::uint64_t>(value);
  return round_exact(sign, BigUInt(mag), 0, precision);
}

BigFloat BigFloat::from_integer(const BigUInt& magnitude, int sign, int precision) {
  checked_precision(precision);
  return round_exact(magnitude.is_zero() ? 0 : sign, magnitude, 0, precision);
}

BigFloat BigFloat::from_rational(const BigUInt& num, const BigUInt& den, int precision,
                                 int sign) {
  checked_precision(precision);
  if (den.is_zero()) throw DomainError("division by zero");
  if (num.is_zero()) return zero(precision);
  const int shift = std::max(0, precision + 2 - num.digit_count() + den.digit_count());
  BigUInt scaled = num;
  scaled.shift_pow10(shift);
  auto [q, r] = BigUInt::divmod(scaled, den);
  return round_exact(sign, std::move(q), -shift, precision, !r.is_zero());
}

BigFloat BigFloat::from_double(double value, int precision) {
  if (!std::isfinite(value)) throw DomainError("non-finite double");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", value);
  return parse(buf, precision);
}

BigFloat BigFloat::parse(std::string_view text, int precision) {
  checked_precision(precision);
  const auto fail = [&]() -> DomainError {
    return DomainError("invalid number: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  std::string digits;
  std::int64_t frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw fail();
  std::int64_t exp10 = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    ++i;
    int exp_sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_sign = text[i] == '-' ? -1 : 1;
      ++i;
    }
    if (i >= text.size()) throw fail();
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c < '0' || c > '9') throw fail();
      if (exp10 > 1'000'000'000'000LL) throw DomainError("exponent out of range");
      exp10 = exp10 * 10 + (c - '0');
    }
    exp10 *= exp_sign;
  }
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return zero(precision);
  return round_exact(sign, BigUInt::from_decimal(std::string_view(digits).substr(first)),
                     exp10 - frac_digits, precision);
}

std::int64_t BigFloat::magnitude() const {
  if (is_zero()) return kZeroMagnitude;
  return exponent_ + mantissa_.digit_count() - 1;
}

BigFloat BigFloat::with_precision(int precision) const {
  check_working(precision);
  if (is_zero()) {
    BigFloat out;
    out.precision_ = precision;
    return out;
  }
  return round_exact(sign_, mantissa_, exponent_, precision);
}

BigFloat BigFloat::ulp() const {
  BigFloat out;
  out.precision_ = precision_;
  out.sign_ = 1;
  out.mantissa_ = BigUInt(1);
  out.exponent_ = is_zero() ? -precision_ : exponent_;
  return out.with_precision(precision_);
}

BigFloat BigFloat::abs() const {
  BigFloat out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigFloat BigFloat::scaled_pow10(std::int64_t k) const {
  BigFloat out = *this;
  if (!out.is_zero()) out.exponent_ += k;
  return out;
}

std::string BigFloat::to_string() const {
  if (is_zero()) return "0";
  std::string digits = mantissa_.to_decimal();
  const auto last = digits.find_last_not_of('0');
  digits.resize(last + 1);
  std::string out = sign_ < 0 ? "-" : "";
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  out += 'e';
  out += std::to_string(magnitude());
  return out;
}

std::string BigFloat::to_fixed(int decimals, Rounding rounding) const {
  if (decimals < 0) throw DomainError("negative decimal count");
  BigUInt scaled;
  if (!is_zero()) {
    scaled = mantissa_;
    const std::int64_t shift = exponent_ + decimals;
    if (shift >= 0) {
      scaled.shift_pow10(static_cast<int>(shift));
    } else {
      const std::int64_t drop64 = -shift;
      const int total = scaled.digit_count();
      if (drop64 > total + 1) {
        scaled = BigUInt{};
      } else {
        const int drop = static_cast<int>(drop64);
        BigUInt rem = scaled.split_pow10(drop);
        if (rounding == Rounding::kNearestEven &&
            round_up_after_split(scaled, rem, drop, false))
          scaled += BigUInt(1);
      }
    }
  }
  std::string digits = scaled.to_decimal();
  const auto need = static_cast<std::size_t>(decimals) + 1;
  if (digits.size() < need) digits.insert(0, need - digits.size(), '0');
  std::string out = (sign_ < 0 && !scaled.is_zero()) ? "-" : "";
  const std::size_t int_len = digits.size() - static_cast<std::size_t>(decimals);
  out.append(digits, 0, int_len);
  if (decimals > 0) {
    out += '.';
    out.append(digits, int_len, std::string::npos);
  }
  return out;
}

double BigFloat::to_double() const {
  if (is_zero()) return 0.0;
  const std::int64_t mag = magnitude();
  if (mag > 400) return sign_ * std::numeric_limits<double>::infinity();
  if (mag < -400) return sign_ * 0.0;
  return std::strtod(to_string().c_str(), nullptr);
}

BigFloat add_signed(const BigFloat& a, const BigFloat& b, int b_sign) {
  const int precision = std::max(a.precision_, b.precision_);
  if (b.is_zero() || b_sign == 0) return a.with_precision(precision);
  if (a.is_zero()) {
    BigFloat out = b.with_precision(precision);
    out.sign_ = b_sign;
    return out;
  }
  // An operand entirely below half an ulp of the other only affects rounding.
  const std::int64_t gap = a.magnitude() - b.magnitude();
  if (gap > precision + 2) return a.with_precision(precision);
  if (gap < -(precision + 2)) {
    BigFloat out = b.with_precision(precision);
    out.sign_ = b_sign;
    return out;
  }
  const std::int64_t base_exp = std::min(a.exponent_, b.exponent_);
  BigUInt ma = a.mantissa_;
  BigUInt mb = b.mantissa_;
  ma.shift_pow10(static_cast<int>(a.exponent_ - base_exp));
  mb.shift_pow10(static_cast<int>(b.exponent_ - base_exp));
  if (a.sign_ == b_sign) {
    ma += mb;
    return BigFloat::round_exact(a.sign_, std::move(ma), base_exp, precision);
  }
  const auto cmp = ma <=> mb;
  if (cmp == 0) return BigFloat{}.with_precision(precision);
  if (cmp > 0) {
    ma -= mb;
    return BigFloat::round_exact(a.sign_, std::move(ma), base_exp, precision);
  }
  mb -= ma;
  return BigFloat::round_exact(b_sign, std::move(mb), base_exp, precision);
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add_signed(a, b, b.sign_); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return add_signed(a, b, -b.sign_); }

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  const int precision = std::max(a.precision_, b.precision_);
  if (a.is_zero() || b.is_zero()) return BigFloat{}.with_precision(precision);
  return BigFloat::round_exact(a.sign_ * b.sign_, a.mantissa_ * b.mantissa_,
                               a.exponent_ + b.exponent_, precision);
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  const int precision = std::max(a.precision_, b.precision_);
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return BigFloat{}.with_precision(precision);
  const int shift = std::max(0, precision + 2 - a.mantissa_.digit_count() +
                                    b.mantissa_.digit_count());
  BigUInt num = a.mantissa_;
  num.shift_pow10(shift);
  auto [q, r] = BigUInt::divmod(num, b.mantissa_);
  return BigFloat::round_exact(a.sign_ * b.sign_, std::move(q),
                               a.exponent_ - b.exponent_ - shift, precision, !r.is_zero());
}

std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::strong_ordering::equal;
  std::strong_ordering mag_cmp = std::strong_ordering::equal;
  if (a.magnitude() != b.magnitude()) {
    mag_cmp = a.magnitude() <=> b.magnitude();
  } else {
    BigUInt ma = a.mantissa_;
    BigUInt mb = b.mantissa_;
    const int da = ma.digit_count();
    const int db = mb.digit_count();
    if (da < db) ma.shift_pow10(db - da);
    if (db < da) mb.shift_pow10(da - db);
    mag_cmp = ma <=> mb;
  }
  if (a.sign_ > 0) return mag_cmp;
  return 0 <=> mag_cmp;
}

BigFloat bf_arith(ArithOp op, const BigFloat& a, const BigFloat& b) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
    case ArithOp::kDiv: return a / b;
  }
  throw DomainError("unknown arithmetic op");
}

BigFloat powi(const BigFloat& base, std::int64_t k) {
  const int precision = base.precision();
  if (k < 0) {
    if (base.is_zero()) throw DomainError("zero to a negative power");
    const BigFloat one = BigFloat::from_int(1, BigFloat::kMinPrecision);
    const BigFloat pos = powi(base.with_precision(working(precision, 3)), -k);
    return (one.with_precision(pos.precision()) / pos).with_precision(precision);
  }
  const int w = working(precision, 5);
  BigFloat result = BigFloat::from_int(1, BigFloat::kMinPrecision).with_precision(w);
  BigFloat square = base.with_precision(w);
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if (e & 1u) result *= square;
    e >>= 1;
    if (e != 0) square *= square;
  }
  return result.with_precision(precision);
}

BigFloat sqrt(const BigFloat& x) {
  const int precision = x.precision();
  if (x.sign() < 0) throw DomainError("sqrt of a negative value");
  if (x.is_zero()) return x;
  const int w = working(precision, 5);
  const BigFloat a = x.with_precision(w);

  // Initial guess from the leading digits: a = m * 10^(2h).
  std::int64_t mag = a.magnitude();
  if (mag % 2 != 0) mag -= 1;
  const double lead = a.scaled_pow10(-mag).to_double();
  BigFloat guess = BigFloat::from_double(std::sqrt(lead), BigFloat::kMinPrecision)
                       .with_precision(w)
                       .scaled_pow10(mag / 2);
  const BigFloat half = BigFloat::parse("0.5", BigFloat::kMinPrecision).with_precision(w);
  for (int iter = 0; iter < 64; ++iter) {
    BigFloat next = (guess + a / guess) * half;
    const BigFloat delta = (next - guess).abs();
    guess = next;
    if (delta.is_zero() || delta.magnitude() < guess.magnitude() - w + 1)
      return guess.with_precision(precision);
  }
  throw ConvergenceError("sqrt: Newton iteration did not converge");
}

BigFloat exp(const BigFloat& x) {
  const int precision = x.precision();
  const BigFloat one = BigFloat::from_int(1, BigFloat::kMinPrecision);
  if (x.is_zero()) return one.with_precision(precision);
  const double approx = std::fabs(x.to_double());
  if (approx > 1e15) throw DomainError("exp argument too large");

  // exp(x) = exp(x / 2^k)^(2^k) with |x / 2^k| < 2^-10.
  const int k = approx < 1e-3 ? 0 : std::max(0, static_cast<int>(std::ceil(std::log2(approx))) + 10);
  const int w = working(precision, 10 + static_cast<int>(std::ceil(k * 0.30103)));
  const BigFloat r = x.with_precision(w) /
                     BigFloat::from_integer(BigUInt(1ULL << std::min(k, 62)), 1, BigFloat::kMinPrecision)
                         .with_precision(w);
  BigFloat sum = one.with_precision(w);
  BigFloat term = sum;
  for (int n = 1; n < 10'000; ++n) {
    term = term * r / BigFloat::from_int(n, BigFloat::kMinPrecision);
    if (term.is_zero() || term.magnitude() < -w - 2) break;
    sum += term;
  }
  for (int i = 0; i < k; ++i) sum *= sum;
  return sum.with_precision(precision);
}

BigFloat ln(const BigFloat& x) {
  const int precision = x.precision();
  if (x.sign() <= 0) throw DomainError("ln of a non-positive value");
  const int w = working(precision, 10);
  const BigFloat a = x.with_precision(w);
  const BigFloat one = BigFloat::from_int(1, BigFloat::kMinPrecision).with_precision(w);

  // Near 1: ln(a) = 2 atanh((a-1)/(a+1)), which keeps relative accuracy.
  const double da = a.to_double();
  if (std::fabs(da - 1.0) < 0.25) {
    const BigFloat u = (a - one) / (a + one);
    if (u.is_zero()) return BigFloat{}.with_precision(precision);
    const BigFloat u2 = u * u;
    BigFloat sum = u;
    BigFloat power = u;
    for (int n = 1; n < 10'000; ++n) {
      power *= u2;
      const BigFloat term = power / BigFloat::from_int(2 * n + 1, BigFloat::kMinPrecision);
      if (term.is_zero() || term.magnitude() < sum.magnitude() - w - 2) break;
      sum += term;
    }
    return (sum + sum).with_precision(precision);
  }

  // Halley iteration on exp(y) = a from a double-precision start.
  const std::int64_t mag = a.magnitude();
  const double lead = a.scaled_pow10(-mag).to_double();
  BigFloat y = BigFloat::from_double(std::log(lead) + static_cast<double>(mag) * std::log(10.0),
                                     BigFloat::kMinPrecision)
                   .with_precision(w);
  for (int iter = 0; iter < 50; ++iter) {
    const BigFloat ey = exp(y);
    const BigFloat diff = a - ey;
    if (diff.is_zero()) return y.with_precision(precision);
    const BigFloat step = (diff + diff) / (a + ey);
    y += step;
    if (step.magnitude() < y.magnitude() - w + 2) return y.with_precision(precision);
  }
  throw ConvergenceError("ln: Halley iteration did not converge");
}

BigFloat erf(const BigFloat& x) {
  const int precision = x.precision();
  if (x.is_zero()) return x;
  const double dx = x.to_double();
  if (std::fabs(dx) > 10.0)
    return BigFloat::from_int(dx > 0 ? 1 : -1, BigFloat::kMinPrecision).with_precision(precision);

  // The alternating terms peak near exp(x^2); carry enough digits to absorb
  // the cancellation.
  const int guard = 10 + static_cast<int>(std::ceil(dx * dx / std::log(10.0)));
  const int w = working(precision, guard);
  const BigFloat a = x.with_precision(w);
  const BigFloat neg_sq = -(a * a);
  BigFloat sum = a;
  BigFloat power = a;  // (-1)^n x^(2n+1) / n!
  for (int n = 1; n < 100'000; ++n) {
    power = power * neg_sq / BigFloat::from_int(n, BigFloat::kMinPrecision);
    const BigFloat term = power / BigFloat::from_int(2 * n + 1, BigFloat::kMinPrecision);
    if (term.is_zero() || (term.magnitude() < sum.magnitude() - w - 2 && n > dx * dx)) break;
    sum += term;
  }
  const BigFloat two = BigFloat::from_int(2, BigFloat::kMinPrecision).with_precision(w);
  return (two * sum / sqrt(constant(Constant::kPi, w))).with_precision(precision);
}

}  // namespace arlog
