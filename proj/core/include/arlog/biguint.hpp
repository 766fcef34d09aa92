#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arlog {

// Unsigned arbitrary-size integer stored as little-endian base-10^9 limbs.
// Decimal limbs keep power-of-ten shifts cheap, which is all BigFloat needs.
class BigUInt {
 public:
  static constexpr std::uint32_t kBase = 1'000'000'000u;
  static constexpr int kLimbDigits = 9;

  BigUInt() = default;
  explicit BigUInt(std::uint64_t value);

  // Parses a non-empty string of decimal digits (leading zeros allowed).
  static BigUInt from_decimal(std::string_view digits);
  static BigUInt pow10(int k);

  std::string to_decimal() const;

  bool is_zero() const { return limbs_.empty(); }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u) != 0; }
  // Number of decimal digits; 0 for zero.
  int digit_count() const;
  std::size_t limb_count() const { return limbs_.size(); }

  friend std::strong_ordering operator<=>(const BigUInt& a, const BigUInt& b);
  friend bool operator==(const BigUInt& a, const BigUInt& b) = default;

  BigUInt& operator+=(const BigUInt& rhs);
  // Requires *this >= rhs.
  BigUInt& operator-=(const BigUInt& rhs);
  friend BigUInt operator+(BigUInt a, const BigUInt& b) { return a += b; }
  friend BigUInt operator-(BigUInt a, const BigUInt& b) { return a -= b; }
  friend BigUInt operator*(const BigUInt& a, const BigUInt& b);

  // multiplier must be < kBase
  BigUInt& mul_small(std::uint32_t multiplier);
  // Divides in place by a nonzero divisor < kBase, returning the remainder.
  std::uint32_t div_small(std::uint32_t divisor);

  // Multiplies by 10^k (k >= 0).
  BigUInt& shift_pow10(int k);
  // Divides by 10^k in place (k >= 0) and returns the remainder.
  BigUInt split_pow10(int k);

  // Quotient and remainder; throws DomainError on a zero divisor.
  static std::pair<BigUInt, BigUInt> divmod(const BigUInt& numerator,
                                            const BigUInt& divisor);

  // Lossy conversion used for initial guesses.
  double to_double() const;

 private:
  std::vector<std::uint32_t> limbs_;
  void trim();
};

}  // namespace arlog
