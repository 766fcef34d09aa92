#include "arlog/biguint.hpp"

#include <algorithm>
#include <cmath>

#include "arlog/error.hpp"

namespace arlog {
namespace {

constexpr std::uint32_t kPow10[] = {1,         10,         100,
                                    1000,      10000,      100000,
                                    1000000,   10000000,   100000000};

}  // namespace

BigUInt::BigUInt(std::uint64_t value) {
  while (value != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
    value /= kBase;
  }
}

BigUInt BigUInt::from_decimal(std::string_view digits) {
  if (digits.empty()) throw DomainError("empty digit string");
  BigUInt out;
  auto end = static_cast<std::ptrdiff_t>(digits.size());
  while (end > 0) {
    const std::ptrdiff_t begin = std::max<std::ptrdiff_t>(0, end - kLimbDigits);
    std::uint32_t limb = 0;
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      const char c = digits[static_cast<std::size_t>(i)];
      if (c < '0' || c > '9') throw DomainError("invalid decimal digit");
      limb = limb * 10 + static_cast<std::uint32_t>(c - '0');
    }
    out.limbs_.push_back(limb);
    end = begin;
  }
  out.trim();
  return out;
}

BigUInt BigUInt::pow10(int k) {
  BigUInt one(1);
  return one.shift_pow10(k);
}

std::string BigUInt::to_decimal() const {
  if (limbs_.empty()) return "0";
  std::string out = std::to_string(limbs_.back());
  for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
    std::string chunk = std::to_string(*it);
    out.append(static_cast<std::size_t>(kLimbDigits) - chunk.size(), '0');
    out += chunk;
  }
  return out;
}

int BigUInt::digit_count() const {
  if (limbs_.empty()) return 0;
  int top = 0;
  for (std::uint32_t v = limbs_.back(); v != 0; v /= 10) ++top;
  return static_cast<int>(limbs_.size() - 1) * kLimbDigits + top;
}

std::strong_ordering operator<=>(const BigUInt& a, const BigUInt& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

BigUInt& BigUInt::operator+=(const BigUInt& rhs) {
  if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint32_t sum = limbs_[i] + carry;
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    carry = sum >= kBase ? 1u : 0u;
    limbs_[i] = sum - carry * kBase;
    if (carry == 0 && i >= rhs.limbs_.size()) break;
  }
  if (carry != 0) limbs_.push_back(carry);
  return *this;
}

BigUInt& BigUInt::operator-=(const BigUInt& rhs) {
  if (*this < rhs) throw DomainError("BigUInt subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
    if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
    borrow = diff < 0 ? 1 : 0;
    limbs_[i] = static_cast<std::uint32_t>(diff + borrow * kBase);
    if (borrow == 0 && i >= rhs.limbs_.size()) break;
  }
  trim();
  return *this;
}

BigUInt operator*(const BigUInt& a, const BigUInt& b) {
  BigUInt out;
  if (a.is_zero() || b.is_zero()) return out;
  std::vector<std::uint64_t> acc(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    const std::uint64_t ai = a.limbs_[i];
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      const std::uint64_t cur = acc[i + j] + ai * b.limbs_[j] + carry;
      acc[i + j] = cur % BigUInt::kBase;
      carry = cur / BigUInt::kBase;
    }
    std::size_t k = i + b.limbs_.size();
    while (carry != 0) {
      const std::uint64_t cur = acc[k] + carry;
      acc[k] = cur % BigUInt::kBase;
      carry = cur / BigUInt::kBase;
      ++k;
    }
  }
  out.limbs_.assign(acc.begin(), acc.end());
  out.trim();
  return out;
}

BigUInt& BigUInt::mul_small(std::uint32_t multiplier) {
  if (multiplier == 0) {
    limbs_.clear();
    return *this;
  }
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    const std::uint64_t cur = static_cast<std::uint64_t>(limb) * multiplier + carry;
    limb = static_cast<std::uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  while (carry != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
  return *this;
}

std::uint32_t BigUInt::div_small(std::uint32_t divisor) {
  if (divisor == 0) throw DomainError("division by zero");
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const std::uint64_t cur = rem * kBase + limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

BigUInt& BigUInt::shift_pow10(int k) {
  if (k <= 0 || is_zero()) return *this;
  mul_small(kPow10[k % kLimbDigits]);
  limbs_.insert(limbs_.begin(), static_cast<std::size_t>(k / kLimbDigits), 0u);
  return *this;
}

BigUInt BigUInt::split_pow10(int k) {
  BigUInt rem;
  if (k <= 0) return rem;
  const auto whole = static_cast<std::size_t>(k / kLimbDigits);
  if (whole >= limbs_.size()) {
    rem = std::move(*this);
    limbs_.clear();
    return rem;
  }
  rem.limbs_.assign(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(whole));
  limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(whole));
  const int part = k % kLimbDigits;
  if (part != 0) {
    const std::uint32_t r = div_small(kPow10[part]);
    rem.limbs_.push_back(r);
  }
  rem.trim();
  return rem;
}

std::pair<BigUInt, BigUInt> BigUInt::divmod(const BigUInt& numerator,
                                            const BigUInt& divisor) {
  if (divisor.is_zero()) throw DomainError("division by zero");
  if (numerator < divisor) return {BigUInt{}, numerator};
  if (divisor.limbs_.size() == 1) {
    BigUInt q = numerator;
    const std::uint32_t r = q.div_small(divisor.limbs_[0]);
    return {std::move(q), BigUInt(r)};
  }

  // Knuth, TAOCP vol. 2, Algorithm D.
  const std::size_t n = divisor.limbs_.size();
  const std::size_t m = numerator.limbs_.size() - n;
  const auto norm = static_cast<std::uint32_t>(kBase / (static_cast<std::uint64_t>(divisor.limbs_.back()) + 1));
  BigUInt u = numerator;
  BigUInt v = divisor;
  u.mul_small(norm);
  v.mul_small(norm);
  u.limbs_.resize(numerator.limbs_.size() + 1, 0);

  BigUInt q;
  q.limbs_.assign(m + 1, 0);
  const std::uint64_t vtop = v.limbs_[n - 1];
  const std::uint64_t vnext = v.limbs_[n - 2];
  for (std::size_t j = m + 1; j-- > 0;) {
    const std::uint64_t num = static_cast<std::uint64_t>(u.limbs_[j + n]) * kBase + u.limbs_[j + n - 1];
    std::uint64_t qhat = num / vtop;
    std::uint64_t rhat = num % vtop;
    while (qhat >= kBase || qhat * vnext > rhat * kBase + u.limbs_[j + n - 2]) {
      --qhat;
      rhat += vtop;
      if (rhat >= kBase) break;
    }

    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t prod = qhat * v.limbs_[i] + carry;
      carry = prod / kBase;
      std::int64_t diff = static_cast<std::int64_t>(u.limbs_[i + j]) -
                          static_cast<std::int64_t>(prod % kBase) - borrow;
      borrow = diff < 0 ? 1 : 0;
      u.limbs_[i + j] = static_cast<std::uint32_t>(diff + borrow * kBase);
    }
    std::int64_t top = static_cast<std::int64_t>(u.limbs_[j + n]) -
                       static_cast<std::int64_t>(carry) - borrow;
    if (top < 0) {
      --qhat;
      std::uint32_t add_carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t sum = u.limbs_[i + j] + v.limbs_[i] + add_carry;
        add_carry = sum >= kBase ? 1u : 0u;
        u.limbs_[i + j] = sum - add_carry * kBase;
      }
      top += add_carry;
      top += kBase;  // the borrow out of the top limb cancels
      top %= kBase;
    }
    u.limbs_[j + n] = static_cast<std::uint32_t>(top);
    q.limbs_[j] = static_cast<std::uint32_t>(qhat);
  }
  q.trim();
  u.limbs_.resize(n);
  u.trim();
  u.div_small(norm);
  return {std::move(q), std::move(u)};
}

double BigUInt::to_double() const {
  double out = 0.0;
  for (std::size_t i = limbs_.size(); i-- > 0;) out = out * kBase + limbs_[i];
  return out;
}

void BigUInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

}  // namespace arlog
