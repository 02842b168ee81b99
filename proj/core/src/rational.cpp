#include "filterscope/rational.hpp"

#include <numeric>

#include "filterscope/error.hpp"

namespace filterscope {

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational operator*(const Rational& a, const Rational& b) {
  // cross-reduce before multiplying to keep magnitudes small
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  // denominators are positive, so cross multiplication preserves order
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  if (__builtin_mul_overflow(a.num_, b.den_, &lhs) || __builtin_mul_overflow(b.num_, a.den_, &rhs)) {
    const long double l = static_cast<long double>(a.num_) * static_cast<long double>(b.den_);
    const long double r = static_cast<long double>(b.num_) * static_cast<long double>(a.den_);
    return l < r ? std::strong_ordering::less : (r < l ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return lhs <=> rhs;
}

}  // namespace filterscope
