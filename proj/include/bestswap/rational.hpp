#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace bestswap {

using Int128 = __int128;

// Exact ratio of 64-bit integers with den >= 0. den == 0 encodes the
// +/- infinity sentinels used by the search procedures. All comparisons
// cross-multiply in 128 bits; no floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static constexpr Rational Infinity() { return {1, 0}; }
  static constexpr Rational NegInfinity() { return {-1, 0}; }

  constexpr bool IsInfinite() const { return den == 0; }
  constexpr bool IsPosInfinity() const { return den == 0 && num > 0; }
  constexpr bool IsNegInfinity() const { return den == 0 && num < 0; }

  void Reduce() {
    if (den == 0) {
      num = num > 0 ? 1 : -1;
      return;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rational Reduced() const {
    Rational r = *this;
    r.Reduce();
    return r;
  }

  std::string ToString() const {
    if (IsPosInfinity()) return "inf";
    if (IsNegInfinity()) return "-inf";
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// -1, 0, +1 for a < b, a == b, a > b.
inline int Compare(const Rational& a, const Rational& b) {
  if (a.IsInfinite() || b.IsInfinite()) {
    const int sa = a.IsInfinite() ? (a.num > 0 ? 2 : -2) : 0;
    const int sb = b.IsInfinite() ? (b.num > 0 ? 2 : -2) : 0;
    return sa < sb ? -1 : (sa > sb ? 1 : 0);
  }
  const Int128 lhs = Int128(a.num) * b.den;
  const Int128 rhs = Int128(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline bool operator==(const Rational& a, const Rational& b) { return Compare(a, b) == 0; }
inline bool operator!=(const Rational& a, const Rational& b) { return Compare(a, b) != 0; }
inline bool operator<(const Rational& a, const Rational& b) { return Compare(a, b) < 0; }
inline bool operator<=(const Rational& a, const Rational& b) { return Compare(a, b) <= 0; }
inline bool operator>(const Rational& a, const Rational& b) { return Compare(a, b) > 0; }
inline bool operator>=(const Rational& a, const Rational& b) { return Compare(a, b) >= 0; }

// Compares n1/d1 with n2/d2 without materializing Rational objects.
// Both denominators must be positive.
inline int CompareRatio(std::int64_t n1, std::int64_t d1, std::int64_t n2, std::int64_t d2) {
  const Int128 lhs = Int128(n1) * d2;
  const Int128 rhs = Int128(n2) * d1;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace bestswap
