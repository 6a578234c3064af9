#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oiglab/error.hpp"

namespace oiglab {

/// Exact reduced fraction over 64-bit integers.
///
/// Intermediate products are formed in 128 bits; a result that does not fit
/// back into 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type value) : num_(value), den_(1) {}  // NOLINT
  Rational(int_type num, int_type den) { assign(num, den); }

  [[nodiscard]] constexpr int_type num() const noexcept { return num_; }
  [[nodiscard]] constexpr int_type den() const noexcept { return den_; }

  [[nodiscard]] double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }

  [[nodiscard]] int_type floor() const noexcept {
    int_type q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  [[nodiscard]] int_type ceil() const noexcept {
    int_type q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  /// "p/q", or just "p" when the value is an integer.
  [[nodiscard]] std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p", "p/q", with optional leading minus sign.
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> int_type {
      if (s.empty()) throw DomainError("malformed rational '" + std::string(text) + "'");
      std::size_t pos = 0;
      bool neg = false;
      if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
      }
      if (pos == s.size()) throw DomainError("malformed rational '" + std::string(text) + "'");
      __int128 v = 0;
      for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9')
          throw DomainError("malformed rational '" + std::string(text) + "'");
        v = v * 10 + (s[pos] - '0');
        if (v > INT64_MAX) throw DomainError("rational out of range '" + std::string(text) + "'");
      }
      return static_cast<int_type>(neg ? -v : v);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    int_type d = parse_int(text.substr(slash + 1));
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), d);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    int_type g = std::gcd(a.den_, b.den_);
    __int128 den = static_cast<__int128>(a.den_ / g) * b.den_;
    __int128 num = static_cast<__int128>(a.num_) * (b.den_ / g) +
                   static_cast<__int128>(b.num_) * (a.den_ / g);
    return from_wide(num, den);
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    int_type g1 = std::gcd(a.num_, b.den_);
    int_type g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return from_wide(num, den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero rational");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(int_type num, int_type den) {
    if (den == 0) throw std::domain_error("zero denominator");
    from_wide_into(*this, num, den);
  }

  static Rational from_wide(__int128 num, __int128 den) {
    Rational r;
    from_wide_into(r, num, den);
    return r;
  }

  static void from_wide_into(Rational& r, __int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (num > INT64_MAX || num < -INT64_MAX || den > INT64_MAX)
      throw std::overflow_error("rational overflow");
    r.num_ = static_cast<int_type>(num);
    r.den_ = static_cast<int_type>(den);
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

inline Rational pow(Rational base, unsigned exponent) {
  Rational result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

/// The rational with the smallest denominator in the half-open interval
/// [lo, hi). Requires lo < hi.
///
/// Stern-Brocot descent on the continued-fraction expansions of the
/// endpoints, alternating between half-open and half-closed intervals as
/// the reciprocal flips the orientation.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  if (lo.is_integer()) return lo;
  Rational::int_type f = lo.floor();
  if (Rational(f + 1) < hi) return Rational(f + 1);
  // Both ends lie in (f, f+1]; recurse on reciprocals of fractional parts.
  // With x in [lo, hi) and x = f + 1/y, y ranges over (1/(hi-f), 1/(lo-f)].
  Rational lo_frac = lo - Rational(f);
  Rational hi_frac = hi - Rational(f);
  Rational y_hi = Rational(1) / lo_frac;  // inclusive
  Rational y_lo = Rational(1) / hi_frac;  // exclusive
  // Simplest y in (y_lo, y_hi].
  Rational::int_type g = y_lo.floor() + 1;
  Rational y;
  if (Rational(g) <= y_hi) {
    y = Rational(g);
  } else {
    // y_lo and y_hi share integer part g-1 and y_hi is not an integer.
    Rational::int_type base = g - 1;
    Rational a = y_lo - Rational(base);
    Rational b = y_hi - Rational(base);
    // Simplest z in (a, b] with 0 <= a < b < 1: z = 1/w, w in [1/b, 1/a).
    Rational w = a == Rational(0) ? Rational((Rational(1) / b).ceil())
                                  : simplest_between(Rational(1) / b, Rational(1) / a);
    y = Rational(base) + Rational(1) / w;
  }
  return Rational(f) + Rational(1) / y;
}

}  // namespace oiglab
