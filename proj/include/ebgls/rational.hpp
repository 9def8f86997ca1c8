#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ebgls {

/// Exact rational arithmetic on 64-bit integers. Penalty weights and
/// utilities are rational by construction; keeping them exact makes move
/// acceptance and argmax selection reproducible across platforms.
/// Intermediate products go through 128-bit integers.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;

  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  static Rational integer(std::int64_t v) { return Rational(v, 1); }

  /// Parses a plain decimal literal such as "0.3", "2", or "-1.25".
  static Rational from_decimal(std::string_view text);

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_zero() const { return num == 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator*(std::int64_t k) const {
    return Rational(num * k, den);
  }

  Rational operator*(const Rational& o) const {
    // Cross-reduce before multiplying to keep components small.
    const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
    const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
  }

  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }

  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }

  friend int compare(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  bool operator==(const Rational& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Rational& o) const { return compare(*this, o) != 0; }
  bool operator<(const Rational& o) const { return compare(*this, o) < 0; }
  bool operator<=(const Rational& o) const { return compare(*this, o) <= 0; }
  bool operator>(const Rational& o) const { return compare(*this, o) > 0; }
  bool operator>=(const Rational& o) const { return compare(*this, o) >= 0; }
};

inline Rational Rational::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty literal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_digit = false;
  bool after_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (after_point) throw std::invalid_argument("Rational: bad literal");
      after_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad literal");
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (after_point) den *= 10;
  }
  if (!seen_digit) throw std::invalid_argument("Rational: bad literal");
  return Rational(negative ? -num : num, den);
}

}  // namespace ebgls
