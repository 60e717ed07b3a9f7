#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "linkoid/errors.hpp"

namespace linkoid {

// Exact rational with int64 numerator/denominator, always normalized so that
// den > 0 and gcd(num, den) == 1.  Intermediate products go through __int128;
// state-sum coefficients stay far below the overflow range.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return reduce(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.num;
    __int128 d = (__int128)a.den * b.den;
    return reduce(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw Error("rational division by zero");
    __int128 n = (__int128)a.num * b.den;
    __int128 d = (__int128)a.den * b.num;
    return reduce(n, d);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }

  double to_double() const { return double(num) / double(den); }

  // "p" for integers, "p/q" otherwise.
  std::string str() const {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
  }

 private:
  static Rational reduce(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = (std::int64_t)n;
    r.den = (std::int64_t)d;
    if ((__int128)r.num != n || (__int128)r.den != d) throw Error("rational overflow");
    return r;
  }
};

}  // namespace linkoid
