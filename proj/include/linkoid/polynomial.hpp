#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linkoid/rational.hpp"

namespace linkoid {

// Laurent polynomial in one variable over Q.  Keys are exponents, values are
// nonzero coefficients.  The variable letter only matters for printing.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(0, Rational(1)); }
  static LaurentPoly monomial(int exp, Rational c = Rational(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coeff(int exp) const;
  void set(int exp, Rational c);
  void add_term(int exp, Rational c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rational& c) const;

  // Integer power.  Negative powers are defined for monomials only.
  LaurentPoly pow(int k) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Canonical form: exponents descending, "p/q" coefficients, e.g.
  // "A^2 + 1 - A^-4" or "t^2 - 2 + t^-2".
  std::string str(char var = 'A') const;

 private:
  std::map<int, Rational> terms_;
};

// d = -A^2 - A^-2, the loop value of the bracket.
LaurentPoly bracket_loop_value();

// (-A^3)^(-w), the writhe normalization factor.
LaurentPoly writhe_normalization(int writhe);

// Monomial A^a * prod K_i^{m_i}.  K exponents are kept sorted by index and
// never zero.
struct ArrowMono {
  int a = 0;
  std::vector<std::pair<int, int>> ks;  // (index, power), index >= 1, power >= 1

  friend bool operator==(const ArrowMono& x, const ArrowMono& y) {
    return x.a == y.a && x.ks == y.ks;
  }
  // Canonical term order: A-exponent descending, then K-vector ascending.
  friend bool operator<(const ArrowMono& x, const ArrowMono& y) {
    if (x.a != y.a) return x.a > y.a;
    return x.ks < y.ks;
  }
};

// Polynomial in A, A^-1 and the loop variables K_1, K_2, ... over Q.
class ArrowPoly {
 public:
  ArrowPoly() = default;

  static ArrowPoly zero() { return {}; }
  static ArrowPoly one();
  static ArrowPoly from_laurent(const LaurentPoly& p);
  static ArrowPoly k_variable(int index);

  bool is_zero() const { return terms_.empty(); }
  const std::map<ArrowMono, Rational>& terms() const { return terms_; }
  void add_term(const ArrowMono& m, Rational c);

  ArrowPoly& operator+=(const ArrowPoly& o);
  friend ArrowPoly operator+(ArrowPoly a, const ArrowPoly& b) { return a += b; }
  friend ArrowPoly operator*(const ArrowPoly& a, const ArrowPoly& b);
  ArrowPoly scaled(const Rational& c) const;
  ArrowPoly scaled_by_monomial(int a_exp) const;

  // Substitute K_i -> 1 for all i; collapses to a Laurent polynomial in A.
  LaurentPoly substitute_k_one() const;

  friend bool operator==(const ArrowPoly& a, const ArrowPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ArrowPoly& a, const ArrowPoly& b) { return !(a == b); }

  // e.g. "A^4 + 1 + A^-4 - A^4*K1^2 + 2*K2"
  std::string str() const;

 private:
  std::map<ArrowMono, Rational> terms_;
};

// Polynomial in t with integer coefficients; value at t = 1 is always 0 for
// affine index outputs.
class AffinePoly {
 public:
  AffinePoly() = default;

  void add_term(int exp, std::int64_t c);
  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t value_at_one() const;

  friend bool operator==(const AffinePoly& a, const AffinePoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const AffinePoly& a, const AffinePoly& b) { return !(a == b); }

  std::string str() const;

 private:
  std::map<int, std::int64_t> terms_;
};

// Monte Carlo estimate of a polynomial-valued quantity: per-monomial mean and
// standard error, keyed by the monomial's canonical string ("1" for the
// constant term, "value" for scalar quantities).
struct RealSeries {
  std::map<std::string, double> mean;
  std::map<std::string, double> sem;

  friend bool operator==(const RealSeries& a, const RealSeries& b) {
    return a.mean == b.mean && a.sem == b.sem;
  }
};

// Exact coefficient-wise mean.  Throws EmptyList on empty input.
LaurentPoly mean(const std::vector<LaurentPoly>& xs);
ArrowPoly mean(const std::vector<ArrowPoly>& xs);
Rational mean(const std::vector<Rational>& xs);

// Canonical monomial key strings used by RealSeries.
std::string monomial_key(int a_exp);
std::string monomial_key(const ArrowMono& m);

}  // namespace linkoid
