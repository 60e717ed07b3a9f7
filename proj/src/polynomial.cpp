#include "linkoid/polynomial.hpp"

#include "linkoid/errors.hpp"

namespace linkoid {

LaurentPoly LaurentPoly::monomial(int exp, Rational c) {
  LaurentPoly p;
  if (!c.is_zero()) p.terms_[exp] = c;
  return p;
}

Rational LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set(int exp, Rational c) {
  if (c.is_zero())
    terms_.erase(exp);
  else
    terms_[exp] = c;
}

void LaurentPoly::add_term(int exp, Rational c) {
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[exp] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k == 0) return one();
  if (k < 0) {
    if (terms_.size() != 1) throw Error("negative power of a non-monomial");
    auto [e, c] = *terms_.begin();
    LaurentPoly inv = monomial(-e, Rational(1) / c);
    return inv.pow(-k);
  }
  LaurentPoly r = one();
  LaurentPoly base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

namespace {

// Shared term formatting: sign handling, coefficient elision for +-1.
void append_term(std::string& out, const Rational& c, const std::string& body) {
  bool neg = c.num < 0;
  Rational mag = neg ? -c : c;
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  bool unit = (mag.num == 1 && mag.den == 1);
  if (body.empty()) {
    out += mag.str();
  } else if (unit) {
    out += body;
  } else {
    out += mag.str() + "*" + body;
  }
}

std::string var_power(char var, int exp) {
  if (exp == 0) return "";
  std::string s(1, var);
  if (exp != 1) s += "^" + std::to_string(exp);
  return s;
}

}  // namespace

std::string LaurentPoly::str(char var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    append_term(out, it->second, var_power(var, it->first));
  return out;
}

LaurentPoly bracket_loop_value() {
  LaurentPoly d;
  d.set(2, Rational(-1));
  d.set(-2, Rational(-1));
  return d;
}

LaurentPoly writhe_normalization(int writhe) {
  // (-A^3)^(-w) = (-1)^w A^(-3w)
  return LaurentPoly::monomial(-3 * writhe, Rational(writhe % 2 ? -1 : 1));
}

ArrowPoly ArrowPoly::one() { return from_laurent(LaurentPoly::one()); }

ArrowPoly ArrowPoly::from_laurent(const LaurentPoly& p) {
  ArrowPoly r;
  for (const auto& [e, c] : p.terms()) r.terms_[ArrowMono{e, {}}] = c;
  return r;
}

ArrowPoly ArrowPoly::k_variable(int index) {
  ArrowPoly r;
  r.terms_[ArrowMono{0, {{index, 1}}}] = Rational(1);
  return r;
}

void ArrowPoly::add_term(const ArrowMono& m, Rational c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[m] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ArrowPoly& ArrowPoly::operator+=(const ArrowPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ArrowPoly operator*(const ArrowPoly& a, const ArrowPoly& b) {
  ArrowPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ArrowMono m;
      m.a = ma.a + mb.a;
      // merge sorted K exponent lists
      auto ia = ma.ks.begin();
      auto ib = mb.ks.begin();
      while (ia != ma.ks.end() || ib != mb.ks.end()) {
        if (ib == mb.ks.end() || (ia != ma.ks.end() && ia->first < ib->first)) {
          m.ks.push_back(*ia++);
        } else if (ia == ma.ks.end() || ib->first < ia->first) {
          m.ks.push_back(*ib++);
        } else {
          m.ks.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

ArrowPoly ArrowPoly::scaled(const Rational& c) const {
  ArrowPoly r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

ArrowPoly ArrowPoly::scaled_by_monomial(int a_exp) const {
  ArrowPoly r;
  for (const auto& [m, k] : terms_) {
    ArrowMono m2 = m;
    m2.a += a_exp;
    r.terms_[m2] = k;
  }
  return r;
}

LaurentPoly ArrowPoly::substitute_k_one() const {
  LaurentPoly r;
  for (const auto& [m, c] : terms_) r.add_term(m.a, c);
  return r;
}

std::string ArrowPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string body = var_power('A', m.a);
    for (const auto& [idx, pw] : m.ks) {
      if (!body.empty()) body += "*";
      body += "K" + std::to_string(idx);
      if (pw != 1) body += "^" + std::to_string(pw);
    }
    append_term(out, c, body);
  }
  return out;
}

void AffinePoly::add_term(int exp, std::int64_t c) {
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    if (c != 0) terms_[exp] = c;
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

std::int64_t AffinePoly::value_at_one() const {
  std::int64_t s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::string AffinePoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    append_term(out, Rational(it->second), var_power('t', it->first));
  return out;
}

LaurentPoly mean(const std::vector<LaurentPoly>& xs) {
  if (xs.empty()) throw EmptyList("mean of empty list");
  LaurentPoly sum;
  for (const auto& x : xs) sum += x;
  return sum.scaled(Rational(1, (std::int64_t)xs.size()));
}

ArrowPoly mean(const std::vector<ArrowPoly>& xs) {
  if (xs.empty()) throw EmptyList("mean of empty list");
  ArrowPoly sum;
  for (const auto& x : xs) sum += x;
  return sum.scaled(Rational(1, (std::int64_t)xs.size()));
}

Rational mean(const std::vector<Rational>& xs) {
  if (xs.empty()) throw EmptyList("mean of empty list");
  Rational sum(0);
  for (const auto& x : xs) sum += x;
  return sum / Rational((std::int64_t)xs.size());
}

std::string monomial_key(int a_exp) {
  if (a_exp == 0) return "1";
  return var_power('A', a_exp);
}

std::string monomial_key(const ArrowMono& m) {
  std::string body = var_power('A', m.a);
  for (const auto& [idx, pw] : m.ks) {
    if (!body.empty()) body += "*";
    body += "K" + std::to_string(idx);
    if (pw != 1) body += "^" + std::to_string(pw);
  }
  return body.empty() ? "1" : body;
}

}  // namespace linkoid
