#pragma once

/// Exact scalars: GMP-backed rationals, complex rationals, and sign decisions
/// for sums of at most two square roots.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blockpos {

class Rational {
public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den = 1) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  /// Parses "p", "p/q" or a finite decimal such as "-0.125" or "1e-3".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  double to_double() const { return v_.get_d(); }

  /// Always "p/q", including q = 1.
  std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  /// "p" for integers, "p/q" otherwise.
  std::string short_str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& r, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= r;
  return out;
}

/// Nearest fraction k/den (ties away from zero) to a double.
inline Rational round_to_denominator(double x, long den) {
  mpq_class q(x);
  q *= den;
  mpz_class k;
  mpz_class twice = 2 * q.get_num() + (sgn(q) >= 0 ? q.get_den() : mpz_class(-q.get_den()));
  mpz_tdiv_q(k.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * q.get_den()).get_mpz_t());
  return Rational(k, mpz_class(den));
}

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw std::invalid_argument("Rational: empty string");
  s = s.substr(start);

  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string n = s.substr(0, slash);
    std::string d = s.substr(slash + 1);
    if (!is_int(n) || !is_int(d)) throw std::invalid_argument("Rational: malformed '" + s + "'");
    mpz_class den = to_mpz(d);
    if (den == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    return Rational(to_mpz(n), den);
  }
  if (is_int(s)) return Rational(to_mpz(s), 1);

  // decimal with optional exponent
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    std::string ex = s.substr(e + 1);
    if (!is_int(ex)) throw std::invalid_argument("Rational: malformed '" + s + "'");
    exp10 = std::stol(ex);
  }
  std::string digits = mant;
  long frac = 0;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    frac = static_cast<long>(mant.size() - dot - 1);
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
  }
  if (digits == "-" || digits == "+" || digits.empty() || !is_int(digits))
    throw std::invalid_argument("Rational: malformed '" + s + "'");
  long shift = exp10 - frac;
  mpz_class num = to_mpz(digits);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(num * p10, 1) : Rational(num, p10);
}

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(long r) : re(r) {}                 // NOLINT(google-explicit-constructor)
  ComplexRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_real() const { return im.is_zero(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ComplexRational conj() const { return {re, -im}; }

  ComplexRational operator-() const { return {-re, -im}; }
  ComplexRational& operator+=(const ComplexRational& o) { re += o.re; im += o.im; return *this; }
  ComplexRational& operator-=(const ComplexRational& o) { re -= o.re; im -= o.im; return *this; }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    Rational d = o.re * o.re + o.im * o.im;
    if (d.is_zero()) throw std::domain_error("ComplexRational: division by zero");
    ComplexRational n = *this * o.conj();
    re = n.re / d;
    im = n.im / d;
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
    if (z.im.is_zero()) return os << z.re;
    return os << "(" << z.re << (z.im.sign() < 0 ? "-" : "+") << abs(z.im) << "i)";
  }
};

inline Rational modulus_squared(const ComplexRational& z) { return z.re * z.re + z.im * z.im; }

/// base + sum of coefficient * sqrt(radicand), with at most two radical terms.
struct RadicalExpr {
  struct Term {
    Rational coefficient;
    Rational radicand;
  };
  Rational base;
  std::vector<Term> terms;

  RadicalExpr() = default;
  explicit RadicalExpr(Rational b, std::vector<Term> t = {}) : base(std::move(b)), terms(std::move(t)) {}
};

namespace detail {

// sign(b + c*sqrt(r)), r > 0
inline int sign_one_radical(const Rational& b, const Rational& c, const Rational& r) {
  const int sb = b.sign();
  const int sc = c.sign();
  if (sc == 0) return sb;
  if (sb == 0 || sb == sc) return sc;
  // opposite signs: compare b^2 with c^2 r
  const Rational diff = b * b - c * c * r;
  if (diff.sign() > 0) return sb;
  if (diff.sign() < 0) return sc;
  return 0;
}

}  // namespace detail

/// Exact sign of a RadicalExpr, decided by squaring with sign guards.
inline int sign_of_radical_expr(const RadicalExpr& e) {
  if (e.terms.size() > 2) throw std::invalid_argument("sign_of_radical_expr: more than two radical terms");
  std::vector<RadicalExpr::Term> live;
  for (const auto& t : e.terms) {
    if (t.radicand.sign() < 0) throw std::invalid_argument("sign_of_radical_expr: negative radicand");
    if (!t.coefficient.is_zero() && !t.radicand.is_zero()) live.push_back(t);
  }
  if (live.empty()) return e.base.sign();
  if (live.size() == 1) return detail::sign_one_radical(e.base, live[0].coefficient, live[0].radicand);

  // X = b + c1 sqrt(r1), Y = c2 sqrt(r2)
  const auto& [c1, r1] = live[0];
  const auto& [c2, r2] = live[1];
  const int sx = detail::sign_one_radical(e.base, c1, r1);
  const int sy = c2.sign();
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // sign(X^2 - Y^2) = sign(b^2 + c1^2 r1 - c2^2 r2 + 2 b c1 sqrt(r1))
  const int d = detail::sign_one_radical(e.base * e.base + c1 * c1 * r1 - c2 * c2 * r2,
                                         Rational(2) * e.base * c1, r1);
  if (d > 0) return sx;
  if (d < 0) return sy;
  return 0;
}

}  // namespace blockpos
