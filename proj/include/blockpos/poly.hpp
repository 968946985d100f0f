#pragma once

/// Univariate polynomials over the rationals and the Sturm machinery built on
/// them: remainder chains, real root counting, root isolation and exact
/// nonnegativity on the line or on a closed interval.

#include "blockpos/rational.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blockpos {

class UniPoly {
public:
  UniPoly() = default;
  /// Coefficients in ascending powers; trailing zeros are trimmed.
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(Rational v) { return UniPoly(std::vector<Rational>{std::move(v)}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  /// x - r
  static UniPoly linear_root(const Rational& r) { return UniPoly({-r, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  int sign_at(const Rational& x) const { return (*this)(x).sign(); }
  int sign_at_pos_inf() const { return leading().sign(); }
  int sign_at_neg_inf() const {
    const int s = leading().sign();
    return (degree() % 2 == 0) ? s : -s;
  }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
    return UniPoly(std::move(d));
  }

  /// Scaled to leading coefficient 1 (zero stays zero).
  UniPoly monic() const {
    if (is_zero()) return *this;
    UniPoly out = *this;
    const Rational lc = leading();
    for (auto& v : out.c_) v /= lc;
    return out;
  }

  /// p(x + t)
  UniPoly shifted(const Rational& t) const {
    UniPoly out;
    UniPoly shift({t, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * shift + constant(*it);
    return out;
  }

  UniPoly operator-() const {
    UniPoly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& p) { return constant(s) * p; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      const Rational& v = p.c_[static_cast<std::size_t>(k)];
      if (v.is_zero()) continue;
      if (!first) os << (v.sign() < 0 ? " - " : " + ");
      else if (v.sign() < 0) os << "-";
      const Rational a = abs(v);
      if (k == 0 || a != Rational(1)) os << a;
      if (k >= 1) os << "x";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Euclidean division over the rationals: a = q*b + r, deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  const Rational lb = b.leading();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / lb;
    q[static_cast<std::size_t>(k - db)] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

inline UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Exact quotient; throws if b does not divide a.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// f0 = f, f1 = f', f_{n+1} = rem(f_{n-1}, f_n), stopping before the first zero
/// remainder. Signs are left as produced; sign_changes_at applies the
/// (+,+,-,-,...) pattern.
inline std::vector<UniPoly> sturm_sequence(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("sturm_sequence: zero polynomial");
  std::vector<UniPoly> seq{f};
  UniPoly d = f.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (seq.back().degree() > 0) {
    UniPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace detail {

// +1 for indices 0,1 mod 4, -1 for 2,3 mod 4
inline int sturm_pattern(std::size_t n) { return (n % 4 < 2) ? 1 : -1; }

inline int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace detail

/// Endpoint for root counting: nullopt means -inf (as lower) or +inf (as upper).
using Bound = std::optional<Rational>;

/// N(r): sign changes of the patterned chain at r. An empty point means
/// +inf when at_pos_inf is true, -inf otherwise.
inline int sign_changes_at(const std::vector<UniPoly>& seq, const Bound& r, bool at_pos_inf) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    int v = r ? seq[n].sign_at(*r) : (at_pos_inf ? seq[n].sign_at_pos_inf() : seq[n].sign_at_neg_inf());
    s.push_back(v * detail::sturm_pattern(n));
  }
  return detail::count_sign_changes(s);
}

inline bool is_squarefree(const UniPoly& f) {
  return f.degree() <= 0 || gcd(f, f.derivative()).degree() == 0;
}

/// Number of distinct real roots of a squarefree f in the open interval (lo, hi).
inline int count_real_roots_in(const UniPoly& f, const Bound& lo = std::nullopt, const Bound& hi = std::nullopt) {
  if (f.is_zero()) throw std::invalid_argument("count_real_roots_in: zero polynomial");
  if (!is_squarefree(f)) throw std::invalid_argument("count_real_roots_in: polynomial is not squarefree");
  if (lo && f.sign_at(*lo) == 0) throw std::invalid_argument("count_real_roots_in: lower endpoint is a root");
  if (hi && f.sign_at(*hi) == 0) throw std::invalid_argument("count_real_roots_in: upper endpoint is a root");
  if (lo && hi && !(*lo < *hi)) return 0;
  const auto seq = sturm_sequence(f);
  return sign_changes_at(seq, lo, false) - sign_changes_at(seq, hi, true);
}

/// f / gcd(f, f'), leading sign preserved.
inline UniPoly squarefree_part(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
  if (f.degree() == 0) return f;
  UniPoly s = exact_div(f, gcd(f, f.derivative()));
  if (s.leading().sign() != f.leading().sign()) s = -s;
  return s;
}

/// Yun's algorithm: f = lc * prod_k factors[k]^(k+1), each factor squarefree,
/// monic and pairwise coprime. Trailing unit factors are dropped.
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  std::vector<UniPoly> out;
  if (f.degree() == 0) return out;
  UniPoly fm = f.monic();
  UniPoly a = gcd(fm, fm.derivative());
  UniPoly b = exact_div(fm, a);
  UniPoly c = exact_div(fm.derivative(), a);
  UniPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly g = gcd(b, d);
    out.push_back(g);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Strict bound: every root r of f satisfies |r| < cauchy_bound(f).
inline Rational cauchy_bound(const UniPoly& f) {
  Rational m(0);
  const Rational lc = abs(f.leading());
  for (int k = 0; k < f.degree(); ++k) m = std::max(m, abs(f.coeff(k)) / lc);
  return Rational(1) + m;
}

struct RootInterval {
  Rational lo;
  Rational hi;
  int multiplicity = 1;
};

struct RootIsolation {
  /// Sorted, disjoint open intervals, each holding exactly one distinct root;
  /// endpoints are never roots.
  std::vector<RootInterval> intervals;

  int distinct() const { return static_cast<int>(intervals.size()); }
  int with_multiplicity() const {
    int n = 0;
    for (const auto& iv : intervals) n += iv.multiplicity;
    return n;
  }
};

namespace detail {

// A non-root point strictly inside (lo, hi), preferring the midpoint.
inline Rational split_point(const UniPoly& f, const Rational& lo, const Rational& hi) {
  Rational t = (lo + hi) / Rational(2);
  for (long k = 3; f.sign_at(t) == 0; ++k) t = lo + (hi - lo) / Rational(k);
  return t;
}

inline void bisect_roots(const UniPoly& f, const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi,
                         int count, std::vector<RootInterval>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({lo, hi, 1});
    return;
  }
  Rational mid = split_point(f, lo, hi);
  const int nl = sign_changes_at(seq, lo, false) - sign_changes_at(seq, mid, false);
  bisect_roots(f, seq, lo, mid, nl, out);
  bisect_roots(f, seq, mid, hi, count - nl, out);
}

}  // namespace detail

/// Isolating intervals for all distinct real roots, with multiplicities.
inline RootIsolation isolate_real_roots(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  RootIsolation iso;
  if (f.degree() <= 0) return iso;
  const UniPoly s = squarefree_part(f);
  const auto seq = sturm_sequence(s);
  const Rational bound = cauchy_bound(s);
  const int total = sign_changes_at(seq, -bound, false) - sign_changes_at(seq, bound, false);
  detail::bisect_roots(s, seq, -bound, bound, total, iso.intervals);

  const auto factors = squarefree_decomposition(f);
  for (auto& iv : iso.intervals) {
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (factors[k].degree() <= 0) continue;
      if (count_real_roots_in(factors[k], iv.lo, iv.hi) > 0) {
        iv.multiplicity = static_cast<int>(k + 1);
        break;
      }
    }
  }
  return iso;
}

/// Shrinks an isolating interval of squarefree s to width <= max_width.
inline RootInterval refine_root(const UniPoly& s, RootInterval iv, const Rational& max_width) {
  const auto seq = sturm_sequence(s);
  while (iv.hi - iv.lo > max_width) {
    Rational mid = detail::split_point(s, iv.lo, iv.hi);
    if (sign_changes_at(seq, iv.lo, false) - sign_changes_at(seq, mid, false) == 1) iv.hi = mid;
    else iv.lo = mid;
  }
  return iv;
}

/// One rational point in every maximal root-free open segment of the line,
/// in increasing order (also returns a point for root-free polynomials).
inline std::vector<Rational> sample_between_roots(const UniPoly& f) {
  std::vector<Rational> pts;
  if (f.is_zero() || f.degree() <= 0) {
    pts.emplace_back(0);
    return pts;
  }
  const auto iso = isolate_real_roots(f);
  if (iso.intervals.empty()) {
    pts.emplace_back(0);
    return pts;
  }
  pts.push_back(iso.intervals.front().lo - Rational(1));
  for (std::size_t k = 0; k + 1 < iso.intervals.size(); ++k) pts.push_back(iso.intervals[k].hi);
  pts.push_back(iso.intervals.back().hi + Rational(1));
  return pts;
}

/// True iff f(x) >= 0 for every real x.
inline bool poly_nonneg_on_reals(const UniPoly& f) {
  if (f.is_zero()) return true;
  if (f.degree() == 0) return f.leading().sign() > 0;
  if (f.degree() % 2 != 0 || f.leading().sign() < 0) return false;
  const auto factors = squarefree_decomposition(f);
  for (std::size_t k = 0; k < factors.size(); k += 2)  // odd multiplicities
    if (factors[k].degree() > 0 && count_real_roots_in(factors[k]) > 0) return false;
  return true;
}

/// True iff f(x) >= 0 on the closed interval [lo, hi].
inline bool poly_nonneg_on_interval(const UniPoly& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("poly_nonneg_on_interval: need lo < hi");
  if (f.is_zero()) return true;
  if (f.sign_at(lo) < 0 || f.sign_at(hi) < 0) return false;
  if (f.degree() == 0) return true;
  const auto factors = squarefree_decomposition(f);
  for (std::size_t k = 0; k < factors.size(); k += 2) {
    UniPoly g = factors[k];
    if (g.degree() <= 0) continue;
    // strip endpoint roots so the open-interval count is well defined
    if (g.sign_at(lo) == 0) g = exact_div(g, UniPoly::linear_root(lo));
    if (g.degree() > 0 && g.sign_at(hi) == 0) g = exact_div(g, UniPoly::linear_root(hi));
    if (g.degree() > 0 && count_real_roots_in(g, lo, hi) > 0) return false;
  }
  // no sign change inside: one interior non-root point fixes the sign
  return f.sign_at(detail::split_point(f, lo, hi)) > 0;
}

}  // namespace blockpos
