#pragma once

/// The parametric 2 (x) 2 families F(a,b,c), E(s,p,q,r) and F'(a,b,c):
/// closed-form block positivity (over C) and positivity conditions, and the
/// parameter-region scan.
///
/// Block positivity of F reduces to
///   1 - |alpha + gamma cos(phi)| - |b| sin(phi) >= 0 for all phi,
/// with alpha = a + c and gamma = a - c. Every verdict here is exact.

#include "blockpos/operator.hpp"
#include "blockpos/parallel.hpp"
#include "blockpos/poly.hpp"
#include "blockpos/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockpos {

struct FamilyParams {
  ComplexRational a, b, c;

  bool is_real() const { return a.is_real() && b.is_real() && c.is_real(); }
  ComplexRational alpha() const { return a + c; }
  ComplexRational gamma() const { return a - c; }
};

/// |alpha|^2, |gamma|^2, |b|^2 and Re(alpha conj(gamma)).
struct FamilyModuli {
  Rational alpha2, gamma2, b2, re_ag;

  explicit FamilyModuli(const FamilyParams& p)
      : alpha2(modulus_squared(p.alpha())),
        gamma2(modulus_squared(p.gamma())),
        b2(modulus_squared(p.b)),
        re_ag((p.alpha() * p.gamma().conj()).re) {}
};

/// Diagonal 1/2, a at (1,2), b at (2,3), c at (3,4), conjugates below.
inline BipartiteOperator family_f(const FamilyParams& p) {
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = Rational(1, 2);
  m(0, 1) = p.a;
  m(1, 0) = p.a.conj();
  m(1, 2) = p.b;
  m(2, 1) = p.b.conj();
  m(2, 3) = p.c;
  m(3, 2) = p.c.conj();
  return {2, 2, p.is_real() ? Field::Real : Field::Complex, std::move(m)};
}

/// Real symmetric, diagonal 1/2, s at (1,2), p at (2,3), q at (3,4), r at (1,4).
inline BipartiteOperator family_e(const Rational& s, const Rational& p, const Rational& q, const Rational& r) {
  RationalMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = Rational(1, 2);
  m(0, 1) = m(1, 0) = s;
  m(1, 2) = m(2, 1) = p;
  m(2, 3) = m(3, 2) = q;
  m(0, 3) = m(3, 0) = r;
  return BipartiteOperator::from_real(2, 2, m);
}

/// (F + F^tau)/2 for real a, b, c, i.e. E(a, b/2, c, b/2).
inline BipartiteOperator family_f_prime(const Rational& a, const Rational& b, const Rational& c) {
  return family_e(a, b / Rational(2), c, b / Rational(2));
}

inline bool family_case_a_applies(const FamilyParams& p) { return modulus_squared(p.a) == modulus_squared(p.c); }

/// a = r c with r real (c = 0 included).
inline bool family_case_b_applies(const FamilyParams& p) { return p.c.is_zero() || (p.a * p.c.conj()).im.is_zero(); }

namespace detail {

// x >= sqrt(r) or x <= sqrt(r) style comparisons
inline int sign_minus_sqrt(const Rational& x, const Rational& r) {
  return sign_of_radical_expr(RadicalExpr(x, {{Rational(-1), r}}));
}

}  // namespace detail

/// Case |a| = |c|: on lambda = sqrt(|alpha|^2 + |gamma|^2 cos^2) the condition
/// becomes (1 - lambda)^2 >= (|b|^2/|gamma|^2)(|alpha|^2 + |gamma|^2 - lambda^2)
/// for lambda in [|alpha|, sqrt(|alpha|^2 + |gamma|^2)], solved at the vertex
/// lambda* = |gamma|^2 / (|gamma|^2 + |b|^2).
inline bool bp_family_case_a(const FamilyParams& p) {
  if (!family_case_a_applies(p)) throw std::invalid_argument("bp_family_case_a: requires |a| = |c|");
  const FamilyModuli m(p);
  const Rational top2 = m.alpha2 + m.gamma2;
  if (top2 > Rational(1)) return false;
  // |alpha| + |b| <= 1
  if (sign_of_radical_expr(RadicalExpr(Rational(1), {{Rational(-1), m.alpha2}, {Rational(-1), m.b2}})) < 0)
    return false;
  if (m.gamma2.is_zero() || m.b2.is_zero()) return true;
  const Rational vertex = m.gamma2 / (m.gamma2 + m.b2);
  if (detail::sign_minus_sqrt(vertex, m.alpha2) <= 0) return true;  // vertex left of the range
  if (detail::sign_minus_sqrt(vertex, top2) >= 0) return true;      // vertex right of the range
  return top2 * (m.gamma2 + m.b2) <= m.gamma2;
}

/// Case a = r c: 1 - |alpha| - sqrt(|gamma|^2 + |b|^2) >= 0.
inline bool bp_family_case_b(const FamilyParams& p) {
  if (!family_case_b_applies(p)) throw std::invalid_argument("bp_family_case_b: requires a = r c with r real");
  const FamilyModuli m(p);
  return sign_of_radical_expr(
             RadicalExpr(Rational(1), {{Rational(-1), m.alpha2}, {Rational(-1), m.gamma2 + m.b2}})) >= 0;
}

/// Q(w) = 1 + |b|^2 - |alpha|^2 - 2 Re(alpha conj(gamma)) w - (|gamma|^2 + |b|^2) w^2
inline UniPoly family_q_poly(const FamilyModuli& m) {
  return UniPoly({Rational(1) + m.b2 - m.alpha2, Rational(-2) * m.re_ag, -(m.gamma2 + m.b2)});
}

/// H(w) = Q(w)^2 - 4 |b|^2 (1 - w^2)
inline UniPoly family_h_poly(const FamilyModuli& m) {
  const UniPoly q = family_q_poly(m);
  return q * q - UniPoly({Rational(4) * m.b2, Rational(0), Rational(-4) * m.b2});
}

/// General a, b, c. With w = cos(phi) the condition reads
/// |alpha + gamma w| <= 1 - |b| sqrt(1 - w^2) on [-1, 1], equivalent to
/// |b| <= 1, Q >= 0 and H >= 0 on [-1, 1].
inline bool bp_family_general(const FamilyParams& p) {
  const FamilyModuli m(p);
  if (m.b2 > Rational(1)) return false;
  const Rational lo(-1), hi(1);
  return poly_nonneg_on_interval(family_q_poly(m), lo, hi) && poly_nonneg_on_interval(family_h_poly(m), lo, hi);
}

/// A four-inequality test i)-iv) for the general case, kept for comparison.
/// It does not agree with the phi-minimization and no verdict depends on it.
struct FourInequalityTest {
  bool i = false, ii = false, iii = false, iv = false;
  bool all() const { return i && ii && iii && iv; }
};

inline UniPoly four_inequality_iv_poly(const FamilyModuli& m) {
  const Rational s = m.gamma2 + m.b2;
  const Rational r = m.re_ag;
  const Rational u = Rational(1) - m.alpha2 - m.b2;
  return UniPoly({u * u - Rational(4) * m.alpha2, Rational(-4) * (Rational(3) - m.alpha2 - m.b2) * r,
                  Rational(4) * r * r - Rational(2) * u * s - Rational(4) * m.gamma2, Rational(-4) * s * r, s * s});
}

inline FourInequalityTest four_inequality_test(const FamilyParams& p) {
  const FamilyModuli m(p);
  FourInequalityTest c;
  c.i = sign_of_radical_expr(RadicalExpr(Rational(1), {{Rational(-1), m.alpha2}, {Rational(-1), m.gamma2}})) >= 0;
  c.ii = m.gamma2 - m.b2 <= abs(m.re_ag);
  c.iii = abs(Rational(1) - m.alpha2 - m.gamma2) >= Rational(2) * abs(m.re_ag);
  c.iv = poly_nonneg_on_interval(four_inequality_iv_poly(m), Rational(-1), Rational(1));
  return c;
}

/// A shortcut formula for |a| = |c|, kept for comparison only.
inline bool case_a_shortcut(const FamilyParams& p) {
  const FamilyModuli m(p);
  const Rational top2 = m.alpha2 + m.gamma2;
  const bool c1 = top2 <= Rational(1);
  const bool c2 = sign_of_radical_expr(RadicalExpr(Rational(1) - m.b2, {{Rational(-1), m.alpha2}})) >= 0;
  const Rational two_b2 = Rational(2) * m.b2;
  const bool c3a = sign_of_radical_expr(RadicalExpr(m.gamma2, {{-two_b2, m.alpha2}})) >= 0;
  const bool c3b = sign_of_radical_expr(RadicalExpr(-m.gamma2, {{two_b2, top2}})) >= 0;
  return c1 && c2 && (c3a || c3b);
}

/// Positive semidefiniteness of F(a, b, c).
inline bool psd_family(const FamilyParams& p) {
  const Rational a2 = modulus_squared(p.a), b2 = modulus_squared(p.b), c2 = modulus_squared(p.c);
  const Rational first = Rational(1, 16) - (a2 + b2 + c2) / Rational(4) + a2 * c2;
  const Rational second = Rational(1, 2) - a2 - b2 - c2;
  return first.sign() >= 0 && second.sign() >= 0;
}

/// Block positivity of F over R for real parameters (equal to that over C).
inline bool bp_family_real(const FamilyParams& p) {
  if (!p.is_real()) throw std::invalid_argument("bp_family_real: parameters must be real");
  return bp_family_case_b(p);
}

struct ParamRange {
  Rational lo, hi;
};

struct GridSpec {
  ParamRange a{Rational(-1), Rational(1)};
  ParamRange b{Rational(-1), Rational(1)};
  ParamRange c{Rational(-1), Rational(1)};
  Rational step{1, 50};
};

struct RegionPoint {
  FamilyParams params;
  bool psd = false;
  bool block_positive = false;
};

namespace detail {

inline std::vector<Rational> range_points(const ParamRange& r, const Rational& step) {
  std::vector<Rational> pts;
  for (Rational v = r.lo; v <= r.hi; v += step) pts.push_back(v);
  return pts;
}

}  // namespace detail

/// Evaluates psd_family and bp_family_general on every grid point. Row order
/// is b outermost, then a, then c, independent of the thread count.
inline std::vector<RegionPoint> region_scan(const GridSpec& g) {
  if (g.step.sign() <= 0) throw std::invalid_argument("region_scan: step must be positive");
  const auto as = detail::range_points(g.a, g.step);
  const auto bs = detail::range_points(g.b, g.step);
  const auto cs = detail::range_points(g.c, g.step);
  if (as.empty() || bs.empty() || cs.empty()) throw std::invalid_argument("region_scan: empty grid");
  std::vector<RegionPoint> out(as.size() * bs.size() * cs.size());
  parallel_for(out.size(), [&](std::size_t idx) {
    const std::size_t ic = idx % cs.size();
    const std::size_t ia = (idx / cs.size()) % as.size();
    const std::size_t ib = idx / (cs.size() * as.size());
    RegionPoint pt;
    pt.params = {as[ia], bs[ib], cs[ic]};
    pt.psd = psd_family(pt.params);
    pt.block_positive = bp_family_general(pt.params);
    out[idx] = std::move(pt);
  });
  return out;
}

inline void write_region_csv(std::ostream& os, const std::vector<RegionPoint>& pts) {
  os << "a,b,c,psd,block_positive\n";
  for (const auto& p : pts)
    os << p.params.a.re.str() << ',' << p.params.b.re.str() << ',' << p.params.c.re.str() << ','
       << (p.psd ? 1 : 0) << ',' << (p.block_positive ? 1 : 0) << '\n';
}

struct RegionSummary {
  std::size_t psd = 0;
  std::size_t bp_only = 0;
  std::size_t neither = 0;
  std::size_t violations = 0;  // psd but not block positive
};

inline RegionSummary summarize(const std::vector<RegionPoint>& pts) {
  RegionSummary s;
  for (const auto& p : pts) {
    if (p.psd) ++s.psd;
    if (p.psd && !p.block_positive) ++s.violations;
    if (!p.psd && p.block_positive) ++s.bp_only;
    if (!p.psd && !p.block_positive) ++s.neither;
  }
  return s;
}

}  // namespace blockpos
