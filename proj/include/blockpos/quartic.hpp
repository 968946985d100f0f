#pragma once

/// Closed-form nonnegativity test for real polynomials of degree <= 4,
/// including the non-normal Sturm-chain configurations.

#include "blockpos/poly.hpp"
#include "blockpos/rational.hpp"

#include <array>
#include <string_view>

namespace blockpos {

struct QuarticCoeffs {
  Rational c4, c3, c2, c1, c0;

  UniPoly poly() const { return UniPoly({c0, c1, c2, c3, c4}); }
  static QuarticCoeffs from_poly(const UniPoly& p) {
    if (p.degree() > 4) throw std::invalid_argument("QuarticCoeffs: degree exceeds 4");
    return {p.coeff(4), p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)};
  }
};

struct QuarticInvariants {
  Rational sigma1, sigma2, sigma3;
  /// sigma3 = kappa3 c0^3 + kappa2 c0^2 + kappa1 c0 + kappa0
  Rational kappa0, kappa1, kappa2, kappa3;
};

namespace detail {

inline Rational sigma1_of(const QuarticCoeffs& c) { return Rational(8) * c.c2 * c.c4 - Rational(3) * c.c3 * c.c3; }

inline Rational sigma2_of(const QuarticCoeffs& q) {
  const auto& [c4, c3, c2, c1, c0] = q;
  return Rational(3) * c1 * pow(c3, 3) - Rational(14) * c1 * c2 * c3 * c4 -
         c3 * c3 * (c2 * c2 - Rational(6) * c0 * c4) +
         Rational(2) * c4 * (Rational(2) * pow(c2, 3) + Rational(9) * c1 * c1 * c4 - Rational(8) * c0 * c2 * c4);
}

inline Rational sigma3_of(const QuarticCoeffs& q) {
  const auto& [c4, c3, c2, c1, c0] = q;
  const Rational two(2), four(4);
  return two * c1 * (two * c1 * c1 - Rational(9) * c0 * c2) * pow(c3, 3) +
         two * c1 * c3 * c4 * (Rational(-9) * c1 * c1 * c2 + Rational(40) * c0 * c2 * c2 + Rational(96) * c0 * c0 * c4) +
         Rational(27) * c0 * c0 * pow(c3, 4) +
         c3 * c3 * (-(c1 * c1 * c2 * c2) + four * c0 * pow(c2, 3) + Rational(6) * c0 * c1 * c1 * c4 -
                    Rational(144) * c0 * c0 * c2 * c4) +
         c4 * (four * c1 * c1 * pow(c2, 3) + Rational(27) * pow(c1, 4) * c4 + Rational(128) * c0 * c0 * c2 * c2 * c4 -
               Rational(256) * pow(c0, 3) * c4 * c4 - Rational(16) * c0 * c2 * (pow(c2, 3) + Rational(9) * c1 * c1 * c4));
}

}  // namespace detail

/// sigma_1..3 and the coefficients of sigma_3 as a cubic in c0. The kappas are
/// obtained by exact interpolation of sigma_3 at c0 = 0, 1, 2, 3.
inline QuarticInvariants quartic_invariants(const QuarticCoeffs& c) {
  QuarticInvariants inv;
  inv.sigma1 = detail::sigma1_of(c);
  inv.sigma2 = detail::sigma2_of(c);
  inv.sigma3 = detail::sigma3_of(c);

  std::array<Rational, 4> s;
  for (int k = 0; k < 4; ++k) {
    QuarticCoeffs ck = c;
    ck.c0 = Rational(k);
    s[static_cast<std::size_t>(k)] = detail::sigma3_of(ck);
  }
  // forward differences of a cubic sampled at 0..3
  const Rational d1 = s[1] - s[0];
  const Rational d2 = s[2] - Rational(2) * s[1] + s[0];
  const Rational d3 = s[3] - Rational(3) * s[2] + Rational(3) * s[1] - s[0];
  inv.kappa3 = d3 / Rational(6);
  inv.kappa2 = (d2 - Rational(6) * inv.kappa3) / Rational(2);
  inv.kappa1 = d1 - inv.kappa2 - inv.kappa3;
  inv.kappa0 = s[0];
  return inv;
}

enum class QuarticBranch {
  LeadingNegative,
  Sigma3Negative,
  Sigma3ZeroSlopeNegative,
  Sigma3ZeroCurvatureNonpositive,
  Sigma3ZeroIncreasing,
  Sigma3Positive,
  Sigma1Sigma2Negative,
  DegenerateNonnegative,
  DegenerateOddPart,
  DegenerateQuadraticNegative,
  DegenerateConstantNegative,
};

inline std::string_view branch_name(QuarticBranch b) {
  switch (b) {
    case QuarticBranch::LeadingNegative: return "c4<0";
    case QuarticBranch::Sigma3Negative: return "sigma3<0";
    case QuarticBranch::Sigma3ZeroSlopeNegative: return "sigma3=0&kappa1<0";
    case QuarticBranch::Sigma3ZeroCurvatureNonpositive: return "sigma3=0&kappa1=0&kappa2<=0";
    case QuarticBranch::Sigma3ZeroIncreasing: return "sigma3=0&increasing";
    case QuarticBranch::Sigma3Positive: return "sigma3>0";
    case QuarticBranch::Sigma1Sigma2Negative: return "sigma1<0&sigma2<0";
    case QuarticBranch::DegenerateNonnegative: return "c4=0:nonnegative";
    case QuarticBranch::DegenerateOddPart: return "c4=0:c3!=0";
    case QuarticBranch::DegenerateQuadraticNegative: return "c4=0:quadratic-negative";
    case QuarticBranch::DegenerateConstantNegative: return "c4=0:constant-negative";
  }
  return "?";
}

struct QuarticDecision {
  bool nonnegative = false;
  QuarticBranch branch = QuarticBranch::LeadingNegative;
  QuarticInvariants invariants;
  /// First and second Taylor coefficients of sigma3(c0 + xi) in xi; the
  /// sigma3=0 branches are decided on these.
  Rational local_kappa1, local_kappa2;
};

/// Decides c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0 >= 0 for all real x.
inline QuarticDecision quartic_decide(const QuarticCoeffs& c) {
  QuarticDecision d;
  d.invariants = quartic_invariants(c);
  const auto& inv = d.invariants;
  d.local_kappa1 = Rational(3) * inv.kappa3 * c.c0 * c.c0 + Rational(2) * inv.kappa2 * c.c0 + inv.kappa1;
  d.local_kappa2 = Rational(3) * inv.kappa3 * c.c0 + inv.kappa2;

  auto set = [&d](bool ok, QuarticBranch b) {
    d.nonnegative = ok;
    d.branch = b;
    return d;
  };

  if (c.c4.is_zero()) {
    if (!c.c3.is_zero()) return set(false, QuarticBranch::DegenerateOddPart);
    if (c.c2.sign() > 0) {
      const bool ok = (c.c1 * c.c1 - Rational(4) * c.c2 * c.c0).sign() <= 0;
      return set(ok, ok ? QuarticBranch::DegenerateNonnegative : QuarticBranch::DegenerateQuadraticNegative);
    }
    if (c.c2.sign() < 0) return set(false, QuarticBranch::DegenerateQuadraticNegative);
    if (!c.c1.is_zero()) return set(false, QuarticBranch::DegenerateOddPart);
    return c.c0.sign() >= 0 ? set(true, QuarticBranch::DegenerateNonnegative)
                            : set(false, QuarticBranch::DegenerateConstantNegative);
  }
  if (c.c4.sign() < 0) return set(false, QuarticBranch::LeadingNegative);
  if (inv.sigma1.sign() < 0 && inv.sigma2.sign() < 0) return set(false, QuarticBranch::Sigma1Sigma2Negative);
  if (inv.sigma3.sign() < 0) return set(true, QuarticBranch::Sigma3Negative);
  if (inv.sigma3.sign() > 0) return set(false, QuarticBranch::Sigma3Positive);
  if (d.local_kappa1.sign() < 0) return set(true, QuarticBranch::Sigma3ZeroSlopeNegative);
  if (d.local_kappa1.is_zero() && d.local_kappa2.sign() <= 0)
    return set(true, QuarticBranch::Sigma3ZeroCurvatureNonpositive);
  return set(false, QuarticBranch::Sigma3ZeroIncreasing);
}

inline bool quartic_nonneg_closed_form(const QuarticCoeffs& c) { return quartic_decide(c).nonnegative; }

}  // namespace blockpos
