#pragma once

// Random generators and independent floating-point oracles for the suites.

#include "blockpos/blockpos.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace blockpos::test {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// n/d with |n| <= max_num and 1 <= d <= max_den.
inline Rational random_rational(Rng& rng, long max_num, long max_den) {
  return {uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den)};
}

/// k/den uniformly in [lo*den, hi*den].
inline Rational random_on_grid(Rng& rng, long lo_num, long hi_num, long den) {
  return {uniform_int(rng, lo_num, hi_num), den};
}

inline UniPoly random_poly(Rng& rng, int degree, long max_num, long max_den) {
  std::vector<Rational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_rational(rng, max_num, max_den));
  if (c.back().is_zero()) c.back() = Rational(1);
  return UniPoly(std::move(c));
}

inline RationalMatrix random_symmetric(Rng& rng, std::size_t n, long max_num, long max_den) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_rational(rng, max_num, max_den);
  return m;
}

inline BipartiteOperator random_real_operator(Rng& rng, long max_num = 4, long max_den = 4) {
  return BipartiteOperator::from_real(2, 2, random_symmetric(rng, 4, max_num, max_den));
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n, long max_num, long max_den) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = random_rational(rng, max_num, max_den);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = ComplexRational(random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den));
      m(j, i) = m(i, j).conj();
    }
  }
  return m;
}

inline ComplexVector random_complex_vector(Rng& rng, std::size_t n, long max_num, long max_den) {
  ComplexVector v;
  do {
    v.clear();
    for (std::size_t i = 0; i < n; ++i)
      v.push_back({random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den)});
  } while (std::all_of(v.begin(), v.end(), [](const ComplexRational& z) { return z.is_zero(); }));
  return v;
}

inline std::vector<Rational> random_real_vector(Rng& rng, std::size_t n, long max_num, long max_den) {
  std::vector<Rational> v;
  do {
    v.clear();
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, max_num, max_den));
  } while (std::all_of(v.begin(), v.end(), [](const Rational& z) { return z.is_zero(); }));
  return v;
}

inline std::vector<RationalMatrix> random_bset(Rng& rng, std::size_t count) {
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    RationalMatrix b(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) b(r, c) = random_rational(rng, 5, 4);
    out.push_back(b);
  }
  return out;
}

/// Value of base + sum c_i sqrt(r_i) at 512-bit precision.
inline mpf_class radical_value_mpf(const RadicalExpr& e) {
  constexpr mp_bitcnt_t prec = 512;
  mpf_class v(e.base.raw(), prec);
  for (const auto& t : e.terms) {
    mpf_class r(t.radicand.raw(), prec), c(t.coefficient.raw(), prec), s(0, prec);
    mpf_sqrt(s.get_mpf_t(), r.get_mpf_t());
    v += c * s;
  }
  return v;
}

/// min over phi of 1 - |alpha + gamma cos phi| - |b| sin phi on an n-point grid.
inline double phi_grid_min(const FamilyParams& p, int n = 10000) {
  const std::complex<double> alpha(p.alpha().re.to_double(), p.alpha().im.to_double());
  const std::complex<double> gamma(p.gamma().re.to_double(), p.gamma().im.to_double());
  const double b = std::sqrt(modulus_squared(p.b).to_double());
  double best = 1e300;
  for (int k = 0; k < n; ++k) {
    const double phi = 2 * std::numbers::pi * k / n;
    best = std::min(best, 1 - std::abs(alpha + gamma * std::cos(phi)) - b * std::sin(phi));
  }
  return best;
}

/// min over unit real x, y of the biquadratic form of a real 2 (x) 2 operator,
/// on a dense angle grid.
inline double real_form_grid_min(const BipartiteOperator& a, int n = 400) {
  const RationalMatrix m = a.real_entries();
  double d[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d[i][j] = m(i, j).to_double();
  double best = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double t = std::numbers::pi * i / n, s = std::numbers::pi * j / n;
      const double x[2] = {std::cos(t), std::sin(t)}, y[2] = {std::cos(s), std::sin(s)};
      const double w[4] = {x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]};
      double v = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) v += w[p] * d[p][q] * w[q];
      best = std::min(best, v);
    }
  return best;
}

/// Constructed boundary quartics: perfect squares, fourth powers, products of
/// squares, their small negative perturbations, and c4 = 0 cases.
inline std::vector<QuarticCoeffs> boundary_quartics(Rng& rng, std::size_t count) {
  std::vector<QuarticCoeffs> out;
  auto push = [&](const UniPoly& f) { out.push_back(QuarticCoeffs::from_poly(f)); };
  while (out.size() < count) {
    const Rational q = random_rational(rng, 5, 3), r = random_rational(rng, 5, 3), s = random_rational(rng, 5, 3);
    const UniPoly sq = UniPoly({s, r, q}) * UniPoly({s, r, q});
    push(sq);
    push(sq - UniPoly::constant(Rational(1, 1000)));
    const Rational t = random_rational(rng, 5, 3);
    const UniPoly lin = UniPoly::linear_root(t);
    push(lin * lin * lin * lin);
    const Rational u = random_rational(rng, 5, 3);
    const UniPoly lu = UniPoly::linear_root(u);
    push(lin * lin * lu * lu);
    push(lin * lin * lu * lu + UniPoly::constant(Rational(1, 1000)));
    push(lin * lin * (UniPoly({Rational(0), Rational(0), Rational(1)}) + UniPoly::constant(s * s)));
    // c4 = 0
    const UniPoly quad({s, r, q});
    push(quad);
    push(quad * quad - quad * quad + UniPoly::constant(s));
    push(UniPoly({s, r}));
    push(UniPoly({s, r, Rational(0), q}));
  }
  out.resize(count);
  return out;
}

}  // namespace blockpos::test
