#pragma once

/// Exact decision procedures for real 2 (x) 2 operators: block positivity
/// over the reals, decomposability of partial-transpose-symmetric operators,
/// and sum-of-squares certificates for their biquadratic forms.

#include "blockpos/matrix.hpp"
#include "blockpos/operator.hpp"
#include "blockpos/poly.hpp"
#include "blockpos/quartic.hpp"
#include "blockpos/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockpos {

namespace detail {

inline void require_real_2x2(const BipartiteOperator& a, const char* what) {
  if (a.dim1() != 2 || a.dim2() != 2) throw std::invalid_argument(std::string(what) + ": operator must be 2x2");
  if (!a.has_real_entries()) throw std::invalid_argument(std::string(what) + ": operator must be real");
}

// A_{ab,cd} with 1-based indices as written in the formulas
inline const Rational& entry(const BipartiteOperator& a, int i, int j, int k, int l) {
  return a.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1),
              static_cast<std::size_t>(l - 1))
      .re;
}

// Entry (a, c) of the first-subsystem block at y = (x, 1): a quadratic in x.
inline UniPoly block_entry_poly(const BipartiteOperator& a, int r, int c) {
  return UniPoly({entry(a, r, 2, c, 2), entry(a, r, 1, c, 2) + entry(a, r, 2, c, 1), entry(a, r, 1, c, 1)});
}

}  // namespace detail

/// Coefficients of det A1_y = c4 (y1)^4 + c3 (y1)^3 y2 + ... + c0 (y2)^4, from
/// the exact expansion of the 2 x 2 block determinant.
inline QuarticCoeffs determinant_coefficients(const BipartiteOperator& a) {
  detail::require_real_2x2(a, "determinant_coefficients");
  const UniPoly det = detail::block_entry_poly(a, 1, 1) * detail::block_entry_poly(a, 2, 2) -
                      detail::block_entry_poly(a, 1, 2) * detail::block_entry_poly(a, 2, 1);
  return QuarticCoeffs::from_poly(det);
}

/// Trace of A1_y as the quadratic form t11 y1^2 + t12 y1 y2 + t22 y2^2.
struct TraceForm {
  Rational t11, t12, t22;

  bool nonnegative() const {
    return (t11 + t22).sign() >= 0 && (t11 * t22 - t12 * t12 / Rational(4)).sign() >= 0;
  }
};

inline TraceForm trace_form(const BipartiteOperator& a) {
  detail::require_real_2x2(a, "trace_form");
  TraceForm t;
  for (int i = 1; i <= 2; ++i) {
    t.t11 += detail::entry(a, i, 1, i, 1);
    t.t12 += detail::entry(a, i, 1, i, 2) + detail::entry(a, i, 2, i, 1);
    t.t22 += detail::entry(a, i, 2, i, 2);
  }
  return t;
}

struct BpTrace {
  TraceForm trace;
  bool trace_condition = false;
  QuarticCoeffs determinant;
  QuarticDecision quartic;
  bool axis_blocks_psd = false;
  /// "trace", "determinant", "axis" or empty when the operator is block positive.
  std::string failed_on;
};

struct BpVerdict {
  bool holds = false;
  std::optional<ProductVector> counterexample;
  BpTrace trace;
};

namespace detail {

inline RationalMatrix real_block_first(const BipartiteOperator& a, const std::vector<Rational>& y) {
  const Block b = block_first(a, ComplexVector(y.begin(), y.end()));
  RationalMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = b.matrix(i, j).re;
  return m;
}

inline std::optional<ProductVector> counterexample_at(const BipartiteOperator& a, const std::vector<Rational>& y) {
  const RationalMatrix blk = real_block_first(a, y);
  auto x = negative_direction_2x2(blk(0, 0), blk(0, 1), blk(1, 1));
  if (!x) return std::nullopt;
  return ProductVector::real(*x, y);
}

inline bool real_block_psd(const BipartiteOperator& a, const std::vector<Rational>& y) {
  const RationalMatrix blk = real_block_first(a, y);
  return !negative_direction_2x2(blk(0, 0), blk(0, 1), blk(1, 1)).has_value();
}

}  // namespace detail

/// Block positivity over the reals of a real symmetric 2 (x) 2 operator.
inline BpVerdict bp_real_2x2(const BipartiteOperator& a) {
  detail::require_real_2x2(a, "bp_real_2x2");
  BpVerdict v;
  auto& tr = v.trace;
  tr.trace = trace_form(a);
  tr.trace_condition = tr.trace.nonnegative();
  tr.determinant = determinant_coefficients(a);
  tr.quartic = quartic_decide(tr.determinant);
  tr.axis_blocks_psd = detail::real_block_psd(a, {Rational(1), Rational(0)}) &&
                       detail::real_block_psd(a, {Rational(0), Rational(1)});
  v.holds = tr.trace_condition && tr.quartic.nonnegative && tr.axis_blocks_psd;
  if (v.holds) return v;

  if (!tr.trace_condition) {
    tr.failed_on = "trace";
    auto y = negative_direction_2x2(tr.trace.t11, tr.trace.t12 / Rational(2), tr.trace.t22);
    if (y) v.counterexample = detail::counterexample_at(a, *y);
  } else if (!tr.quartic.nonnegative) {
    tr.failed_on = "determinant";
    const UniPoly f = tr.determinant.poly();
    for (const auto& x0 : sample_between_roots(f)) {
      if (f.sign_at(x0) < 0) {
        v.counterexample = detail::counterexample_at(a, {x0, Rational(1)});
        break;
      }
    }
  } else {
    tr.failed_on = "axis";
    for (const auto& y : {std::vector<Rational>{1, 0}, std::vector<Rational>{0, 1}})
      if (!detail::real_block_psd(a, y)) {
        v.counterexample = detail::counterexample_at(a, y);
        break;
      }
  }
  if (!v.counterexample || product_expectation(a, *v.counterexample).sign() >= 0)
    throw std::logic_error("bp_real_2x2: failed to extract a counterexample");
  return v;
}

/// A~_{ab,cd} = 1/2 sum_i w_i (B_{ab} B_{cd} + B_{ad} B_{cb}) over weighted
/// bilinear-form coefficient matrices B (all of the same shape).
inline BipartiteOperator symmetrized_gram_weighted(const std::vector<Rational>& weights,
                                                   const std::vector<RationalMatrix>& bset) {
  if (bset.empty()) throw std::invalid_argument("symmetrized_gram: empty set");
  if (weights.size() != bset.size()) throw std::invalid_argument("symmetrized_gram: weight count mismatch");
  const std::size_t m1 = bset.front().rows();
  const std::size_t m2 = bset.front().cols();
  RationalMatrix out(m1 * m2, m1 * m2);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < bset.size(); ++i) {
    const auto& b = bset[i];
    if (b.rows() != m1 || b.cols() != m2) throw std::invalid_argument("symmetrized_gram: shape mismatch");
    const Rational w = weights[i] * half;
    if (w.is_zero()) continue;
    for (std::size_t a = 0; a < m1; ++a)
      for (std::size_t bb = 0; bb < m2; ++bb)
        for (std::size_t c = 0; c < m1; ++c)
          for (std::size_t d = 0; d < m2; ++d)
            out(a * m2 + bb, c * m2 + d) += w * (b(a, bb) * b(c, d) + b(a, d) * b(c, bb));
  }
  return BipartiteOperator::from_real(m1, m2, out);
}

inline BipartiteOperator symmetrized_gram(const std::vector<RationalMatrix>& bset) {
  return symmetrized_gram_weighted(std::vector<Rational>(bset.size(), Rational(1)), bset);
}

/// B^_{ab,cd} = sum_i B_{ab} B_{cd}, the PSD Gram operator of the set.
inline BipartiteOperator gram_operator(const std::vector<RationalMatrix>& bset) {
  if (bset.empty()) throw std::invalid_argument("gram_operator: empty set");
  const std::size_t m1 = bset.front().rows();
  const std::size_t m2 = bset.front().cols();
  RationalMatrix out(m1 * m2, m1 * m2);
  for (const auto& b : bset)
    for (std::size_t i = 0; i < m1 * m2; ++i)
      for (std::size_t j = 0; j < m1 * m2; ++j) out(i, j) += b(i / m2, i % m2) * b(j / m2, j % m2);
  return BipartiteOperator::from_real(m1, m2, out);
}

struct SosTerm {
  Rational weight;
  RationalMatrix coeffs;  // B^i_{ab}
};

struct SosCertificate {
  Rational t_parameter;
  BipartiteOperator b;
  std::vector<SosTerm> terms;
};

/// The partial-transpose-antisymmetric symmetric direction on 2 (x) 2:
/// E_{00,11} + E_{11,00} - E_{01,10} - E_{10,01}.
inline RationalMatrix pt_antisymmetric_direction() {
  RationalMatrix k(4, 4);
  k(0, 3) = k(3, 0) = Rational(1);
  k(1, 2) = k(2, 1) = Rational(-1);
  return k;
}

namespace detail {

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_rational_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.numerator().get_mpz_t(), lo.denominator().get_mpz_t());
  const Rational flr(fl, 1);
  if (flr == lo) return lo;
  if (flr + Rational(1) <= hi) return flr + Rational(1);
  return flr + Rational(1) / simplest_rational_between(Rational(1) / (hi - flr), Rational(1) / (lo - flr));
}

// Rational roots of f. After clearing denominators every rational root has
// denominator dividing the leading coefficient L, so once an isolating
// interval is narrower than 1/L^2 its simplest rational is the only candidate.
inline std::vector<Rational> rational_roots(const UniPoly& f) {
  std::vector<Rational> out;
  if (f.degree() <= 0) return out;
  UniPoly s = squarefree_part(f);
  mpz_class den(1);
  for (const auto& c : s.coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  s = Rational(den, 1) * s;
  const Rational lc = abs(s.leading());
  const Rational width = Rational(1) / (Rational(2) * lc * lc);
  for (auto iv : isolate_real_roots(s).intervals) {
    iv = refine_root(s, iv, width);
    const Rational q = simplest_rational_between(iv.lo, iv.hi);
    if (s.sign_at(q) == 0) out.push_back(q);
  }
  return out;
}

inline std::vector<UniPoly> minor_sum_polys_in_t(const RationalMatrix& a, const RationalMatrix& k) {
  // W_l(a + t k) has degree <= l <= 4 in t: interpolate from t = 0..4
  const std::size_t n = a.rows();
  std::vector<std::vector<Rational>> samples(n + 1);
  for (long t = 0; t <= static_cast<long>(n); ++t) {
    const auto w = principal_minor_sums(a + Rational(t) * k);
    for (std::size_t l = 0; l <= n; ++l) samples[l].push_back(w[l]);
  }
  std::vector<UniPoly> out;
  for (std::size_t l = 1; l <= n; ++l) {
    UniPoly p;
    for (std::size_t i = 0; i <= n; ++i) {
      UniPoly basis = UniPoly::constant(samples[l][i]);
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == i) continue;
        basis = basis * UniPoly({Rational(-static_cast<long>(j)), Rational(1)});
        basis = (Rational(1) / Rational(static_cast<long>(i) - static_cast<long>(j))) * basis;
      }
      p = p + basis;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Searches A + tK (K the antisymmetric direction) for a PSD point and, on
/// success, returns B with its rank-one sum-of-squares terms. The feasible set
/// in t is a closed interval; its rational points are found exactly.
inline std::optional<SosCertificate> decompose_pt_symmetric(const BipartiteOperator& a) {
  detail::require_real_2x2(a, "decompose_pt_symmetric");
  if (!is_pt_symmetric(a)) throw std::invalid_argument("decompose_pt_symmetric: operator is not PT-symmetric");
  const RationalMatrix am = a.real_entries();
  const RationalMatrix k = pt_antisymmetric_direction();

  auto psd_at = [&](const Rational& t) { return is_psd_matrix(am + t * k); };

  // PSD iff every minor sum W_l(t) >= 0, so feasibility is constant between
  // consecutive roots of the product of the W_l, and an isolated feasible
  // point is one of those roots.
  std::optional<Rational> t_found;
  if (psd_at(Rational(0))) t_found = Rational(0);
  if (!t_found) {
    UniPoly product = UniPoly::constant(Rational(1));
    for (const auto& p : detail::minor_sum_polys_in_t(am, k))
      if (p.degree() > 0) product = product * squarefree_part(p);
    for (const auto& t : sample_between_roots(product))
      if (psd_at(t)) {
        t_found = t;
        break;
      }
    if (!t_found)
      for (const auto& t : detail::rational_roots(product))
        if (psd_at(t)) {
          t_found = t;
          break;
        }
  }
  if (!t_found) return std::nullopt;

  SosCertificate cert;
  cert.t_parameter = *t_found;
  const RationalMatrix bm = am + *t_found * k;
  cert.b = BipartiteOperator::from_real(2, 2, bm);
  const auto terms = ldlt_psd(bm);
  if (!terms) throw std::logic_error("decompose_pt_symmetric: PSD matrix without LDL^T factorization");
  for (const auto& [w, vec] : *terms) {
    RationalMatrix c(2, 2);
    for (std::size_t i = 0; i < 4; ++i) c(i / 2, i % 2) = vec[i];
    cert.terms.push_back({w, std::move(c)});
  }
  return cert;
}

inline BipartiteOperator sos_reconstruct(const SosCertificate& cert) {
  if (cert.terms.empty()) return BipartiteOperator::from_real(2, 2, RationalMatrix(4, 4));
  std::vector<Rational> w;
  std::vector<RationalMatrix> bs;
  for (const auto& t : cert.terms) {
    w.push_back(t.weight);
    bs.push_back(t.coeffs);
  }
  return symmetrized_gram_weighted(w, bs);
}

/// sum_i w_i (sum_ab B^i_ab x^a y^b)^2
inline Rational sos_form_value(const SosCertificate& cert, const std::vector<Rational>& x,
                               const std::vector<Rational>& y) {
  Rational total;
  for (const auto& t : cert.terms) {
    Rational p;
    for (std::size_t a = 0; a < t.coeffs.rows(); ++a)
      for (std::size_t b = 0; b < t.coeffs.cols(); ++b) p += t.coeffs(a, b) * x[a] * y[b];
    total += t.weight * p * p;
  }
  return total;
}

}  // namespace blockpos
