#pragma once

/// Hermitian operators on H1 (x) H2 in the product basis |alpha beta>, beta
/// fastest: blocks, partial transpose, PSD testing and product expectations.

#include "blockpos/matrix.hpp"
#include "blockpos/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blockpos {

enum class Field { Real, Complex };

using ComplexVector = std::vector<ComplexRational>;

class BipartiteOperator {
public:
  BipartiteOperator() = default;

  /// Validates shape and Hermiticity; a Real field also requires zero imaginary parts.
  BipartiteOperator(std::size_t dim1, std::size_t dim2, Field field, ComplexMatrix entries)
      : dim1_(dim1), dim2_(dim2), field_(field), m_(std::move(entries)) {
    if (dim1_ == 0 || dim2_ == 0) throw std::invalid_argument("BipartiteOperator: zero dimension");
    if (m_.rows() != dim1_ * dim2_ || m_.cols() != dim1_ * dim2_)
      throw std::invalid_argument("BipartiteOperator: entries must be (dim1*dim2) square");
    if (!m_.is_hermitian()) throw std::invalid_argument("BipartiteOperator: entries not Hermitian");
    if (field_ == Field::Real)
      for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
          if (!m_(i, j).is_real()) throw std::invalid_argument("BipartiteOperator: real field with complex entry");
  }

  static BipartiteOperator from_real(std::size_t dim1, std::size_t dim2, const RationalMatrix& m) {
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = ComplexRational(m(i, j));
    return {dim1, dim2, Field::Real, std::move(c)};
  }

  static BipartiteOperator identity(std::size_t dim1, std::size_t dim2) {
    return {dim1, dim2, Field::Real, ComplexMatrix::identity(dim1 * dim2)};
  }

  static BipartiteOperator diagonal(std::size_t dim1, std::size_t dim2, const std::vector<Rational>& d) {
    RationalMatrix m(dim1 * dim2, dim1 * dim2);
    if (d.size() != dim1 * dim2) throw std::invalid_argument("BipartiteOperator::diagonal: length mismatch");
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return from_real(dim1, dim2, m);
  }

  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  std::size_t size() const { return dim1_ * dim2_; }
  Field field() const { return field_; }
  const ComplexMatrix& entries() const { return m_; }

  std::size_t index(std::size_t alpha, std::size_t beta) const { return alpha * dim2_ + beta; }

  /// A_{alpha beta, gamma delta}
  const ComplexRational& at(std::size_t alpha, std::size_t beta, std::size_t gamma, std::size_t delta) const {
    return m_(index(alpha, beta), index(gamma, delta));
  }

  /// Real part of the entry matrix; throws unless every entry is real.
  RationalMatrix real_entries() const {
    RationalMatrix r(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (!m_(i, j).is_real()) throw std::invalid_argument("BipartiteOperator: entry is not real");
        r(i, j) = m_(i, j).re;
      }
    return r;
  }

  /// Entries are real, whatever the field tag says.
  bool has_real_entries() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!m_(i, j).is_real()) return false;
    return true;
  }

  friend bool operator==(const BipartiteOperator& a, const BipartiteOperator& b) {
    return a.dim1_ == b.dim1_ && a.dim2_ == b.dim2_ && a.m_ == b.m_;
  }

private:
  std::size_t dim1_ = 0;
  std::size_t dim2_ = 0;
  Field field_ = Field::Real;
  ComplexMatrix m_;
};

enum class BlockSide { First, Second };

struct Block {
  BlockSide side;
  ComplexMatrix matrix;
};

struct ProductVector {
  ComplexVector u;
  ComplexVector v;

  ProductVector() = default;
  ProductVector(ComplexVector u_, ComplexVector v_) : u(std::move(u_)), v(std::move(v_)) {
    auto zero = [](const ComplexVector& w) {
      for (const auto& z : w)
        if (!z.is_zero()) return false;
      return true;
    };
    if (u.empty() || v.empty() || zero(u) || zero(v)) throw std::invalid_argument("ProductVector: zero factor");
  }
  static ProductVector real(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    return {ComplexVector(x.begin(), x.end()), ComplexVector(y.begin(), y.end())};
  }
};

namespace detail {

inline void require_nonzero(const ComplexVector& w, std::size_t n, const char* what) {
  if (w.size() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  for (const auto& z : w)
    if (!z.is_zero()) return;
  throw std::invalid_argument(std::string(what) + ": zero vector");
}

}  // namespace detail

/// (A2_u)_{beta delta} = sum_{alpha, gamma} A_{alpha beta, gamma delta} conj(u^alpha) u^gamma
inline Block block_second(const BipartiteOperator& a, const ComplexVector& u) {
  detail::require_nonzero(u, a.dim1(), "block_second");
  ComplexMatrix b(a.dim2(), a.dim2());
  for (std::size_t al = 0; al < a.dim1(); ++al)
    for (std::size_t ga = 0; ga < a.dim1(); ++ga) {
      const ComplexRational w = u[al].conj() * u[ga];
      if (w.is_zero()) continue;
      for (std::size_t be = 0; be < a.dim2(); ++be)
        for (std::size_t de = 0; de < a.dim2(); ++de) b(be, de) += a.at(al, be, ga, de) * w;
    }
  return {BlockSide::Second, std::move(b)};
}

/// (A1_v)_{alpha gamma} = sum_{beta, delta} A_{alpha beta, gamma delta} conj(v^beta) v^delta
inline Block block_first(const BipartiteOperator& a, const ComplexVector& v) {
  detail::require_nonzero(v, a.dim2(), "block_first");
  ComplexMatrix b(a.dim1(), a.dim1());
  for (std::size_t be = 0; be < a.dim2(); ++be)
    for (std::size_t de = 0; de < a.dim2(); ++de) {
      const ComplexRational w = v[be].conj() * v[de];
      if (w.is_zero()) continue;
      for (std::size_t al = 0; al < a.dim1(); ++al)
        for (std::size_t ga = 0; ga < a.dim1(); ++ga) b(al, ga) += a.at(al, be, ga, de) * w;
    }
  return {BlockSide::First, std::move(b)};
}

/// (A^tau)_{alpha beta, gamma delta} = A_{alpha delta, gamma beta}
inline BipartiteOperator partial_transpose(const BipartiteOperator& a) {
  ComplexMatrix t(a.size(), a.size());
  for (std::size_t al = 0; al < a.dim1(); ++al)
    for (std::size_t be = 0; be < a.dim2(); ++be)
      for (std::size_t ga = 0; ga < a.dim1(); ++ga)
        for (std::size_t de = 0; de < a.dim2(); ++de) t(a.index(al, be), a.index(ga, de)) = a.at(al, de, ga, be);
  return {a.dim1(), a.dim2(), a.field(), std::move(t)};
}

inline bool is_pt_symmetric(const BipartiteOperator& a) { return partial_transpose(a) == a; }

inline bool is_psd(const BipartiteOperator& a) { return is_psd_matrix(a.entries()); }

/// <u (x) v | A (u (x) v)>, real by Hermiticity.
inline Rational product_expectation(const BipartiteOperator& a, const ProductVector& p) {
  if (p.u.size() != a.dim1() || p.v.size() != a.dim2())
    throw std::invalid_argument("product_expectation: dimension mismatch");
  ComplexVector w(a.size());
  for (std::size_t al = 0; al < a.dim1(); ++al)
    for (std::size_t be = 0; be < a.dim2(); ++be) w[a.index(al, be)] = p.u[al] * p.v[be];
  const ComplexRational val = inner(w, a.entries().apply(w));
  return val.re;
}

/// rho is a state: Hermitian, PSD, unit trace.
inline bool is_state(const BipartiteOperator& rho) {
  return rho.entries().trace() == ComplexRational(1) && is_psd(rho);
}

/// Tr(W rho) for a state rho.
inline Rational witness_expectation(const BipartiteOperator& w, const BipartiteOperator& rho) {
  if (w.size() != rho.size()) throw std::invalid_argument("witness_expectation: dimension mismatch");
  if (!is_state(rho)) throw std::invalid_argument("witness_expectation: rho is not a state (PSD, trace 1)");
  ComplexRational t;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) t += w.entries()(i, j) * rho.entries()(j, i);
  return t.re;
}

}  // namespace blockpos
