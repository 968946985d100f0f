#pragma once

/// Small dense matrices over exact scalars (Rational or ComplexRational).

#include "blockpos/poly.hpp"
#include "blockpos/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace blockpos {

inline Rational conj(const Rational& r) { return r; }
inline ComplexRational conj(const ComplexRational& z) { return z.conj(); }
inline Rational real_part(const Rational& r) { return r; }
inline Rational real_part(const ComplexRational& z) { return z.re; }

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = conj((*this)(i, j));
    return m;
  }

  bool is_hermitian() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (!((*this)(i, j) == conj((*this)(j, i)))) return false;
    return true;
  }

  T trace() const {
    T t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& v : m.data_) v = s * v;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: vector length mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using ComplexMatrix = Matrix<ComplexRational>;

/// <x, y> = sum conj(x_i) y_i
template <class T>
T inner(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("inner: length mismatch");
  T s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += conj(x[i]) * y[i];
  return s;
}

/// Coefficients of det(lambda I - A), ascending, by Faddeev-LeVerrier.
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic_polynomial: matrix not square");
  const std::size_t n = a.rows();
  std::vector<T> c(n + 1);
  c[n] = T(1);
  Matrix<T> m(n, n);
  const Matrix<T> id = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    T tr = (a * m).trace();
    c[n - k] = -(tr / T(static_cast<long>(k)));
  }
  return c;
}

/// W_l for l = 1..n: sums of the l x l principal minors (W_0 = 1 is included at index 0).
template <class T>
std::vector<Rational> principal_minor_sums(const Matrix<T>& a) {
  const auto c = characteristic_polynomial(a);
  const std::size_t n = a.rows();
  std::vector<Rational> w(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    Rational v = real_part(c[n - l]);
    w[l] = (l % 2 == 0) ? v : -v;
  }
  return w;
}

/// A Hermitian matrix is PSD iff every principal-minor sum is nonnegative.
template <class T>
bool is_psd_matrix(const Matrix<T>& a) {
  if (!a.is_hermitian()) throw std::invalid_argument("is_psd_matrix: matrix not Hermitian");
  for (const auto& w : principal_minor_sums(a))
    if (w.sign() < 0) return false;
  return true;
}

struct RankOneTerm {
  Rational weight;
  std::vector<Rational> vector;
};

/// B = sum_k weight_k v_k v_k^T for PSD rational B (unit lower triangular
/// LDL^T, zero pivots skipped). Returns nullopt if B is not PSD.
inline std::optional<std::vector<RankOneTerm>> ldlt_psd(const RationalMatrix& b) {
  if (!b.is_hermitian()) throw std::invalid_argument("ldlt_psd: matrix not symmetric");
  const std::size_t n = b.rows();
  RationalMatrix s = b;  // running Schur complement
  std::vector<RankOneTerm> terms;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational d = s(k, k);
    if (d.sign() < 0) return std::nullopt;
    if (d.is_zero()) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (!s(j, k).is_zero()) return std::nullopt;
      continue;
    }
    std::vector<Rational> l(n);
    l[k] = Rational(1);
    for (std::size_t j = k + 1; j < n; ++j) l[j] = s(j, k) / d;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) s(i, j) -= d * l[i] * l[j];
    terms.push_back({d, std::move(l)});
  }
  return terms;
}

/// Some rational x with x^T M x < 0 for a symmetric 2 x 2 M that is not PSD.
inline std::optional<std::vector<Rational>> negative_direction_2x2(const Rational& p, const Rational& q,
                                                                   const Rational& r) {
  // M = [[p, q], [q, r]]
  if (p.sign() < 0) return std::vector<Rational>{Rational(1), Rational(0)};
  if (r.sign() < 0) return std::vector<Rational>{Rational(0), Rational(1)};
  if ((p * r - q * q).sign() >= 0) return std::nullopt;
  if (p.sign() > 0) return std::vector<Rational>{-q, p};  // value p (pr - q^2)
  if (r.sign() > 0) return std::vector<Rational>{r, -q};
  // p = r = 0, q != 0: value 2 q x y
  return std::vector<Rational>{Rational(1), q.sign() > 0 ? Rational(-1) : Rational(1)};
}

}  // namespace blockpos
