#pragma once

/// Numerical minimization of <u (x) v | A (u (x) v)> over unit product vectors,
/// real or complex. One-sided: a negative minimum is a candidate violation to
/// be re-verified exactly; a nonnegative one only reports the margin reached.

#include "blockpos/operator.hpp"
#include "blockpos/parallel.hpp"
#include "blockpos/rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockpos {

struct SearchConfig {
  unsigned restarts = 64;
  unsigned max_iterations = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eedULL;
};

enum class SearchVerdict { ViolationFound, NoViolationFound };

inline const char* verdict_name(SearchVerdict v) {
  return v == SearchVerdict::ViolationFound ? "violation_found" : "no_violation_found";
}

struct SearchResult {
  double min_value = 0;
  std::vector<std::complex<double>> u, v;  // unit, first nonzero component real >= 0
  SearchVerdict verdict = SearchVerdict::NoViolationFound;
  double margin = 0;  // min_value; negative only for a violation
};

namespace detail {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

class ProductForm {
public:
  ProductForm(const BipartiteOperator& a, bool real)
      : n1_(a.dim1()), n2_(a.dim2()), real_(real), m_(a.size(), a.size()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) {
        const auto& z = a.entries()(i, j);
        m_(i, j) = {z.re.to_double(), z.im.to_double()};
      }
  }

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  bool real() const { return real_; }

  double value(const CVec& u, const CVec& v) const {
    CVec w(n1_ * n2_);
    for (std::size_t a = 0; a < n1_; ++a)
      for (std::size_t b = 0; b < n2_; ++b) w(a * n2_ + b) = u(a) * v(b);
    return (w.adjoint() * m_ * w)(0).real();
  }

  CMat block_second(const CVec& u) const {
    CMat b = CMat::Zero(n2_, n2_);
    for (std::size_t a = 0; a < n1_; ++a)
      for (std::size_t c = 0; c < n1_; ++c) b += std::conj(u(a)) * u(c) * m_.block(a * n2_, c * n2_, n2_, n2_);
    return b;
  }

  CMat block_first(const CVec& v) const {
    CMat b(n1_, n1_);
    for (std::size_t a = 0; a < n1_; ++a)
      for (std::size_t c = 0; c < n1_; ++c) {
        std::complex<double> s = 0;
        for (std::size_t p = 0; p < n2_; ++p)
          for (std::size_t q = 0; q < n2_; ++q) s += std::conj(v(p)) * v(q) * m_(a * n2_ + p, c * n2_ + q);
        b(a, c) = s;
      }
    return b;
  }

  // Riemannian gradients on the product of spheres
  std::pair<CVec, CVec> gradient(const CVec& u, const CVec& v) const {
    CVec gu = 2.0 * block_first(v) * u;
    CVec gv = 2.0 * block_second(u) * v;
    if (real_) {
      gu = gu.real().cast<std::complex<double>>();
      gv = gv.real().cast<std::complex<double>>();
    }
    gu -= u.dot(gu).real() * u;
    gv -= v.dot(gv).real() * v;
    return {gu, gv};
  }

private:
  std::size_t n1_, n2_;
  bool real_;
  CMat m_;
};

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  CVec u, v;
};

inline CVec random_unit(std::size_t n, bool real, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec x(n);
  for (std::size_t i = 0; i < n; ++i) x(i) = {g(rng), real ? 0.0 : g(rng)};
  return x.normalized();
}

inline Candidate descend(const ProductForm& f, CVec u, CVec v, unsigned max_iterations) {
  double val = f.value(u, v);
  double step = 0.5;
  for (unsigned it = 0; it < max_iterations; ++it) {
    auto [gu, gv] = f.gradient(u, v);
    const double g2 = gu.squaredNorm() + gv.squaredNorm();
    if (g2 < 1e-28) break;
    bool moved = false;
    for (; step > 1e-14; step *= 0.5) {
      CVec nu = (u - step * gu).normalized();
      CVec nv = (v - step * gv).normalized();
      const double nval = f.value(nu, nv);
      if (nval <= val - 1e-4 * step * g2) {
        u = std::move(nu);
        v = std::move(nv);
        val = nval;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    step = std::min(1.0, 2 * step);
  }
  return {val, u, v};
}

// u = (cos t, e^{i p} sin t)
inline CVec qubit(double t, double p) {
  CVec x(2);
  x << std::cos(t), std::polar(std::sin(t), p);
  return x;
}

inline void gauge_fix(CVec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) > 1e-9) {
      x *= std::polar(1.0, -std::arg(x(i)));
      x(i) = std::abs(x(i));
      return;
    }
}

inline Candidate grid_refine(const ProductForm& f, const Candidate& best) {
  Candidate out = best;
  auto consider = [&](const CVec& u, const CVec& v) {
    const double val = f.value(u, v);
    if (val < out.value) out = {val, u, v};
  };
  constexpr double pi = std::numbers::pi;
  if (f.n1() == 2 && f.n2() == 2 && f.real()) {
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) consider(qubit(pi * i / 100, 0), qubit(pi * j / 100, 0));
  } else if (f.n1() == 2 && f.n2() == 2) {
    CVec u = best.u, v = best.v;
    gauge_fix(u);
    gauge_fix(v);
    const double tu = std::atan2(std::abs(u(1)), std::abs(u(0))), pu = std::arg(u(1));
    const double tv = std::atan2(std::abs(v(1)), std::abs(v(0))), pv = std::arg(v(1));
    constexpr double half = 0.05;
    auto off = [](int k) { return half * (2.0 * k / 9 - 1); };
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b)
        for (int c = 0; c < 10; ++c)
          for (int d = 0; d < 10; ++d) consider(qubit(tu + off(a), pu + off(b)), qubit(tv + off(c), pv + off(d)));
  } else {
    // coordinate pattern search in the ambient real coordinates
    const std::complex<double> dirs[2] = {{1, 0}, {0, 1}};
    for (double h = 1e-2; h > 1e-10; h *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (int side = 0; side < 2; ++side) {
          const std::size_t n = side == 0 ? f.n1() : f.n2();
          for (std::size_t i = 0; i < n; ++i)
            for (int d = 0; d < (f.real() ? 1 : 2); ++d)
              for (double sgn : {1.0, -1.0}) {
                CVec u = out.u, v = out.v;
                (side == 0 ? u : v)(i) += sgn * h * dirs[d];
                u.normalize();
                v.normalize();
                const double before = out.value;
                consider(u, v);
                if (out.value < before - 1e-15) improved = true;
              }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Multistart projected gradient with Armijo backtracking, then a fine grid
/// (or pattern search beyond 2 (x) 2) around the best basin and a final polish.
/// Deterministic for a given seed: restart k draws from its own stream and the
/// best value wins, ties going to the lower index.
inline SearchResult minimize_product_form(const BipartiteOperator& a, Field field, const SearchConfig& cfg = {}) {
  if (a.dim1() > 4 || a.dim2() > 4) throw std::invalid_argument("minimize_product_form: dimensions above 4 (x) 4");
  if (cfg.restarts == 0 || cfg.max_iterations == 0 || !(cfg.tolerance > 0))
    throw std::invalid_argument("minimize_product_form: invalid configuration");
  const detail::ProductForm f(a, field == Field::Real);
  std::vector<detail::Candidate> runs(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::size_t k) {
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (k + 1));
    auto u = detail::random_unit(f.n1(), f.real(), rng);
    auto v = detail::random_unit(f.n2(), f.real(), rng);
    runs[k] = detail::descend(f, std::move(u), std::move(v), cfg.max_iterations);
  });
  detail::Candidate best = runs.front();
  for (const auto& r : runs)
    if (r.value < best.value) best = r;
  best = detail::grid_refine(f, best);
  best = detail::descend(f, best.u, best.v, cfg.max_iterations);
  detail::gauge_fix(best.u);
  detail::gauge_fix(best.v);

  SearchResult res;
  res.min_value = best.value;
  res.margin = best.value;
  res.u.assign(best.u.data(), best.u.data() + best.u.size());
  res.v.assign(best.v.data(), best.v.data() + best.v.size());
  res.verdict = best.value < -cfg.tolerance ? SearchVerdict::ViolationFound : SearchVerdict::NoViolationFound;
  return res;
}

/// Rounds each component to k / den.
inline ComplexVector round_vector(const std::vector<std::complex<double>>& x, long den = 1'000'000) {
  ComplexVector out;
  out.reserve(x.size());
  for (const auto& z : x) out.push_back({round_to_denominator(z.real(), den), round_to_denominator(z.imag(), den)});
  return out;
}

inline ProductVector round_argmin(const SearchResult& r, long den = 1'000'000) {
  return {round_vector(r.u, den), round_vector(r.v, den)};
}

/// Exact product value at the rounded argmin; negative confirms a violation.
inline Rational exact_value_at_argmin(const BipartiteOperator& a, const SearchResult& r, long den = 1'000'000) {
  return product_expectation(a, round_argmin(r, den));
}

inline bool verify_violation(const BipartiteOperator& a, const SearchResult& r, long den = 1'000'000) {
  return r.verdict == SearchVerdict::ViolationFound && exact_value_at_argmin(a, r, den).sign() < 0;
}

/// Convex mixture of `count` random product pure states. Components are
/// rounded to k / 10^6 and the mixture normalized exactly, so the result is
/// a valid state with exact entries.
inline BipartiteOperator random_separable_state(std::size_t dim1, std::size_t dim2, std::size_t count,
                                                std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("random_separable_state: count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 1000);
  const std::size_t n = dim1 * dim2;
  ComplexMatrix rho(n, n);
  Rational total;
  for (std::size_t k = 0; k < count; ++k) {
    auto to_std = [](const detail::CVec& x) { return std::vector<std::complex<double>>(x.data(), x.data() + x.size()); };
    const ComplexVector u = round_vector(to_std(detail::random_unit(dim1, false, rng)));
    const ComplexVector v = round_vector(to_std(detail::random_unit(dim2, false, rng)));
    const Rational w(weight(rng), 1000);
    ComplexVector x(n);
    for (std::size_t a = 0; a < dim1; ++a)
      for (std::size_t b = 0; b < dim2; ++b) x[a * dim2 + b] = u[a] * v[b];
    Rational norm2;
    for (const auto& z : x) norm2 += modulus_squared(z);
    if (norm2.is_zero()) throw std::logic_error("random_separable_state: rounded to zero");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rho(i, j) += ComplexRational(w) * x[i] * x[j].conj();
    total += w * norm2;
  }
  ComplexMatrix out = ComplexRational(Rational(1) / total) * rho;
  return {dim1, dim2, Field::Complex, std::move(out)};
}

}  // namespace blockpos
