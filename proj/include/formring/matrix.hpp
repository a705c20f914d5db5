#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

#include "formring/algebra.hpp"

namespace formring {

template <class V>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<V> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const V& fill) : rows(r), cols(c), a(r * c, fill) {}
  V& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const V& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class V>
using Vector = std::vector<V>;

template <class A>
Matrix<typename A::value_type> mat_zero(const A& alg, std::size_t r, std::size_t c) {
  return Matrix<typename A::value_type>(r, c, alg.zero());
}

template <class A>
Matrix<typename A::value_type> mat_identity(const A& alg, std::size_t m) {
  auto out = mat_zero(alg, m, m);
  for (std::size_t i = 0; i < m; ++i) out(i, i) = alg.one();
  return out;
}

template <class A>
Matrix<typename A::value_type> mat_mul_generic(const A& alg, const Matrix<typename A::value_type>& x,
                                               const Matrix<typename A::value_type>& y) {
  auto out = mat_zero(alg, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const auto& xik = x(i, k);
      if (alg.is_zero(xik)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out(i, j) = alg.add(out(i, j), alg.mul(xik, y(k, j)));
    }
  return out;
}

// Scalar specialisation routes Z/n matrices through the dispatched kernel.
Matrix<Elem> mat_mul_scalar(const ScalarAlgebra& alg, const Matrix<Elem>& x, const Matrix<Elem>& y);

template <class A>
Matrix<typename A::value_type> mat_mul(const A& alg, const Matrix<typename A::value_type>& x,
                                       const Matrix<typename A::value_type>& y) {
  if constexpr (std::is_same_v<A, ScalarAlgebra>)
    return mat_mul_scalar(alg, x, y);
  else
    return mat_mul_generic(alg, x, y);
}

template <class A>
Matrix<typename A::value_type> mat_add(const A& alg, Matrix<typename A::value_type> x,
                                       const Matrix<typename A::value_type>& y) {
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] = alg.add(x.a[k], y.a[k]);
  return x;
}

template <class A>
Matrix<typename A::value_type> mat_sub(const A& alg, Matrix<typename A::value_type> x,
                                       const Matrix<typename A::value_type>& y) {
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] = alg.sub(x.a[k], y.a[k]);
  return x;
}

template <class A>
Matrix<typename A::value_type> mat_scale(const A& alg, const typename A::value_type& c,
                                         Matrix<typename A::value_type> x) {
  for (auto& v : x.a) v = alg.mul(c, v);
  return x;
}

template <class A>
Matrix<typename A::value_type> conjugate_transpose(const A& alg, const Matrix<typename A::value_type>& x) {
  Matrix<typename A::value_type> out(x.cols, x.rows, alg.zero());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) out(j, i) = alg.conj(x(i, j));
  return out;
}

template <class A>
bool mat_equal(const A& alg, const Matrix<typename A::value_type>& x, const Matrix<typename A::value_type>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t k = 0; k < x.a.size(); ++k)
    if (!alg.equal(x.a[k], y.a[k])) return false;
  return true;
}

template <class A>
bool is_identity(const A& alg, const Matrix<typename A::value_type>& x) {
  return x.rows == x.cols && mat_equal(alg, x, mat_identity(alg, x.rows));
}

template <class A>
Vector<typename A::value_type> mat_vec(const A& alg, const Matrix<typename A::value_type>& x,
                                       const Vector<typename A::value_type>& v) {
  Vector<typename A::value_type> out(x.rows, alg.zero());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) out[i] = alg.add(out[i], alg.mul(x(i, k), v[k]));
  return out;
}

template <class A>
bool vec_equal(const A& alg, const Vector<typename A::value_type>& x, const Vector<typename A::value_type>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!alg.equal(x[k], y[k])) return false;
  return true;
}

template <class A>
std::size_t offdiag_nonzeros(const A& alg, const Matrix<typename A::value_type>& x) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j)
      if (i != j && !alg.is_zero(x(i, j))) ++c;
  return c;
}

// Matrix - I has every entry divisible by X^k.
template <class A>
bool congruent_identity_mod_x(const A& alg, const Matrix<typename A::value_type>& x, int k) {
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) {
      auto e = (i == j) ? alg.sub(x(i, j), alg.one()) : x(i, j);
      if (!alg.zero_below(e, k)) return false;
    }
  return true;
}

// Entrywise map between coefficient types.
template <class W, class V, class F>
Matrix<W> mat_map(const Matrix<V>& x, const F& f) {
  Matrix<W> out;
  out.rows = x.rows;
  out.cols = x.cols;
  out.a.reserve(x.a.size());
  for (const auto& v : x.a) out.a.push_back(f(v));
  return out;
}

// Division-free determinant over a commutative finite ring (subset dynamic programming).
Elem determinant(const FiniteRing& ring, const Matrix<Elem>& x);
// Adjugate-based inverse; throws singular-matrix when the determinant is not a unit.
Matrix<Elem> inverse_matrix(const FiniteRing& ring, const Matrix<Elem>& x);

}  // namespace formring
