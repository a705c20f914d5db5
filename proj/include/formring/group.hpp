#pragma once

// Group descriptors for the quadratic groups GQ(2n, R, Lambda) and the Hermitian
// groups GH(2n, R, a_1..a_r, Lambda), together with the form matrix, membership,
// block partitions, stabilization and the pairing M(v, w).
//
// Coordinates are 0-based; coordinate n+i is the hyperbolic partner of i.

#include <array>
#include <string>
#include <vector>

#include "formring/matrix.hpp"

namespace formring {

enum class Flavor { quadratic, hermitian };

struct GroupDescriptor {
  Flavor flavor = Flavor::quadratic;
  int n = 0;
  FormRingPtr form;
  std::vector<Elem> a;  // Hermitian data a_1..a_r

  int r() const { return static_cast<int>(a.size()); }
  int dim() const { return 2 * n; }
  bool hermitian() const { return flavor == Flavor::hermitian; }
  const FiniteRing& ring() const { return form->ring(); }
  ScalarAlgebra scalar() const { return ScalarAlgebra(form); }
};

struct GroupPolicy {
  // Quadratic groups normally need 2n >= 6; the 2n = 4 reduction branch is exercised with this relaxed.
  bool allow_small = false;
  bool validate_generators = true;
};

GroupDescriptor make_group(Flavor flavor, int n, FormRingPtr form, std::vector<Elem> a = {}, GroupPolicy policy = {});

// The same group shape over another form ring (quotients, localizations).
GroupDescriptor rebase_group(const GroupDescriptor& g, FormRingPtr form, const std::vector<Elem>& a);

template <class A>
Matrix<typename A::value_type> form_matrix(const A& alg, const GroupDescriptor& g) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  auto psi = mat_zero(alg, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    psi(i, n + i) = alg.lambda();
    psi(n + i, i) = alg.one();
  }
  for (std::size_t k = 0; k < g.a.size(); ++k) psi(k, k) = alg.scalar(g.a[k]);
  return psi;
}

// psi^{-1} = [[0, I], [conj(lambda) I, -conj(lambda) A1]].
template <class A>
Matrix<typename A::value_type> form_matrix_inverse(const A& alg, const GroupDescriptor& g) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  auto out = mat_zero(alg, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, n + i) = alg.one();
    out(n + i, i) = alg.lambda_bar();
  }
  for (std::size_t k = 0; k < g.a.size(); ++k) out(n + k, n + k) = alg.neg(alg.mul(alg.lambda_bar(), alg.scalar(g.a[k])));
  return out;
}

// Inverse of a group member: psi^{-1} conj(sigma)^t psi.
template <class A>
Matrix<typename A::value_type> group_inverse(const A& alg, const GroupDescriptor& g,
                                             const Matrix<typename A::value_type>& s) {
  return mat_mul(alg, mat_mul(alg, form_matrix_inverse(alg, g), conjugate_transpose(alg, s)), form_matrix(alg, g));
}

struct MemberReport {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

template <class A>
MemberReport is_member(const A& alg, const GroupDescriptor& g, const Matrix<typename A::value_type>& s) {
  MemberReport rep;
  const std::size_t n = static_cast<std::size_t>(g.n);
  if (s.rows != 2 * n || s.cols != 2 * n) {
    rep.ok = false;
    rep.diagnostic = "matrix has the wrong size";
    return rep;
  }
  const auto psi = form_matrix(alg, g);
  const auto lhs = mat_mul(alg, mat_mul(alg, conjugate_transpose(alg, s), psi), s);
  for (std::size_t i = 0; i < 2 * n && rep.ok; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (!alg.equal(lhs(i, j), psi(i, j))) {
        rep.ok = false;
        rep.diagnostic = "form not preserved at entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        break;
      }
  if (!rep.ok || g.hermitian()) return rep;
  // Diagonal entries of conj(gamma)^t alpha and conj(delta)^t beta must lie in Lambda.
  for (std::size_t j = 0; j < n; ++j) {
    auto ga = alg.zero(), db = alg.zero();
    for (std::size_t k = 0; k < n; ++k) {
      ga = alg.add(ga, alg.mul(alg.conj(s(n + k, j)), s(k, j)));
      db = alg.add(db, alg.mul(alg.conj(s(n + k, n + j)), s(k, n + j)));
    }
    if (!alg.in_lambda(ga)) {
      rep.ok = false;
      rep.diagnostic = "diagonal entry " + std::to_string(j + 1) + " of conj(gamma)alpha not in Lambda";
      return rep;
    }
    if (!alg.in_lambda(db)) {
      rep.ok = false;
      rep.diagnostic = "diagonal entry " + std::to_string(j + 1) + " of conj(delta)beta not in Lambda";
      return rep;
    }
  }
  return rep;
}

// Scalar membership that raises singular-matrix for non-invertible input.
MemberReport is_member_checked(const GroupDescriptor& g, const Matrix<Elem>& s);

template <class V>
struct Blocks {
  Matrix<V> alpha, beta, gamma, delta;
};

template <class V>
Blocks<V> block_partition(const Matrix<V>& s) {
  const std::size_t n = s.rows / 2;
  Blocks<V> b;
  for (auto* m : {&b.alpha, &b.beta, &b.gamma, &b.delta}) *m = Matrix<V>(n, n, s.a.front());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b.alpha(i, j) = s(i, j);
      b.beta(i, j) = s(i, n + j);
      b.gamma(i, j) = s(n + i, j);
      b.delta(i, j) = s(n + i, n + j);
    }
  return b;
}

template <class V>
Matrix<V> assemble(const Blocks<V>& b) {
  const std::size_t n = b.alpha.rows;
  Matrix<V> s(2 * n, 2 * n, b.alpha.a.front());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s(i, j) = b.alpha(i, j);
      s(i, n + j) = b.beta(i, j);
      s(n + i, j) = b.gamma(i, j);
      s(n + i, n + j) = b.delta(i, j);
    }
  return s;
}

// part[b][p][q]: block b in (alpha, beta, gamma, delta), split at row and column r.
template <class V>
struct FineBlocks {
  std::array<std::array<std::array<Matrix<V>, 2>, 2>, 4> part;
  std::size_t r = 0;
};

template <class V>
FineBlocks<V> fine_partition(const Matrix<V>& s, std::size_t r) {
  const Blocks<V> b = block_partition(s);
  const std::array<const Matrix<V>*, 4> src{&b.alpha, &b.beta, &b.gamma, &b.delta};
  const std::size_t n = b.alpha.rows;
  FineBlocks<V> f;
  f.r = r;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q) {
        const std::size_t r0 = p ? r : 0, r1 = p ? n : r, c0 = q ? r : 0, c1 = q ? n : r;
        Matrix<V> m(r1 - r0, c1 - c0, s.a.front());
        for (std::size_t i = r0; i < r1; ++i)
          for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*src[k])(i, j);
        f.part[k][p][q] = std::move(m);
      }
  return f;
}

template <class V>
Matrix<V> assemble(const FineBlocks<V>& f) {
  const std::size_t n = f.part[0][0][0].rows + f.part[0][1][0].rows;
  const V fill = f.part[0][1][1].a.empty() ? f.part[0][0][0].a.front() : f.part[0][1][1].a.front();
  Blocks<V> b;
  std::array<Matrix<V>*, 4> dst{&b.alpha, &b.beta, &b.gamma, &b.delta};
  for (std::size_t k = 0; k < 4; ++k) {
    *dst[k] = Matrix<V>(n, n, fill);
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q) {
        const auto& m = f.part[k][p][q];
        const std::size_t r0 = p ? f.r : 0, c0 = q ? f.r : 0;
        for (std::size_t i = 0; i < m.rows; ++i)
          for (std::size_t j = 0; j < m.cols; ++j) (*dst[k])(r0 + i, c0 + j) = m(i, j);
      }
  }
  return assemble(b);
}

// Size 2n -> 2n+2: each block gains one trailing diagonal entry (1 in alpha and delta).
template <class A>
Matrix<typename A::value_type> stabilize(const A& alg, const Matrix<typename A::value_type>& s) {
  const std::size_t n = s.rows / 2;
  auto out = mat_identity(alg, 2 * n + 2);
  auto map = [n](std::size_t i) { return i < n ? i : i + 1; };
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) out(map(i), map(j)) = s(i, j);
  return out;
}

// Row vector conj(v)^t psi.
template <class A>
Vector<typename A::value_type> tilde(const A& alg, const GroupDescriptor& g, const Vector<typename A::value_type>& v) {
  const auto psi = form_matrix(alg, g);
  Vector<typename A::value_type> out(v.size(), alg.zero());
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = 0; k < v.size(); ++k) out[j] = alg.add(out[j], alg.mul(alg.conj(v[k]), psi(k, j)));
  return out;
}

template <class A>
typename A::value_type inner(const A& alg, const GroupDescriptor& g, const Vector<typename A::value_type>& v,
                             const Vector<typename A::value_type>& w) {
  const auto t = tilde(alg, g, v);
  auto acc = alg.zero();
  for (std::size_t k = 0; k < w.size(); ++k) acc = alg.add(acc, alg.mul(t[k], w[k]));
  return acc;
}

// M(v, w) = v w~ - conj(lambda) w v~.
template <class A>
Matrix<typename A::value_type> build_M(const A& alg, const GroupDescriptor& g, const Vector<typename A::value_type>& v,
                                       const Vector<typename A::value_type>& w) {
  const auto tw = tilde(alg, g, w), tv = tilde(alg, g, v);
  const std::size_t m = v.size();
  auto out = mat_zero(alg, m, m);
  const auto lb = alg.lambda_bar();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out(i, j) = alg.sub(alg.mul(v[i], tw[j]), alg.mul(lb, alg.mul(w[i], tv[j])));
  return out;
}

template <class A>
Vector<typename A::value_type> basis_vector(const A& alg, std::size_t m, std::size_t k) {
  Vector<typename A::value_type> v(m, alg.zero());
  v[k] = alg.one();
  return v;
}

// GL(n, R) into GQ(2n, R + R°): g -> diag(h, h) with h = (g, g^{-T}) entrywise in the hyperbolic double.
Matrix<Elem> gl_embedding(const GroupDescriptor& g, const FiniteRing& base, const Matrix<Elem>& x);
Matrix<Elem> gl_embedding_inverse(const GroupDescriptor& g, const FiniteRing& base, const Matrix<Elem>& s);

}  // namespace formring
