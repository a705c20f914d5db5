#include "formring/matrix.hpp"

#include <array>

#include "formring/kernels/matmul.hpp"

namespace formring {

Matrix<Elem> mat_mul_scalar(const ScalarAlgebra& alg, const Matrix<Elem>& x, const Matrix<Elem>& y) {
  const FiniteRing& r = alg.ring();
  const std::size_t m = x.rows;
  const bool kernel_ok = r.kind() == FiniteRing::Kind::zmod && r.modulus() <= 256 && m <= kernels::kMaxDim &&
                         x.cols == m && y.rows == m && y.cols == m;
  if (!kernel_ok) return mat_mul_generic(alg, x, y);
  std::array<std::uint8_t, 64> a{}, b{}, c{};
  for (std::size_t k = 0; k < m * m; ++k) {
    a[k] = static_cast<std::uint8_t>(x.a[k].index);
    b[k] = static_cast<std::uint8_t>(y.a[k].index);
  }
  kernels::matmul_mod(a.data(), b.data(), c.data(), static_cast<int>(m), r.modulus());
  Matrix<Elem> out(m, m, r.zero());
  for (std::size_t k = 0; k < m * m; ++k) out.a[k] = Elem(c[k]);
  return out;
}

Elem determinant(const FiniteRing& ring, const Matrix<Elem>& x) {
  if (x.rows != x.cols) fail(ErrorKind::precondition, "determinant of a non-square matrix");
  if (!ring.commutative()) fail(ErrorKind::precondition, "determinant needs a commutative ring");
  const std::size_t m = x.rows;
  if (m > 16) fail(ErrorKind::resource_limit, "determinant dimension too large");
  // dp[mask]: signed sum over injections of rows 0..popcount-1 onto the columns in mask.
  std::vector<Elem> dp(std::size_t{1} << m, ring.zero());
  dp[0] = ring.one();
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == ring.zero()) continue;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == m) continue;
    for (std::size_t col = 0; col < m; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      // Inversions added: earlier rows placed in columns to the right of col.
      const int above = __builtin_popcountll(mask >> (col + 1));
      Elem term = ring.mul(dp[mask], x(row, col));
      if (above % 2) term = ring.neg(term);
      const std::size_t next = mask | (std::size_t{1} << col);
      dp[next] = ring.add(dp[next], term);
    }
  }
  return dp.back();
}

Matrix<Elem> inverse_matrix(const FiniteRing& ring, const Matrix<Elem>& x) {
  const Elem d = determinant(ring, x);
  if (!ring.is_unit(d)) fail(ErrorKind::singular_matrix, "determinant " + ring.label(d) + " is not a unit");
  const std::size_t m = x.rows;
  const Elem dinv = ring.inv(d);
  Matrix<Elem> out(m, m, ring.zero());
  if (m == 1) {
    out(0, 0) = dinv;
    return out;
  }
  Matrix<Elem> minor(m - 1, m - 1, ring.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      // Cofactor of (i, j) lands at (j, i).
      for (std::size_t r = 0, rr = 0; r < m; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < m; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = x(r, c);
        }
        ++rr;
      }
      Elem cof = determinant(ring, minor);
      if ((i + j) % 2) cof = ring.neg(cof);
      out(j, i) = ring.mul(cof, dinv);
    }
  return out;
}

}  // namespace formring
