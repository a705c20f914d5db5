#include "formring/group.hpp"

#include "formring/generators.hpp"

namespace formring {

namespace {

void validate_generators(const GroupDescriptor& g) {
  const ScalarAlgebra alg = g.scalar();
  const auto elems = g.ring().elements();
  for (const auto& s : enumerate_symbols(g, elems)) {
    const auto rep = is_member(alg, g, raw_gen_matrix(alg, g, s));
    if (!rep.ok)
      fail(ErrorKind::certification,
           "generator " + show_symbol(alg, s) + " fails membership (" + rep.diagnostic + "); form matrix convention rejected");
  }
}

}  // namespace

GroupDescriptor make_group(Flavor flavor, int n, FormRingPtr form, std::vector<Elem> a, GroupPolicy policy) {
  if (!form) fail(ErrorKind::precondition, "missing form ring");
  GroupDescriptor g;
  g.flavor = flavor;
  g.n = n;
  g.form = std::move(form);
  g.a = std::move(a);
  const FiniteRing& ring = g.ring();
  if (flavor == Flavor::quadratic) {
    if (!g.a.empty()) fail(ErrorKind::precondition, "quadratic groups carry no Hermitian data");
    if (n < (policy.allow_small ? 2 : 3)) fail(ErrorKind::precondition, "quadratic group needs 2n >= 6");
  } else {
    if (n <= g.r()) fail(ErrorKind::precondition, "Hermitian group needs n > r");
    if (n < 2) fail(ErrorKind::precondition, "Hermitian group needs n >= 2");
    if (!g.a.empty() && g.a[0] != ring.zero()) fail(ErrorKind::precondition, "Hermitian data must have a_1 = 0");
    for (Elem x : g.a)
      if (!g.form->lam_min().contains(x))
        fail(ErrorKind::precondition, "Hermitian datum " + ring.label(x) + " is not in Lambda_min");
  }
  if (ring.size() > 256) fail(ErrorKind::resource_limit, "ring too large for group computations");
  if (policy.validate_generators) validate_generators(g);
  return g;
}

GroupDescriptor rebase_group(const GroupDescriptor& g, FormRingPtr form, const std::vector<Elem>& a) {
  GroupDescriptor out;
  out.flavor = g.flavor;
  out.n = g.n;
  out.form = std::move(form);
  out.a = a;
  return out;
}

MemberReport is_member_checked(const GroupDescriptor& g, const Matrix<Elem>& s) {
  const ScalarAlgebra alg = g.scalar();
  MemberReport rep = is_member(alg, g, s);
  if (!rep.ok && g.ring().commutative() && s.rows == s.cols && s.rows > 0) {
    const Elem d = determinant(g.ring(), s);
    if (!g.ring().is_unit(d)) fail(ErrorKind::singular_matrix, "matrix is not invertible (det " + g.ring().label(d) + ")");
  }
  return rep;
}

Matrix<Elem> gl_embedding(const GroupDescriptor& g, const FiniteRing& base, const Matrix<Elem>& x) {
  const std::size_t n = x.rows, m = base.size();
  if (x.cols != n || static_cast<int>(n) != g.n) fail(ErrorKind::precondition, "GL embedding size mismatch");
  if (g.ring().size() != m * m || g.ring().kind() != FiniteRing::Kind::hyperbolic)
    fail(ErrorKind::precondition, "GL embedding needs the hyperbolic double of the base ring");
  const Matrix<Elem> xi = inverse_matrix(base, x);
  Matrix<Elem> s(2 * n, 2 * n, g.ring().zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Elem h(static_cast<std::uint16_t>(x(i, j).index * m + xi(j, i).index));
      s(i, j) = h;
      s(n + i, n + j) = h;
    }
  return s;
}

Matrix<Elem> gl_embedding_inverse(const GroupDescriptor& g, const FiniteRing& base, const Matrix<Elem>& s) {
  const std::size_t n = static_cast<std::size_t>(g.n), m = base.size();
  Matrix<Elem> x(n, n, base.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = Elem(static_cast<std::uint16_t>(s(i, j).index / m));
  if (!(gl_embedding(g, base, x) == s)) fail(ErrorKind::precondition, "matrix is not in the image of the GL embedding");
  return x;
}

}  // namespace formring
