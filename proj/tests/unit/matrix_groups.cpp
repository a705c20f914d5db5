#include "doctest.h"

#include <random>
#include <set>

#include "support.hpp"

using namespace formring;
using namespace test_support;

namespace {

// Quadratic membership over Z/N with trivial involution, written against plain residues.
bool oracle_member(const Matrix<Elem>& s, unsigned N, unsigned lambda, const std::set<unsigned>& lam) {
  const std::size_t m = s.rows, n = m / 2;
  auto at = [&](std::size_t i, std::size_t j) -> unsigned { return s(i, j).index; };
  auto psi = [&](std::size_t i, std::size_t j) -> unsigned {
    if (i < n && j == i + n) return lambda;
    if (i >= n && j == i - n) return 1;
    return 0;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      unsigned acc = 0;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) acc = (acc + at(k, i) * psi(k, l) % N * at(l, j)) % N;
      if (acc != psi(i, j)) return false;
    }
  for (std::size_t j = 0; j < n; ++j) {
    unsigned ga = 0, db = 0;
    for (std::size_t k = 0; k < n; ++k) {
      ga = (ga + at(n + k, j) * at(k, j)) % N;
      db = (db + at(n + k, n + j) * at(k, n + j)) % N;
    }
    if (!lam.count(ga) || !lam.count(db)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("form matrix layout") {
  const auto g = herm(zform(4, 3, {1}), {0, 2});
  const auto alg = g.scalar();
  const auto psi = form_matrix(alg, g);
  CHECK(psi(0, 4) == Elem(3));
  CHECK(psi(4, 0) == Elem(1));
  CHECK(psi(1, 1) == Elem(2));
  CHECK(psi(0, 0) == Elem(0));
  CHECK(is_identity(alg, mat_mul(alg, psi, form_matrix_inverse(alg, g))));
}

TEST_CASE("membership examples over Z/7") {
  const auto g = quad(zform(7, 1, {}));
  const auto alg = g.scalar();
  CHECK(is_member(alg, g, gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 1, Elem(3)))).ok);
  auto d = mat_identity(alg, 6);
  d(0, 0) = Elem(2);
  const auto rep = is_member(alg, g, d);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.diagnostic.empty());
  d(3, 3) = Elem(4);
  CHECK(is_member(alg, g, d).ok);
  CHECK_FALSE(is_member(alg, g, mat_identity(alg, 4)).ok);
  CHECK_THROWS_AS(is_member_checked(g, mat_zero(alg, 6, 6)), Error);
}

TEST_CASE("membership agrees with a residue oracle") {
  std::mt19937_64 rng(11);
  struct Inst {
    unsigned N, lambda;
    std::vector<long long> gens;
  };
  for (const Inst& in : {Inst{4, 1, {2}}, Inst{5, 4, {1}}, Inst{4, 3, {1}}, Inst{6, 5, {}}}) {
    const auto g = quad(zform(in.N, in.lambda, in.gens));
    const auto alg = g.scalar();
    std::set<unsigned> lam;
    for (Elem e : g.form->lam().members()) lam.insert(e.index);
    std::size_t members = 0;
    for (int t = 0; t < 200; ++t) {
      auto s = eval(alg, g, random_word(g, 5, rng));
      if (t % 2) {
        const std::size_t i = rng() % 6, j = rng() % 6;
        s(i, j) = g.ring().element(rng() % in.N);
      }
      const bool want = oracle_member(s, in.N, in.lambda, lam);
      CHECK(is_member(alg, g, s).ok == want);
      members += want;
    }
    CHECK(members >= 100);
  }
}

TEST_CASE("group inverse") {
  std::mt19937_64 rng(3);
  for (const auto& g : {quad(zform(5, 4, {1})), herm(zform(4, 3, {1}), {0}), herm(zform(5, 4, {1}), {0, 2})}) {
    const auto alg = g.scalar();
    for (int t = 0; t < 30; ++t) {
      const auto s = eval(alg, g, random_word(g, 6, rng));
      CHECK(is_identity(alg, mat_mul(alg, s, group_inverse(alg, g, s))));
    }
  }
}

TEST_CASE("block partitions round trip") {
  std::mt19937_64 rng(5);
  const auto g = herm(zform(5, 4, {1}), {0, 3});
  const auto alg = g.scalar();
  const auto s = eval(alg, g, random_word(g, 8, rng));
  const auto b = block_partition(s);
  CHECK(mat_equal(alg, assemble(b), s));
  const auto f = fine_partition(s, 2);
  CHECK(mat_equal(alg, assemble(f), s));
}

TEST_CASE("stabilization keeps membership") {
  std::mt19937_64 rng(7);
  const auto f = zform(5, 4, {1});
  const auto g3 = quad(f, 3), g4 = quad(f, 4);
  const auto alg = g3.scalar();
  for (int t = 0; t < 20; ++t) {
    const auto s = eval(alg, g3, random_word(g3, 6, rng));
    const auto st = stabilize(alg, s);
    CHECK(st.rows == 8);
    CHECK(is_member(alg, g4, st).ok);
    CHECK(st(3, 3) == Elem(1));
    CHECK(st(7, 7) == Elem(1));
    CHECK(st(0, 4) == s(0, 3));
  }
}

TEST_CASE("pairing and M(v, w)") {
  const auto g = quad(zform(5, 1, {}));
  const auto alg = g.scalar();
  const auto e0 = basis_vector(alg, 6, 0), e1 = basis_vector(alg, 6, 1), e3 = basis_vector(alg, 6, 3);
  CHECK(inner(alg, g, e0, e3) == Elem(1));
  CHECK(inner(alg, g, e3, e0) == Elem(1));
  CHECK(inner(alg, g, e0, e1) == Elem(0));
  const auto t = tilde(alg, g, e1);
  CHECK(t[4] == Elem(1));
  const auto M = build_M(alg, g, e0, e1);
  auto want = mat_zero(alg, 6, 6);
  want(0, 4) = Elem(1);
  want(1, 3) = Elem(4);
  CHECK(mat_equal(alg, M, want));
  CHECK(is_member(alg, g, mat_add(alg, mat_identity(alg, 6), M)).ok);
}

TEST_CASE("I + M(v, w) is a member for isotropic data") {
  std::mt19937_64 rng(13);
  const auto g = herm(zform(5, 4, {1}), {0});
  const auto alg = g.scalar();
  std::size_t tried = 0;
  for (int t = 0; t < 400 && tried < 30; ++t) {
    const auto v = column(eval(alg, g, random_word(g, 5, rng)), 7);
    Vector<Elem> w(8);
    for (auto& x : w) x = g.ring().element(rng() % 5);
    if (inner(alg, g, v, w) != alg.zero()) continue;
    const auto m = mat_add(alg, mat_identity(alg, 8), build_M(alg, g, v, w));
    // inner(v, v) = 0 always here, so membership reduces to the form identity
    if (!is_member(alg, g, m).ok) continue;
    ++tried;
    CHECK(is_identity(alg, mat_mul(alg, m, group_inverse(alg, g, m))));
  }
  CHECK(tried > 0);
}

TEST_CASE("GL embedding") {
  const auto base = zmod_ring(4);
  const auto g = quad(hypform(4));
  const auto alg = g.scalar();
  const ScalarAlgebra balg(zform(4, 1, {}));
  auto x = mat_identity(balg, 3);
  x(0, 1) = Elem(2);
  const auto s = gl_embedding(g, *base, x);
  CHECK(s(0, 1) == Elem(2 * 4 + 0));
  CHECK(s(1, 0) == Elem(0 * 4 + 2));
  CHECK(s(0, 0) == Elem(1 * 4 + 1));
  CHECK(s(3, 4) == Elem(2 * 4 + 0));
  CHECK(s(4, 3) == Elem(0 * 4 + 2));
  CHECK(is_member(alg, g, s).ok);
  CHECK(mat_equal(balg, gl_embedding_inverse(g, *base, s), x));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int a = 1; a < 4; ++a) {
        auto e = mat_identity(balg, 3);
        e(i, j) = Elem(static_cast<std::uint16_t>(a));
        const auto w = gl_generator_word(g, *base, i, j, Elem(static_cast<std::uint16_t>(a)));
        CHECK(w.size() == 2);
        CHECK(mat_equal(alg, eval(alg, g, w), gl_embedding(g, *base, e)));
      }
    }
}

TEST_CASE("matrix inverse and determinant") {
  const auto r = zmod_ring(7);
  const ScalarAlgebra alg(zform(7, 1, {}));
  Matrix<Elem> m(2, 2, Elem(0));
  m(0, 0) = Elem(2);
  m(0, 1) = Elem(3);
  m(1, 0) = Elem(1);
  m(1, 1) = Elem(4);
  CHECK(determinant(*r, m) == Elem(5));
  CHECK(is_identity(alg, mat_mul(alg, m, inverse_matrix(*r, m))));
  m(1, 1) = Elem(5);  // 2*5 - 3 = 0 mod 7
  CHECK_THROWS_AS(inverse_matrix(*r, m), Error);
}
