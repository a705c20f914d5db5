#include "doctest.h"

#include <random>

#include "formring/suites.hpp"
#include "support.hpp"

using namespace formring;
using namespace test_support;

TEST_CASE("e, r and l generator entries") {
  const auto g = quad(zform(7, 1, {}));
  const auto alg = g.scalar();
  const auto qe = gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 1, Elem(2)));
  CHECK(qe(0, 1) == Elem(2));
  CHECK(qe(4, 3) == Elem(5));
  CHECK(offdiag_nonzeros(alg, qe) == 2);
  const auto qr = gen_matrix(alg, g, make_symbol(alg, Family::QR, 0, 1, Elem(3)));
  CHECK(qr(0, 4) == Elem(3));
  CHECK(qr(1, 3) == Elem(4));
  const auto ql = gen_matrix(alg, g, make_symbol(alg, Family::QL, 0, 1, Elem(3)));
  CHECK(ql(3, 1) == Elem(3));
  CHECK(ql(4, 0) == Elem(4));
}

TEST_CASE("diagonal payloads must lie in the parameter") {
  const auto g = quad(zform(4, 1, {2}));
  const auto alg = g.scalar();
  const auto bad = make_symbol(alg, Family::QR, 0, 0, Elem(1));
  CHECK_FALSE(symbol_violation(alg, g, bad).empty());
  CHECK_THROWS_AS(gen_matrix(alg, g, bad), Error);
  const auto ok = make_symbol(alg, Family::QR, 0, 0, Elem(2));
  CHECK(symbol_valid(alg, g, ok));
  CHECK(gen_matrix(alg, g, ok)(0, 3) == Elem(2));
  CHECK_FALSE(symbol_valid(alg, g, make_symbol(alg, Family::QE, 1, 1, Elem(1))));
  CHECK_FALSE(symbol_valid(alg, g, make_symbol(alg, Family::HE, 0, 1, Elem(1))));
  CHECK_FALSE(symbol_valid(alg, g, make_symbol(alg, Family::QE, 0, 3, Elem(1))));
}

TEST_CASE("Hermitian index constraints") {
  const auto g = herm(zform(5, 4, {1}), {0});
  const auto alg = g.scalar();
  CHECK_FALSE(symbol_valid(alg, g, make_symbol(alg, Family::HE, 0, 1, Elem(1))));
  CHECK(symbol_valid(alg, g, make_symbol(alg, Family::HE, 1, 0, Elem(1))));
  CHECK_FALSE(symbol_valid(alg, g, make_symbol(alg, Family::HR, 0, 1, Elem(1))));
  CHECK(symbol_valid(alg, g, make_symbol(alg, Family::HL, 0, 1, Elem(1))));
  if (auto s = make_vector_symbol(alg, g, Family::HM, 0, {Elem(1)})) CHECK_FALSE(symbol_valid(alg, g, *s));
}

TEST_CASE("vector generator hm") {
  const auto g = herm(zform(5, 4, {1}), {0});
  const auto alg = g.scalar();
  const auto s = make_vector_symbol(alg, g, Family::HM, 1, {Elem(3)});
  REQUIRE(s.has_value());
  CHECK(s->zeta_f == Elem(0));
  const auto m = gen_matrix(alg, g, *s);
  CHECK(m(0, 1) == Elem(3));
  CHECK(m(5, 4) == Elem(2));
  CHECK(m(5, 1) == Elem(0));
  CHECK(is_member(alg, g, m).ok);
}

TEST_CASE("vector payloads outside C have no symbol") {
  // With lambda = -1 over Z/5 the only trace is 0, so 2 z_2^2 must vanish.
  const auto g = herm(zform(5, 4, {1}), {0, 2});
  const auto alg = g.scalar();
  CHECK_FALSE(make_vector_symbol(alg, g, Family::HM, 2, {Elem(0), Elem(1)}).has_value());
  CHECK(make_vector_symbol(alg, g, Family::HM, 2, {Elem(1), Elem(0)}).has_value());
}

TEST_CASE("every generator is a member and its inverse word inverts it") {
  std::mt19937_64 rng(17);
  for (const auto& g : {quad(zform(4, 1, {2})), quad(zform(5, 4, {1})), quad(hypform(3)), herm(zform(4, 3, {1}), {0}),
                        herm(zform(4, 3, {1}), {0, 2}), herm(zform(5, 4, {1}), {0, 3}), herm(hypform(3), {0})}) {
    const auto alg = g.scalar();
    for (Family f : families_for(g))
      for (int t = 0; t < 25; ++t) {
        const auto s = random_symbol(g, f, rng);
        REQUIRE(symbol_valid(alg, g, s));
        const auto m = gen_matrix(alg, g, s);
        CHECK(is_member(alg, g, m).ok);
        CHECK(is_identity(alg, mat_mul(alg, m, eval(alg, g, gen_inverse(alg, g, s)))));
        const auto back = recognize(alg, g, f, s.i, s.j, m);
        REQUIRE(back.has_value());
        CHECK(mat_equal(alg, gen_matrix(alg, g, *back), m));
      }
  }
}

TEST_CASE("word inverse, positive words and simplification") {
  std::mt19937_64 rng(19);
  const auto g = herm(zform(5, 4, {1}), {0});
  const auto alg = g.scalar();
  for (int t = 0; t < 40; ++t) {
    const auto w = random_word(g, 6, rng);
    const auto m = eval(alg, g, w);
    CHECK(is_identity(alg, mat_mul(alg, m, eval(alg, g, word_inverse(w)))));
    const auto p = positive_word(alg, g, word_inverse(w));
    for (const auto& l : p) CHECK(l.exp == 1);
    CHECK(mat_equal(alg, eval(alg, g, p), eval(alg, g, word_inverse(w))));
    const auto s = simplify(alg, concat(w, w));
    CHECK(s.size() <= 2 * w.size());
    CHECK(mat_equal(alg, eval(alg, g, s), mat_mul(alg, m, m)));
  }
  CHECK(simplify(alg, concat(single(make_symbol(alg, Family::HE, 1, 2, Elem(2))),
                             single(make_symbol(alg, Family::HE, 1, 2, Elem(3)))))
            .empty());
}

TEST_CASE("split examples") {
  const auto g = quad(zform(7, 1, {}));
  const auto alg = g.scalar();
  const auto c = split(alg, g, Family::QE, 0, 1, Elem(2), Elem(3));
  CHECK(c.holds);
  CHECK(c.lhs.size() == 1);
  CHECK(c.lhs.front().s.a == Elem(5));
  CHECK(c.rhs.size() == 2);
}

TEST_CASE("vector splits carry a diagonal correction") {
  std::mt19937_64 rng(23);
  const auto g = herm(zform(4, 3, {1}), {0, 2});
  const auto alg = g.scalar();
  std::size_t checked = 0;
  for (Family f : {Family::HM, Family::HRV})
    for (int t = 0; t < 60; ++t) {
      const auto s1 = random_symbol(g, f, rng), s2 = random_symbol(g, f, rng);
      std::vector<Elem> sum;
      for (std::size_t k = 0; k < s1.zeta.size(); ++k) sum.push_back(alg.add(s1.zeta[k], s2.zeta[k]));
      if (!make_vector_symbol(alg, g, f, s1.i, sum)) continue;
      const auto c = split_vector(alg, g, f, s1.i, s1.zeta, s2.zeta);
      CHECK(c.holds);
      CHECK(c.lhs.back().s.family == (f == Family::HM ? Family::HL : Family::HR));
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("commutator witnesses") {
  std::mt19937_64 rng(29);
  for (const auto& g : {quad(zform(4, 3, {1})), quad(zform(5, 4, {1})), herm(zform(4, 3, {1}), {0}),
                        herm(zform(5, 4, {1}), {0})}) {
    const auto alg = g.scalar();
    for (Family f : families_for(g)) {
      const auto s = random_symbol(g, f, rng);
      const auto w = commutator_witness(g, s);
      CHECK_FALSE(w.method.empty());
      CHECK(mat_equal(alg, commutator(alg, g, eval(alg, g, w.w1), eval(alg, g, w.w2)), gen_matrix(alg, g, s)));
    }
  }
}

TEST_CASE("interleaving identity") {
  std::mt19937_64 rng(31);
  const auto g = quad(zform(5, 4, {1}));
  const auto alg = g.scalar();
  std::vector<Word<Elem>> a, b;
  Word<Elem> plain;
  for (int k = 0; k < 4; ++k) {
    a.push_back(random_word(g, 2, rng));
    b.push_back(k == 2 ? Word<Elem>{} : random_word(g, 2, rng));
    plain = concat(concat(plain, a.back()), b.back());
  }
  CHECK(mat_equal(alg, eval(alg, g, interleave_identity(a, b)), eval(alg, g, plain)));
  a.pop_back();
  CHECK_THROWS_AS(interleave_identity(a, b), Error);
}

TEST_CASE("normal form for a word congruent to I mod X") {
  const auto g = quad(zform(5, 4, {1}));
  const PolyX px(g.scalar());
  // qe_12(2 + 3X) qe_12(-2)
  const PolyWord w{Letter<Poly<Elem>>{make_symbol(px, Family::QE, 0, 1, Poly<Elem>{{Elem(2), Elem(3)}}), 1},
                   Letter<Poly<Elem>>{make_symbol(px, Family::QE, 0, 1, px.constant(Elem(3))), 1}};
  const auto pieces = normal_form_congruent_X(px, g, w);
  REQUIRE_FALSE(pieces.empty());
  for (const auto& p : pieces) CHECK(symbol_congruent(px, g, p.core, 1));
  CHECK(mat_equal(px, eval(px, g, assemble_normal_form(px, pieces)), eval(px, g, w)));
}

TEST_CASE("normal form over random words") {
  std::mt19937_64 rng(37);
  for (const auto& g : {quad(zform(4, 3, {1})), herm(zform(5, 4, {1}), {0})}) {
    const PolyX px(g.scalar());
    for (int t = 0; t < 10; ++t) {
      const auto w = random_poly_alpha(g, rng, 3, 2);
      const auto pieces = normal_form_congruent_X(px, g, w);
      CHECK(mat_equal(px, eval(px, g, assemble_normal_form(px, pieces)), eval(px, g, w)));
    }
  }
}

TEST_CASE("I + M(v, w) factorization") {
  std::mt19937_64 rng(41);
  const auto g = quad(zform(5, 4, {1}));
  const auto alg = g.scalar();
  const auto eps = random_word(g, 4, rng);
  const Vector<Elem> zero(6, Elem(0));
  CHECK(is_identity(alg, eval(alg, g, factor_I_plus_M(alg, g, eps, zero))));
  const auto v = column(eval(alg, g, eps), 5);
  const auto w = random_admissible_w(g, v, rng);
  REQUIRE(w.has_value());
  const auto out = factor_I_plus_M(alg, g, eps, *w);
  CHECK(mat_equal(alg, eval(alg, g, out), mat_add(alg, mat_identity(alg, 6), build_M(alg, g, v, *w))));
}

TEST_CASE("conjugation splitting") {
  const auto g = quad(zform(5, 4, {1}));
  const PolyX px(g.scalar());
  const auto gs = make_symbol(g.scalar(), Family::QE, 1, 0, Elem(2));
  const PolyWord theta{Letter<Poly<Elem>>{make_symbol(px, Family::QE, 0, 2, px.monomial(Elem(3), 2)), 1}};
  const auto out = conjugation_split(px, g, gs, theta, 1);
  for (const auto& l : out) CHECK(symbol_congruent(px, g, l.s, 1));
  const auto G = gen_matrix(px, g, constant_word(px, single(gs)).front().s);
  CHECK(mat_equal(px, eval(px, g, out), mat_mul(px, mat_mul(px, G, eval(px, g, theta)), group_inverse(px, g, G))));
  // theta must vanish to order 2m
  CHECK_THROWS_AS(conjugation_split(px, g, gs, theta, 2), Error);
}
