#include "doctest.h"

#include <random>

#include "formring/closure.hpp"
#include "formring/suites.hpp"
#include "support.hpp"

using namespace formring;
using namespace test_support;

TEST_CASE("unit in a coset") {
  const auto r = zmod_ring(6);
  const auto c = find_unit_in_coset(*r, Elem(2), ideal_generated(*r, {Elem(3)}));
  CHECK(c.i == Elem(3));
  CHECK(c.u == Elem(5));
  CHECK(c.e == Elem(1));
}

TEST_CASE("coset units over semisimple rings") {
  for (unsigned n : {6u, 10u, 15u, 30u}) {
    const auto r = zmod_ring(n);
    for (Elem gen : r->elements()) {
      const auto ideal = ideal_generated(*r, {gen});
      for (Elem a : r->elements()) {
        const auto c = find_unit_in_coset(*r, a, ideal);
        CHECK(ideal.contains(c.i));
        CHECK(r->is_unit(c.u));
        CHECK(r->mul(c.e, c.e) == c.e);
        CHECK(r->add(a, c.i) == r->mul(c.u, c.e));
        std::vector<Elem> gens{a};
        for (Elem x : ideal.members()) gens.push_back(x);
        CHECK(ideal_generated(*r, gens) == ideal_generated(*r, {c.e}));
      }
    }
  }
}

TEST_CASE("column reduction over Z/6") {
  const auto g = quad(zform(6, 5, {1}));
  const auto alg = g.scalar();
  for (auto [x, y, e] : {std::tuple{2, 3, 1}, std::tuple{2, 4, 4}, std::tuple{3, 0, 3}}) {
    Vector<Elem> v(6, Elem(0));
    v[0] = el(g, x);
    v[1] = el(g, y);
    const auto red = column_reduce_semisimple(g, v);
    CHECK(red.e == el(g, e));
    const auto out = mat_vec(alg, eval(alg, g, red.word), v);
    CHECK(out[0] == Elem(0));
    CHECK(out[1] == Elem(0));
    CHECK(out[2] == red.e);
  }
}

TEST_CASE("isotropy and unimodularity") {
  const auto g = quad(zform(4, 3, {1}));
  const auto alg = g.scalar();
  const auto e0 = basis_vector(alg, 6, 0);
  const auto rep = check_isotropic_unimodular(g, e0);
  CHECK(rep.unimodular);
  CHECK(rep.isotropic);
  REQUIRE(rep.certificate.has_value());
  CHECK(check_certificate(g.ring(), *rep.certificate));
  Vector<Elem> two(6, Elem(0));
  two[0] = Elem(2);
  CHECK_FALSE(check_isotropic_unimodular(g, two).unimodular);
  CHECK_FALSE(unimodular_certificate(g.ring(), two).has_value());
  CHECK_THROWS_AS(reduce_isotropic_unimodular(g, two), Error);
  auto both = e0;
  both[3] = Elem(1);
  CHECK_FALSE(check_isotropic_unimodular(quad(zform(5, 1, {})), both).isotropic);
}

TEST_CASE("reduction of the last basis vector") {
  const auto g = quad(zform(5, 4, {1}));
  const auto alg = g.scalar();
  const auto e = basis_vector(alg, 6, 5);
  const auto r = reduce_isotropic_unimodular(g, e);
  CHECK(vec_equal(alg, mat_vec(alg, eval(alg, g, r.word), e), e));
}

TEST_CASE("isotropic unimodular vectors reduce to the last basis vector") {
  for (const auto& g : {quad(zform(5, 4, {1})), quad(zform(4, 3, {1})), herm(zform(4, 3, {1}), {0}),
                        quad(zform(6, 5, {1})), quad(hypform(2))}) {
    const auto alg = g.scalar();
    const std::size_t m = static_cast<std::size_t>(g.dim());
    std::mt19937_64 rng(43);
    for (int t = 0; t < 25; ++t) {
      const auto v = random_isotropic_vector(g, rng);
      const auto r = reduce_isotropic_unimodular(g, v);
      CHECK(vec_equal(alg, mat_vec(alg, eval(alg, g, r.word), v), basis_vector(alg, m, m - 1)));
    }
  }
}

TEST_CASE("ideal ascent reaches a unit") {
  std::mt19937_64 rng(47);
  const auto g = quad(zform(6, 5, {1}));
  const auto alg = g.scalar();
  for (int t = 0; t < 20; ++t) {
    const auto v = random_isotropic_vector(g, rng);
    const auto w = improve_to_unit(g, v);
    CHECK(g.ring().is_unit(mat_vec(alg, eval(alg, g, w), v)[2]));
  }
}

TEST_CASE("quotient groups and lifts") {
  const auto g = quad(zform(8, 7, {1}));
  const auto ideal = jacobson_radical(g.ring());
  const auto qg = quotient_group(g, ideal);
  CHECK(qg.g.ring().size() == 2);
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_symbol(qg.g, rng);
    const auto lift = lift_symbol(g, qg, s);
    REQUIRE(lift.has_value());
    const auto m = gen_matrix(g.scalar(), g, *lift);
    const auto qm = gen_matrix(qg.g.scalar(), qg.g, s);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) CHECK(qg.q.projection(m(i, j)) == qm(i, j));
  }
}

TEST_CASE("diagonalization modulo the radical") {
  const auto g = herm(zform(8, 7, {1}), {0});
  const auto alg = g.scalar();
  const auto ideal = jacobson_radical(g.ring());
  const auto d = diagonalize_mod_radical(g, mat_identity(alg, 8), ideal);
  CHECK(mat_equal(alg, eval(alg, g, d.theta), d.d));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) CHECK(d.d(i, j) == Elem(0));
  auto bad = mat_identity(alg, 8);
  bad(0, 1) = Elem(1);
  CHECK_THROWS_AS(diagonalize_mod_radical(g, bad, ideal), Error);
}

TEST_CASE("dilation of a local word") {
  const auto g = quad(zform(6, 5, {1}));
  const Elem s = el(g, 2);
  const auto lg = localize_group(g, s);
  CHECK(lg.loc.target->size() == 3);
  std::mt19937_64 rng(59);
  const PolyX alg_s(ScalarAlgebra(lg.g.form)), alg(g.scalar());
  for (int t = 0; t < 5; ++t) {
    const auto local = random_poly_alpha(lg.g, rng, 2, 2);
    const auto res = dilate(g, s, local);
    CHECK(res.certified);
    Elem b = g.ring().one();
    for (int k = 0; k < res.l; ++k) b = g.ring().mul(b, s);
    CHECK(res.b == b);
    const auto image = localize_matrix(lg.loc, eval(alg, g, res.word));
    CHECK(mat_equal(alg_s, image, scale_matrix(alg_s, eval(alg_s, lg.g, local), lg.loc(b))));
  }
}

TEST_CASE("local-global patching") {
  const auto g = quad(zform(6, 5, {1}));
  const PolyX px(g.scalar());
  CHECK(local_cover(g).size() == 2);
  const auto id = local_global_patch(g, PolyWord{});
  CHECK(id.status == "success");
  CHECK(is_identity(px, eval(px, g, id.word)));
  const PolyWord constant{Letter<Poly<Elem>>{make_symbol(px, Family::QE, 0, 1, px.one()), 1}};
  try {
    local_global_patch(g, constant);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
  std::mt19937_64 rng(61);
  for (int t = 0; t < 3; ++t) {
    const auto alpha = random_poly_alpha(g, rng, 3, 3);
    const auto rep = local_global_patch(g, alpha);
    CHECK(rep.status == "success");
    CHECK(rep.verified);
    CHECK(mat_equal(px, eval(px, g, rep.word), eval(px, g, alpha)));
  }
}

TEST_CASE("conjugating into the elementary subgroup") {
  std::mt19937_64 rng(67);
  const auto g = quad(zform(5, 4, {1}));
  const auto alg = g.scalar();
  const auto alpha = random_word(g, 3, rng);
  const auto id = conjugate_into_E(g, mat_identity(alg, 6), alpha);
  CHECK(mat_equal(alg, eval(alg, g, id.word), eval(alg, g, alpha)));
  const auto beta = eval(alg, g, random_word(g, 6, rng));
  const auto rep = conjugate_into_E(g, beta, alpha);
  const auto want = mat_mul(alg, mat_mul(alg, beta, eval(alg, g, alpha)), group_inverse(alg, g, beta));
  CHECK(mat_equal(alg, eval(alg, g, rep.word), want));
  const auto m = solve_m_form(g, gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 1, Elem(2))));
  REQUIRE(m.has_value());
  Vector<Elem> e(6, Elem(0));
  e[m->p] = Elem(1);
  CHECK(mat_equal(alg, mat_add(alg, mat_identity(alg, 6), build_M(alg, g, e, m->w)),
                  gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 1, Elem(2)))));
}

TEST_CASE("commutator containment") {
  const auto g = quad(zform(6, 5, {1}));
  const auto rep = commutator_containment_check(g, el(g, 2), 2, 6, 1);
  CHECK(rep.fail == 0);
  CHECK(rep.mode == "constructive");
}

TEST_CASE("group orders") {
  CHECK(symplectic_group_order(2, 3) == 1451520);
  CHECK(symplectic_group_order(3, 1) == 24);
  CHECK(general_linear_order(2, 3) == 168);
  CHECK(general_linear_order(3, 2) == 48);
}

TEST_CASE("closures of small generating sets") {
  const auto g = quad(zform(2, 1, {1}));
  const auto alg = g.scalar();
  const auto a = gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 1, Elem(1)));
  const auto b = gen_matrix(alg, g, make_symbol(alg, Family::QE, 1, 0, Elem(1)));
  const Closure one(g, {a}, {});
  CHECK(one.complete());
  CHECK(one.size() == 2);
  const Closure s3(g, {a, b}, {});
  CHECK(s3.complete());
  CHECK(s3.size() == 6);
  CHECK(s3.contains(mat_mul(alg, a, b)));
  CHECK_FALSE(s3.contains(gen_matrix(alg, g, make_symbol(alg, Family::QE, 0, 2, Elem(1)))));
  ClosureCaps caps;
  caps.max_elements = 10;
  const auto capped = bfs_closure(g, caps);
  CHECK_FALSE(capped.complete());
  CHECK(capped.size() <= 10);
  CHECK_FALSE(capped.reason().empty());
}

TEST_CASE("GL(3, F2) embeds as the full elementary closure") {
  const auto g = quad(hypform(2));
  const auto rep = check_gl_embedding(g, *zmod_ring(2));
  CHECK(rep.gl_elements == 168);
  CHECK(rep.elementary_elements == 168);
  CHECK(rep.embedded_closure == 168);
  CHECK(rep.ok());
}
