#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace formring;
using namespace test_support;

namespace {

// Brute-force involution and ring axioms straight from the tables.
void check_ring_axioms(const FiniteRing& r) {
  const auto xs = r.elements();
  for (Elem a : xs) {
    CHECK(r.conj(r.conj(a)) == a);
    CHECK(r.add(a, r.neg(a)) == r.zero());
    CHECK(r.mul(a, r.one()) == a);
    CHECK(r.mul(r.one(), a) == a);
    for (Elem b : xs) {
      CHECK(r.conj(r.add(a, b)) == r.add(r.conj(a), r.conj(b)));
      CHECK(r.conj(r.mul(a, b)) == r.mul(r.conj(b), r.conj(a)));
      CHECK(r.add(a, b) == r.add(b, a));
    }
  }
  CHECK(r.conj(r.one()) == r.one());
}

}  // namespace

TEST_CASE("zmod elements are residues") {
  auto r = zmod_ring(7);
  CHECK(r->size() == 7);
  CHECK(r->modulus() == 7);
  CHECK(r->from_int(-1) == Elem(6));
  CHECK(r->from_int(15) == Elem(1));
  CHECK(r->mul(Elem(3), Elem(5)) == Elem(1));
  CHECK(r->inv(Elem(3)) == Elem(5));
  CHECK(r->trivial_involution());
  CHECK(r->units().size() == 6);
  check_ring_axioms(*r);
}

TEST_CASE("multiplier must satisfy lambda conj(lambda) = 1") {
  CHECK_NOTHROW(make_zmod(5, 1));
  CHECK_NOTHROW(make_zmod(5, 4));
  CHECK_NOTHROW(make_zmod(8, 3));
  CHECK_NOTHROW(make_zmod(8, 7));
  try {
    make_zmod(6, 2);
    FAIL("expected a multiplier error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::multiplier_invalid);
  }
  CHECK_THROWS_AS(make_zmod(8, 2), Error);
}

TEST_CASE("valid multipliers over Z/n are the square roots of one") {
  for (unsigned n = 2; n <= 16; ++n) {
    auto r = zmod_ring(n);
    for (unsigned l = 0; l < n; ++l) {
      const bool root = (l * l) % n == 1 % n;
      bool accepted = true;
      try {
        check_multiplier(*r, Elem(static_cast<std::uint16_t>(l)));
      } catch (const Error&) {
        accepted = false;
      }
      CHECK_MESSAGE(accepted == root, "n=", n, " lambda=", l);
    }
  }
}

TEST_CASE("hyperbolic double swaps coordinates") {
  auto base = zmod_ring(3);
  auto h = hyperbolic_ring(base);
  CHECK(h->size() == 9);
  CHECK_FALSE(h->trivial_involution());
  // (x, y) has index 3x + y
  const Elem a(1 * 3 + 2), b(2 * 3 + 0);
  CHECK(h->conj(a) == Elem(2 * 3 + 1));
  CHECK(h->mul(a, b) == Elem(2 * 3 + 0));
  CHECK(h->add(a, b) == Elem(0 * 3 + 2));
  check_ring_axioms(*h);
  check_ring_axioms(*hyperbolic_ring(zmod_ring(4)));
}

TEST_CASE("hyperbolic form parameter over Z/2") {
  const auto f = hyperbolic_form_ring(zmod_ring(2));
  CHECK(f.ring().size() == 4);
  CHECK(f.lam().members() == elems({0, 3}));
  CHECK(check_form_axioms(f.ring(), f.lambda(), f.lam()).ok());
}

TEST_CASE("product rings") {
  auto p = product_ring({zmod_ring(2), zmod_ring(3)});
  CHECK(p->size() == 6);
  CHECK(p->units().size() == 2);
  CHECK(idempotents(*p).size() == 4);
  check_ring_axioms(*p);
}

TEST_CASE("Jacobson radical") {
  CHECK(jacobson_radical(*zmod_ring(8)).members() == elems({0, 2, 4, 6}));
  CHECK(jacobson_radical(*zmod_ring(9)).members() == elems({0, 3, 6}));
  CHECK(jacobson_radical(*zmod_ring(5)).count() == 1);
  CHECK(jacobson_radical(*zmod_ring(6)).count() == 1);
  CHECK(is_semisimple(*zmod_ring(6)));
  CHECK_FALSE(is_semisimple(*zmod_ring(4)));
  CHECK(is_nilpotent(*zmod_ring(8), Elem(6)));
  CHECK_FALSE(is_nilpotent(*zmod_ring(6), Elem(2)));
}

TEST_CASE("radical of Z/n matches the product of its primes") {
  for (unsigned n = 2; n <= 16; ++n) {
    unsigned rad = 1, m = n;
    for (unsigned p = 2; p <= m; ++p)
      if (m % p == 0) {
        rad *= p;
        while (m % p == 0) m /= p;
      }
    const auto j = jacobson_radical(*zmod_ring(n));
    CHECK_MESSAGE(j.count() == n / rad, "n=", n);
    for (Elem e : j.members()) CHECK(e.index % rad == 0);
  }
}

TEST_CASE("maximal ideals") {
  CHECK(enumerate_maximal_ideals(*zmod_ring(6)).size() == 2);
  CHECK(enumerate_maximal_ideals(*zmod_ring(5)).size() == 1);
  CHECK(enumerate_maximal_ideals(*zmod_ring(8)).size() == 1);
  CHECK(enumerate_maximal_ideals(*zmod_ring(12)).size() == 2);
  CHECK(enumerate_maximal_ideals(*zmod_ring(30)).size() == 3);
  const auto r = zmod_ring(12);
  CHECK(is_maximal_ideal(*r, ideal_generated(*r, {Elem(3)})));
  CHECK_FALSE(is_maximal_ideal(*r, ideal_generated(*r, {Elem(6)})));
}

TEST_CASE("ideals and additive closures") {
  const auto r = zmod_ring(12);
  CHECK(ideal_generated(*r, {Elem(8)}).members() == elems({0, 4, 8}));
  CHECK(ideal_generated(*r, {Elem(4), Elem(6)}).count() == 6);
  CHECK(additive_closure(*r, {Elem(3)}).count() == 4);
  CHECK(idempotent_generator(*r, ideal_generated(*r, {Elem(4)})) == Elem(4));
  CHECK_FALSE(idempotent_generator(*r, ideal_generated(*r, {Elem(2)})).has_value());
}

TEST_CASE("idempotent powers") {
  const auto r = zmod_ring(6);
  CHECK(idempotent_power(*r, Elem(2)) == Elem(4));
  CHECK(idempotent_power(*r, Elem(3)) == Elem(3));
  CHECK(idempotent_power(*r, Elem(5)) == Elem(1));
  CHECK(idempotent_power(*zmod_ring(8), Elem(2)) == Elem(0));
}

TEST_CASE("localization at an element") {
  SUBCASE("Z/6 at 3 is Z/2") {
    const auto loc = localize_at_element(zmod_ring(6), Elem(3));
    CHECK(loc.idempotent == Elem(3));
    CHECK(loc.target->size() == 2);
    CHECK(loc(Elem(5)) == loc.target->one());
    CHECK(loc(Elem(4)) == loc.target->zero());
    // the map is a ring map
    for (Elem a : loc.source->elements())
      for (Elem b : loc.source->elements()) {
        CHECK(loc(loc.source->mul(a, b)) == loc.target->mul(loc(a), loc(b)));
        CHECK(loc(loc.source->add(a, b)) == loc.target->add(loc(a), loc(b)));
      }
  }
  SUBCASE("a unit changes nothing") {
    const auto loc = localize_at_element(zmod_ring(5), Elem(2));
    CHECK(loc.idempotent == Elem(1));
    CHECK(loc.target->size() == 5);
  }
  SUBCASE("a nilpotent kills the ring") {
    try {
      localize_at_element(zmod_ring(4), Elem(2));
      FAIL("expected localization_zero");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::localization_zero);
    }
  }
  SUBCASE("localizing at a maximal ideal") {
    const auto r = zmod_ring(12);
    const auto loc = localize_at_maximal(r, ideal_generated(*r, {Elem(2)}));
    CHECK(loc.target->size() == 4);
  }
}

TEST_CASE("injectivity conductor") {
  // Z/12 at 2: e = 4, kernel of r -> 4r is {0, 3, 6, 9}; 2^k R meets it only in 0 once k >= 2.
  const auto r = zmod_ring(12);
  CHECK(injectivity_conductor(*r, Elem(2), Elem(4)) == 2);
  CHECK(injectivity_conductor(*r, Elem(5), Elem(1)) == 1);
}

TEST_CASE("quotient and slice rings") {
  const auto r = zmod_ring(12);
  const auto q = quotient_ring(r, ideal_generated(*r, {Elem(4)}));
  CHECK(q.projection.target->size() == 4);
  CHECK(q.projection(Elem(7)) == q.projection(Elem(3)));
  const auto s = slice_ring(r, Elem(9));
  CHECK(s.projection.target->size() == 4);
  CHECK(s.idempotent == Elem(9));
  CHECK_THROWS_AS(slice_ring(r, Elem(2)), Error);
}

TEST_CASE("substitutions over R[X]") {
  const auto f = zform(5, 1, {});
  const PolyX px(ScalarAlgebra{f});
  const PolyXT pxt(px);
  // p = 1 + 2X + 3X^2
  const Poly<Elem> p{{Elem(1), Elem(2), Elem(3)}};
  const auto q = substitute_x_plus_t(pxt, p);
  // p(X + T) at T = cX is p((1 + c)X)
  for (int c = 0; c < 5; ++c) {
    const Elem ce(static_cast<std::uint16_t>(c));
    const auto lhs = collapse_t(px, q, ce);
    const Elem k = px.ring().add(px.ring().one(), ce);
    Poly<Elem> rhs{{Elem(1), px.ring().mul(Elem(2), k), px.ring().mul(Elem(3), px.ring().mul(k, k))}};
    CHECK(px.equal(lhs, px.trim(rhs)));
  }
  // p(T) at T = cX is p(cX), and X + T with T = 0 is p(X)
  CHECK(px.equal(collapse_t(px, substitute_t(pxt, p), Elem(2)), px.scale_var(p, Elem(2))));
  CHECK(px.equal(collapse_t(px, q, Elem(0)), p));
  CHECK(px.evaluate(p, Elem(2)) == Elem((1 + 4 + 12) % 5));
}

TEST_CASE("polynomial arithmetic") {
  const auto f = zform(4, 1, {2});
  const PolyX px(ScalarAlgebra{f});
  const auto x = px.var();
  CHECK(px.degree(px.mul(x, x)) == 2);
  CHECK(px.is_zero(px.mul(px.constant(Elem(2)), px.constant(Elem(2)))));
  CHECK(px.equal(px.shift(px.one(), 3), px.monomial(Elem(1), 3)));
  CHECK(px.zero_below(px.monomial(Elem(3), 2), 2));
  CHECK_FALSE(px.zero_below(px.add(px.one(), x), 1));
}
