#include "doctest.h"

#include <set>

#include "support.hpp"

using namespace formring;
using namespace test_support;

namespace {

// Residue arithmetic oracle for Z/n with trivial involution.
std::set<unsigned> min_oracle(unsigned n, unsigned l) {
  std::set<unsigned> s;
  for (unsigned a = 0; a < n; ++a) s.insert((a + n * n - l * a % n) % n);
  return s;
}

std::set<unsigned> max_oracle(unsigned n, unsigned l) {
  std::set<unsigned> s;
  for (unsigned a = 0; a < n; ++a)
    if ((a + l * a) % n == 0) s.insert(a);
  return s;
}

// Smallest set containing seed closed under + and x -> a^2 x.
std::set<unsigned> closure_oracle(unsigned n, std::set<unsigned> seed) {
  seed.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    const auto cur = seed;
    for (unsigned x : cur) {
      for (unsigned y : cur) grew |= seed.insert((x + y) % n).second;
      for (unsigned a = 0; a < n; ++a) grew |= seed.insert(a * a % n * x % n).second;
    }
  }
  return seed;
}

std::set<unsigned> as_set(const ElementSet& e) {
  std::set<unsigned> s;
  for (Elem x : e.members()) s.insert(x.index);
  return s;
}

}  // namespace

TEST_CASE("lambda_min and lambda_max examples") {
  auto z5 = zmod_ring(5), z4 = zmod_ring(4);
  CHECK(lambda_min(*z5, Elem(1)).members() == elems({0}));
  CHECK(lambda_max(*z5, Elem(1)).members() == elems({0}));
  CHECK(lambda_min(*z5, Elem(4)).count() == 5);
  CHECK(lambda_max(*z5, Elem(4)).count() == 5);
  CHECK(lambda_min(*z4, Elem(3)).members() == elems({0, 2}));
  CHECK(lambda_max(*z4, Elem(3)).count() == 4);
  CHECK(lambda_min(*z4, Elem(1)).members() == elems({0}));
  CHECK(lambda_max(*z4, Elem(1)).members() == elems({0, 2}));
}

TEST_CASE("lambda_min and lambda_max agree with residue arithmetic") {
  for (unsigned n = 2; n <= 16; ++n) {
    auto r = zmod_ring(n);
    for (unsigned l = 0; l < n; ++l) {
      if ((l * l) % n != 1 % n) continue;
      const Elem le(static_cast<std::uint16_t>(l));
      CHECK_MESSAGE(as_set(lambda_min(*r, le)) == min_oracle(n, l), "n=", n, " l=", l);
      CHECK_MESSAGE(as_set(lambda_max(*r, le)) == max_oracle(n, l), "n=", n, " l=", l);
    }
  }
}

TEST_CASE("build_form_parameter is the least closed set between the bounds") {
  for (unsigned n = 2; n <= 12; ++n) {
    auto r = zmod_ring(n);
    for (unsigned l = 0; l < n; ++l) {
      if ((l * l) % n != 1 % n) continue;
      const Elem le(static_cast<std::uint16_t>(l));
      const auto mx = max_oracle(n, l);
      for (unsigned g = 0; g < n; ++g) {
        std::set<unsigned> seed = min_oracle(n, l);
        seed.insert(g);
        const auto want = closure_oracle(n, seed);
        bool inside = true;
        for (unsigned x : want) inside = inside && mx.count(x);
        if (!inside) {
          CHECK_THROWS_AS(build_form_parameter(*r, le, {Elem(static_cast<std::uint16_t>(g))}), Error);
          continue;
        }
        const auto p = build_form_parameter(*r, le, {Elem(static_cast<std::uint16_t>(g))});
        CHECK_MESSAGE(as_set(p.members) == want, "n=", n, " l=", l, " g=", g);
        CHECK(check_form_axioms(*r, le, p.members).ok());
      }
    }
  }
}

TEST_CASE("parameters outside the bounds are rejected") {
  auto z4 = zmod_ring(4), z5 = zmod_ring(5);
  CHECK(build_form_parameter(*z4, Elem(1), {Elem(2)}).members.members() == elems({0, 2}));
  try {
    build_form_parameter(*z5, Elem(1), {Elem(1)});
    FAIL("expected invalid_form_parameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_form_parameter);
  }
  ElementSet odd(4);
  odd.insert(Elem(0));
  odd.insert(Elem(1));
  const auto rep = check_form_axioms(*z4, Elem(1), odd);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.additive);
  CHECK_FALSE(rep.diagnostic.empty());
}

TEST_CASE("trace solutions") {
  const auto f1 = zform(5, 1, {});
  CHECK(f1->solve_trace(Elem(1)) == Elem(3));
  CHECK(f1->solve_trace(Elem(0)) == Elem(0));
  const auto f4 = zform(5, 4, {1});
  CHECK(f4->solve_trace(Elem(0)) == Elem(0));
  CHECK_FALSE(f4->solve_trace(Elem(2)).has_value());
  // z + lambda conj(z) = t for every returned solution
  const auto h = hypform(3);
  const auto& r = h->ring();
  for (Elem t : r.elements())
    if (auto z = h->solve_trace(t)) CHECK(r.add(*z, r.mul(h->lambda(), r.conj(*z))) == t);
}

TEST_CASE("induced parameter on R[X]") {
  const auto f5 = zform(5, 1, {});
  CHECK_FALSE(poly_parameter_contains(*f5, elems({0, 1})));
  CHECK(poly_parameter_contains(*f5, {}));
  const auto f4 = zform(4, 1, {2});
  CHECK(poly_parameter_contains(*f4, elems({2})));
  CHECK(poly_parameter_contains(*f4, elems({0, 0, 2})));
  CHECK_FALSE(poly_parameter_contains(*f4, elems({0, 2})));
  CHECK_FALSE(poly_parameter_contains(*f4, elems({1})));
  // X a X = a X^2 stays inside when a does
  const PolyX px(ScalarAlgebra{f4});
  const auto x = px.var();
  const auto a = px.constant(Elem(2));
  CHECK(px.in_lambda(px.mul(px.mul(x, a), px.conj(x))));
}

TEST_CASE("induced parameter through a localization") {
  const auto f = zform(6, 5, {});
  CHECK(f->lam().members() == elems({0, 2, 4}));
  const auto at2 = induce_localized_parameter(*f, localize_at_element(f->ring_ptr(), Elem(2)));
  CHECK(at2.ring().size() == 3);
  CHECK(at2.lam().count() == 3);
  const auto at3 = induce_localized_parameter(*f, localize_at_element(f->ring_ptr(), Elem(3)));
  CHECK(at3.ring().size() == 2);
  CHECK(at3.lam().count() == 1);
  CHECK(check_form_axioms(at2.ring(), at2.lambda(), at2.lam()).ok());
  CHECK(check_form_axioms(at3.ring(), at3.lambda(), at3.lam()).ok());
}

TEST_CASE("induced parameter through a quotient") {
  const auto f = zform(8, 7, {1});
  const auto r = f->ring_ptr();
  const auto q = quotient_ring(r, ideal_generated(*r, {Elem(2)}));
  const auto g = induce_parameter(*f, q.projection);
  CHECK(g.ring().size() == 2);
  CHECK(check_form_axioms(g.ring(), g.lambda(), g.lam()).ok());
}

TEST_CASE("axioms hold for every valid parameter on small hyperbolic doubles") {
  for (unsigned n : {2u, 3u, 4u}) {
    const auto lr = make_hyperbolic_double(zmod_ring(n));
    const auto& r = *lr.ring;
    const auto lo = lambda_min(r, lr.lambda), hi = lambda_max(r, lr.lambda);
    CHECK(lo.subset_of(hi));
    for (Elem g : hi.members()) {
      const auto p = build_form_parameter(r, lr.lambda, {g});
      CHECK(check_form_axioms(r, lr.lambda, p.members).ok());
      CHECK(lo.subset_of(p.members));
    }
  }
}
