#include "doctest.h"

#include <random>
#include <string>

#include "formring/suites.hpp"
#include "support.hpp"

using namespace formring;
using namespace test_support;

namespace {

ErrorKind kind_of(const std::string& spec, bool group) {
  try {
    if (group)
      parse_group_spec(spec);
    else
      parse_ring_spec(spec);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for ", spec);
  return ErrorKind::unsupported;
}

}  // namespace

TEST_CASE("ring specs") {
  const auto r = parse_ring_spec("zmod:5:lambda=1");
  CHECK(r.base.ring->size() == 5);
  CHECK(r.form->lambda() == Elem(1));
  CHECK(r.form->lam().count() == 1);
  const auto g = parse_ring_spec("zmod:5:lambda=4;gens=1");
  CHECK(g.form->lam().count() == 5);
  const auto h = parse_ring_spec("hyp:zmod:2");
  CHECK(h.hyperbolic);
  CHECK(h.form->ring().size() == 4);
  CHECK(h.form->lam().members() == elems({0, 3}));
  CHECK(parse_ring_spec("poly:zmod:4:lambda=3").polynomial);
}

TEST_CASE("group specs") {
  const auto q = parse_group_spec("quadratic:3:zmod:5:lambda=4;gens=1");
  CHECK_FALSE(q.group.hermitian());
  CHECK(q.group.n == 3);
  const auto h = parse_group_spec("hermitian:4:zmod:4:lambda=3;gens=1;a=0,2");
  CHECK(h.group.hermitian());
  CHECK(h.group.r() == 2);
  CHECK(h.group.a[1] == Elem(2));
  CHECK(parse_group_spec("zmod:5:lambda=4", 4).group.n == 4);
}

TEST_CASE("spec errors") {
  CHECK(kind_of("zmod:6:lambda=2", false) == ErrorKind::multiplier_invalid);
  CHECK(kind_of("zmod:5:lambda=1;gens=1", false) == ErrorKind::invalid_form_parameter);
  CHECK(kind_of("zmod:6:lambda=2x", false) == ErrorKind::parse);
  CHECK(kind_of("zmodd:5", false) == ErrorKind::parse);
  CHECK(kind_of("quadratic:3:zmod:5;a=0", true) == ErrorKind::parse);
  try {
    parse_ring_spec("zmod:6:lambda=2x");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 16") != std::string::npos);
  }
}

TEST_CASE("element and word JSON round trips") {
  const auto spec = parse_group_spec("hermitian:4:zmod:5:lambda=4;gens=1;a=0");
  const auto& g = spec.group;
  const auto alg = g.scalar();
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const auto w = random_word(g, 5, rng);
    const auto j = word_json(w);
    CHECK(j.at(0).at("i").get<int>() == w.front().s.i + 1);
    const auto back = word_from_json(g, j);
    CHECK(back == w);
    const auto m = eval(alg, g, w);
    CHECK(mat_equal(alg, matrix_from_json(g, matrix_json(spec, m)), m));
    const auto v = column(m, 7);
    CHECK(vector_from_json(g, vector_json(v)) == v);
  }
  CHECK(element_from_json(g.ring(), element_json(g.ring(), Elem(3))) == Elem(3));
  CHECK_THROWS_AS(word_from_json(g, json::parse(R"([{"family":"qx","i":1,"j":2,"payload":1}])")), Error);
  CHECK_THROWS_AS(matrix_from_json(g, json::parse("[[1,0],[0,1]]")), Error);
}

TEST_CASE("polynomial word JSON") {
  const auto spec = parse_group_spec("quadratic:3:zmod:6:lambda=5;gens=1");
  std::mt19937_64 rng(73);
  const auto w = random_poly_alpha(spec.group, rng, 3, 3);
  CHECK(poly_word_from_json(spec.group, poly_word_json(w)) == w);
}

TEST_CASE("form parameter JSON") {
  const auto j = form_parameter_json(*parse_ring_spec("zmod:4:lambda=1;gens=2").form);
  CHECK(j.dump().find("lambda") != std::string::npos);
}

TEST_CASE("suite reports are reproducible") {
  const auto spec = parse_group_spec(default_group("split"));
  SuiteConfig cfg;
  cfg.cases = 24;
  cfg.seed = 5;
  cfg.threads = 1;
  const auto serial = run_suite("split", spec, cfg).to_json();
  cfg.threads = 4;
  const auto parallel = run_suite("split", spec, cfg).to_json();
  CHECK(serial == parallel);
  CHECK(serial.at("tally").at("pass").get<int>() == 24);
  cfg.seed = 6;
  CHECK(run_suite("split", spec, cfg).to_json() != serial);
}

TEST_CASE("empty and unknown suites") {
  const auto spec = parse_group_spec(default_group("membership"));
  SuiteConfig cfg;
  cfg.cases = 0;
  const auto rep = run_suite("membership", spec, cfg);
  CHECK(rep.cases.empty());
  CHECK(rep.exit_code() == 0);
  CHECK_THROWS_AS(run_suite("nope", spec, cfg), Error);
  for (const auto& name : suite_names()) CHECK_NOTHROW(parse_group_spec(default_group(name)));
}

TEST_CASE("case seeds are independent of order") {
  auto a = case_rng(9, 3), b = case_rng(9, 3), c = case_rng(9, 4);
  CHECK(a() == b());
  CHECK(case_rng(9, 3)() != c());
}
