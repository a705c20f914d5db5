#include "formring/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

namespace formring {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Context {
  const GroupSpec& spec;
  const GroupDescriptor& g;
  const SuiteConfig& cfg;
  ScalarAlgebra alg;
  std::vector<Family> fams;
};

CaseResult verdict(bool ok, std::string detail = {}) {
  CaseResult c;
  c.status = ok ? "pass" : "fail";
  c.detail = std::move(detail);
  return c;
}

Vector<Elem> last_column(const Matrix<Elem>& m) {
  Vector<Elem> v(m.rows);
  for (std::size_t k = 0; k < m.rows; ++k) v[k] = m(k, m.cols - 1);
  return v;
}

Letter<Elem> constant_letter(const PolyX& px, const Letter<Poly<Elem>>& l) {
  Letter<Elem> c;
  c.s.family = l.s.family;
  c.s.i = l.s.i;
  c.s.j = l.s.j;
  c.s.a = px.coeff(l.s.a, 0);
  for (const auto& z : l.s.zeta) c.s.zeta.push_back(px.coeff(z, 0));
  c.s.zeta_f = px.coeff(l.s.zeta_f, 0);
  return c;
}

// Payload with the given low-order coefficient and random coefficients in degrees [from, to].
Poly<Elem> random_poly(const PolyX& px, const FiniteRing& ring, Elem low, int from, int to, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, ring.size() - 1);
  Poly<Elem> p = px.constant(low);
  for (int d = from; d <= to; ++d) p = px.add(p, px.monomial(ring.element(pick(rng)), static_cast<std::size_t>(d)));
  return p;
}

// Symbol over R[X] of family f whose payload has no terms below degree `from` (other than the given constant).
std::optional<Symbol<Poly<Elem>>> random_poly_symbol(const GroupDescriptor& g, const Symbol<Elem>& base, int from, int to,
                                                     bool keep_constant, std::mt19937_64& rng) {
  const PolyX px(g.scalar());
  const auto& ring = g.ring();
  if (is_vector_family(base.family)) {
    std::vector<Poly<Elem>> z;
    for (Elem c : base.zeta) z.push_back(random_poly(px, ring, keep_constant ? c : ring.zero(), from, to, rng));
    return make_vector_symbol(px, g, base.family, base.i, z);
  }
  auto s = make_symbol(px, base.family, base.i, base.j,
                       random_poly(px, ring, keep_constant ? base.a : ring.zero(), from, to, rng));
  if (!symbol_valid(px, g, s)) return std::nullopt;
  return s;
}

// ---- cases ------------------------------------------------------------------------------------

CaseResult membership_case(const Context& cx, std::size_t k, std::mt19937_64& rng) {
  const Symbol<Elem> s = random_symbol(cx.g, cx.fams[k % cx.fams.size()], rng);
  const auto rep = is_member(cx.alg, cx.g, gen_matrix(cx.alg, cx.g, s));
  CaseResult c = verdict(rep.ok, rep.ok ? show_symbol(cx.alg, s) : show_symbol(cx.alg, s) + ": " + rep.diagnostic);
  c.witness = word_json(single(s));
  return c;
}

CaseResult split_case(const Context& cx, std::size_t k, std::mt19937_64& rng) {
  const Family f = cx.fams[k % cx.fams.size()];
  SplitCertificate<Elem> cert;
  if (is_vector_family(f)) {
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      const auto s1 = random_symbol(cx.g, f, rng), s2 = random_symbol(cx.g, f, rng);
      std::vector<Elem> sum;
      for (std::size_t t = 0; t < s1.zeta.size(); ++t) sum.push_back(cx.alg.add(s1.zeta[t], s2.zeta[t]));
      if (!make_vector_symbol(cx.alg, cx.g, f, s1.i, sum)) continue;
      cert = split_vector(cx.alg, cx.g, f, s1.i, s1.zeta, s2.zeta);
      found = true;
    }
    if (!found) {
      CaseResult c;
      c.status = "unknown";
      c.detail = "no payload pair with sum in C";
      return c;
    }
  } else {
    const auto s1 = random_symbol(cx.g, f, rng);
    Symbol<Elem> s2 = random_symbol(cx.g, f, rng);
    if (s1.i == s1.j) {
      const auto pool = diagonal_pool(cx.g);
      s2.a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    } else {
      s2.a = cx.g.ring().element(std::uniform_int_distribution<std::size_t>(0, cx.g.ring().size() - 1)(rng));
    }
    cert = split(cx.alg, cx.g, f, s1.i, s1.j, s1.a, s2.a);
  }
  CaseResult c = verdict(cert.holds, show_word(cx.alg, cert.lhs) + " = " + show_word(cx.alg, cert.rhs));
  c.witness = json{{"lhs", word_json(cert.lhs)}, {"rhs", word_json(cert.rhs)}};
  return c;
}

CaseResult commutator_case(const Context& cx, std::size_t k, std::mt19937_64& rng) {
  const Symbol<Elem> s = random_symbol(cx.g, cx.fams[k % cx.fams.size()], rng);
  const auto w = commutator_witness(cx.g, s, cx.cfg.seed + k);
  const auto lhs = commutator(cx.alg, cx.g, eval(cx.alg, cx.g, w.w1), eval(cx.alg, cx.g, w.w2));
  CaseResult c = verdict(mat_equal(cx.alg, lhs, gen_matrix(cx.alg, cx.g, s)), show_symbol(cx.alg, s) + " via " + w.method);
  c.witness = json{{"symbol", word_json(single(s))}, {"w1", word_json(w.w1)}, {"w2", word_json(w.w2)}};
  return c;
}

CaseResult key5_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const Word<Elem> eps = random_word(cx.g, 5, rng);
  const Vector<Elem> v = last_column(eval(cx.alg, cx.g, eps));
  const auto w = random_admissible_w(cx.g, v, rng);
  if (!w) {
    CaseResult c;
    c.status = "unknown";
    c.detail = "no admissible w found by sampling";
    return c;
  }
  const Word<Elem> out = factor_I_plus_M(cx.alg, cx.g, eps, *w);
  const std::size_t m = static_cast<std::size_t>(cx.g.dim());
  const auto target = mat_add(cx.alg, mat_identity(cx.alg, m), build_M(cx.alg, cx.g, v, *w));
  const bool exact = mat_equal(cx.alg, eval(cx.alg, cx.g, out), target);
  const bool short_enough = out.size() <= 2 * eps.size() + m + 1;
  CaseResult c = verdict(exact && short_enough, "length " + std::to_string(out.size()) + (exact ? "" : ", eval mismatch"));
  c.witness = json{{"w", vector_json(*w)}, {"eps", word_json(eps)}, {"word", word_json(out)}};
  return c;
}

CaseResult key1_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const PolyX px(cx.alg);
  const PolyWord w = random_poly_alpha(cx.g, rng, 3, 3);
  const auto pieces = normal_form_congruent_X(px, cx.g, w);
  bool cores = true;
  for (const auto& p : pieces) cores = cores && symbol_congruent(px, cx.g, p.core, 1);
  const PolyWord back = assemble_normal_form(px, pieces);
  const bool exact = mat_equal(px, eval(px, cx.g, back), eval(px, cx.g, w));
  CaseResult c = verdict(exact && cores, std::to_string(pieces.size()) + " conjugated cores");
  c.witness = json{{"input", poly_word_json(w)}, {"normal_form", poly_word_json(back)}};
  return c;
}

CaseResult key3_case(const Context& cx, std::size_t k, std::mt19937_64& rng) {
  const PolyX px(cx.alg);
  const int m = 1 + static_cast<int>(k % 2);
  PolyWord theta;
  const std::size_t len = 1 + k % 3;
  for (int attempt = 0; attempt < 256 && theta.size() < len; ++attempt) {
    const auto base = random_symbol(cx.g, rng);
    if (auto s = random_poly_symbol(cx.g, base, 2 * m, 2 * m + 1, false, rng))
      if (!is_identity_symbol(px, *s)) theta.push_back(Letter<Poly<Elem>>{*s, 1});
  }
  const Symbol<Elem> gs = random_symbol(cx.g, rng);
  const PolyWord out = conjugation_split(px, cx.g, gs, theta, m);
  const auto G = raw_gen_matrix(px, cx.g, constant_word(px, single(gs)).front().s);
  const auto target = mat_mul(px, mat_mul(px, G, eval(px, cx.g, theta)), group_inverse(px, cx.g, G));
  bool congruent = true;
  for (const auto& l : out) congruent = congruent && symbol_congruent(px, cx.g, l.s, m);
  CaseResult c = verdict(mat_equal(px, eval(px, cx.g, out), target) && congruent,
                         "m=" + std::to_string(m) + ", " + std::to_string(out.size()) + " letters");
  c.witness = json{{"g", word_json(single(gs))}, {"theta", poly_word_json(theta)}, {"word", poly_word_json(out)}};
  return c;
}

CaseResult swan_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const Vector<Elem> v = random_isotropic_vector(cx.g, rng);
  const auto r = reduce_isotropic_unimodular(cx.g, v);
  const auto out = mat_vec(cx.alg, eval(cx.alg, cx.g, r.word), v);
  const std::size_t m = static_cast<std::size_t>(cx.g.dim());
  CaseResult c = verdict(vec_equal(cx.alg, out, basis_vector(cx.alg, m, m - 1)),
                         std::to_string(r.word.size()) + " letters");
  c.witness = json{{"vector", vector_json(v)}, {"word", word_json(r.word)}};
  return c;
}

bool entries_in(const Matrix<Elem>& m, const ElementSet& ideal, const FiniteRing& ring) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const Elem e = i == j ? ring.sub(m(i, j), ring.one()) : m(i, j);
      if (!ideal.contains(e)) return false;
    }
  return true;
}

CaseResult sol3a_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const auto& ring = cx.g.ring();
  const ElementSet ideal = jacobson_radical(ring);
  const auto pool = ideal.members();
  const auto syms = enumerate_symbols(cx.g, pool);
  Word<Elem> w;
  if (!syms.empty())
    for (int t = 0; t < 6; ++t)
      w.push_back(Letter<Elem>{syms[std::uniform_int_distribution<std::size_t>(0, syms.size() - 1)(rng)], 1});
  // Hyperbolic unit diagonal diag(u, conj(u)^{-1}) with u = 1 mod I, away from the first r coordinates.
  const std::size_t n = static_cast<std::size_t>(cx.g.n);
  auto h = mat_identity(cx.alg, 2 * n);
  for (std::size_t i = static_cast<std::size_t>(cx.g.r()); i < n; ++i) {
    const Elem u = ring.add(ring.one(), pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    h(i, i) = u;
    h(n + i, n + i) = ring.inv(ring.conj(u));
  }
  if (!is_member(cx.alg, cx.g, h)) h = mat_identity(cx.alg, 2 * n);
  const auto beta = mat_mul(cx.alg, h, eval(cx.alg, cx.g, w));
  const auto d = diagonalize_mod_radical(cx.g, beta, ideal);
  bool ok = mat_equal(cx.alg, mat_mul(cx.alg, beta, eval(cx.alg, cx.g, d.theta)), d.d);
  std::string why = ok ? "" : "beta theta != D";
  for (std::size_t i = 0; i < 2 * n && ok; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (i != j && !cx.alg.is_zero(d.d(i, j))) ok = false, why = "D not diagonal";
      if (i == j && (!ring.is_unit(d.d(i, i)) || !ideal.contains(ring.sub(d.d(i, i), ring.one()))))
        ok = false, why = "diagonal entry not a unit congruent to 1";
    }
  for (const auto& l : d.theta)
    if (ok && !entries_in(raw_gen_matrix(cx.alg, cx.g, l.s), ideal, ring)) ok = false, why = "theta letter not congruent to I";
  CaseResult c = verdict(ok, ok ? std::to_string(d.theta.size()) + " letters" : why);
  c.witness = json{{"beta", matrix_json(cx.spec, beta)}, {"theta", word_json(d.theta)}, {"d", matrix_json(cx.spec, d.d)}};
  return c;
}

CaseResult lg_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const PolyX px(cx.alg);
  const PolyWord alpha = random_poly_alpha(cx.g, rng, 3, 3);
  const auto rep = local_global_patch(cx.g, alpha, cx.cfg.cap_exponent);
  CaseResult c;
  if (rep.status == "unknown") {
    c.status = "unknown";
    c.detail = rep.diagnostic;
  } else {
    const bool exact = rep.status == "success" && mat_equal(px, eval(px, cx.g, rep.word), eval(px, cx.g, alpha));
    c = verdict(exact && rep.verified, exact ? std::to_string(rep.pieces.size()) + " local pieces" : rep.diagnostic);
  }
  c.witness = json{{"alpha", poly_word_json(alpha)}, {"word", poly_word_json(rep.word)}};
  return c;
}

CaseResult normality_case(const Context& cx, std::size_t, std::mt19937_64& rng) {
  const Word<Elem> bw = random_word(cx.g, 6, rng);
  const auto beta = eval(cx.alg, cx.g, bw);
  const Word<Elem> alpha = random_word(cx.g, 2, rng);
  const auto rep = conjugate_into_E(cx.g, beta, alpha);
  const auto target = mat_mul(cx.alg, mat_mul(cx.alg, beta, eval(cx.alg, cx.g, alpha)), group_inverse(cx.alg, cx.g, beta));
  CaseResult c = verdict(mat_equal(cx.alg, eval(cx.alg, cx.g, rep.word), target),
                         std::to_string(rep.word.size()) + " letters, " + std::to_string(rep.via_patch) + " patched, " +
                             std::to_string(rep.via_rank_one) + " rank-one");
  c.witness = json{{"beta", word_json(bw)}, {"alpha", word_json(alpha)}, {"word", word_json(rep.word)}};
  return c;
}

using CaseFn = std::function<CaseResult(const Context&, std::size_t, std::mt19937_64&)>;

const std::map<std::string, CaseFn>& registry() {
  static const std::map<std::string, CaseFn> table{
      {"membership", membership_case}, {"split", split_case}, {"commutator", commutator_case},
      {"key5", key5_case},             {"key1", key1_case},   {"key3", key3_case},
      {"swan", swan_case},             {"sol3a", sol3a_case}, {"lg", lg_case},
      {"normality", normality_case}};
  return table;
}

}  // namespace

std::mt19937_64 case_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

PolyWord random_poly_alpha(const GroupDescriptor& g, std::mt19937_64& rng, std::size_t length, int degree) {
  const PolyX px(g.scalar());
  PolyWord w;
  Word<Elem> constants;
  for (int attempt = 0; attempt < 1024 && w.size() < length; ++attempt) {
    const auto base = random_symbol(g, rng);
    auto s = random_poly_symbol(g, base, 1, degree, true, rng);
    if (!s) continue;
    // Diagonal payloads are kept inside the induced parameter on R[X].
    if (!is_vector_family(s->family) && !is_e_family(s->family) && s->i == s->j && !px.in_lambda(s->a)) continue;
    w.push_back(Letter<Poly<Elem>>{*s, 1});
    constants.push_back(constant_letter(px, w.back()));
  }
  return concat(w, constant_word(px, word_inverse(constants)));
}

Vector<Elem> random_isotropic_vector(const GroupDescriptor& g, std::mt19937_64& rng, std::size_t length) {
  return last_column(eval(g.scalar(), g, random_word(g, length, rng)));
}

std::optional<Vector<Elem>> random_admissible_w(const GroupDescriptor& g, const Vector<Elem>& v, std::mt19937_64& rng,
                                                std::size_t tries) {
  const auto alg = g.scalar();
  const std::size_t m = static_cast<std::size_t>(g.dim());
  std::uniform_int_distribution<std::size_t> pick(0, g.ring().size() - 1);
  for (std::size_t t = 0; t < tries; ++t) {
    Vector<Elem> w(m);
    for (auto& x : w) x = g.ring().element(pick(rng));
    if (!alg.is_zero(inner(alg, g, v, w))) continue;
    if (!is_member(alg, g, mat_add(alg, mat_identity(alg, m), build_M(alg, g, v, w)))) continue;
    return w;
  }
  return std::nullopt;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"membership", "split", "commutator", "key5", "key1",
                                              "key3",       "swan",  "sol3a",      "lg",   "normality"};
  return names;
}

std::string default_group(const std::string& suite) {
  if (suite == "sol3a") return "hermitian:4:zmod:8:lambda=7;gens=1;a=0";
  if (suite == "lg") return "quadratic:3:zmod:6:lambda=5;gens=1";
  return "quadratic:3:zmod:5:lambda=4;gens=1";
}

SuiteReport run_suite(const std::string& name, const GroupSpec& spec, const SuiteConfig& cfg) {
  const auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorKind::parse, "unknown suite '" + name + "'");
  const Context cx{spec, spec.group, cfg, spec.group.scalar(), families_for(spec.group)};
  SuiteReport rep;
  rep.suite = name;
  rep.group = spec.text;
  rep.seed = cfg.seed;
  const auto t0 = Clock::now();
  rep.cases.resize(cfg.cases);
  auto run_case = [&](std::size_t k) {
    auto rng = case_rng(cfg.seed, k);
    const auto c0 = Clock::now();
    CaseResult c;
    try {
      c = it->second(cx, k, rng);
    } catch (const Error& e) {
      c.status = e.kind() == ErrorKind::resource_limit ? "unknown" : "fail";
      c.detail = e.what();
    } catch (const std::exception& e) {
      c.status = "fail";
      c.detail = e.what();
    }
    c.index = k;
    c.seconds = since(c0);
    if (!cfg.witnesses) c.witness = nullptr;
    rep.cases[k] = std::move(c);
  };
  // Cases only read the shared descriptors; each writes its own slot.
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.cases);
  if (workers <= 1) {
    for (std::size_t k = 0; k < cfg.cases; ++k) run_case(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < cfg.cases;) run_case(k);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& c : rep.cases) {
    rep.max_case_seconds = std::max(rep.max_case_seconds, c.seconds);
    if (c.status == "pass")
      ++rep.pass;
    else if (c.status == "fail")
      ++rep.fail;
    else
      ++rep.unknown;
  }
  rep.seconds = since(t0);
  return rep;
}

json SuiteReport::to_json(bool timing) const {
  json cs = json::array();
  for (const auto& c : cases) {
    json e{{"case", c.index}, {"status", c.status}, {"detail", c.detail}};
    if (timing) e["seconds"] = c.seconds;
    if (!c.witness.is_null()) e["witness"] = c.witness;
    cs.push_back(std::move(e));
  }
  json out{{"suite", suite},
           {"group", group},
           {"seed", seed},
           {"cases", cs},
           {"tally", {{"pass", pass}, {"fail", fail}, {"unknown", unknown}}}};
  if (timing) {
    out["seconds"] = seconds;
    out["max_case_seconds"] = max_case_seconds;
  }
  return out;
}

int SuiteReport::exit_code() const {
  if (fail > 0) return 1;
  if (unknown > 0) return 2;
  return 0;
}

}  // namespace formring
