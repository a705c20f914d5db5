#include "formring/local_global.hpp"

#include <map>
#include <random>

namespace formring {

LocalGroup localize_group(const GroupDescriptor& g, Elem s) {
  LocalGroup out;
  out.s = s;
  out.loc = localize_at_element(g.form->ring_ptr(), s);
  auto form = std::make_shared<const FormRing>(induce_localized_parameter(*g.form, out.loc));
  std::vector<Elem> a;
  for (Elem x : g.a) a.push_back(out.loc(x));
  out.g = rebase_group(g, form, a);
  return out;
}

Poly<Poly<Elem>> substitute_x_plus_t(const PolyXT& alg, const Poly<Elem>& p) {
  const PolyX& in = alg.inner();
  const FiniteRing& ring = in.ring();
  Poly<Poly<Elem>> out;
  for (std::size_t k = 0; k < p.c.size(); ++k) {
    long long binom = 1;  // C(k, j), reduced as it grows
    for (std::size_t j = 0; j <= k; ++j) {
      const Elem c = ring.mul(ring.from_int(binom), p.c[k]);
      out = alg.add(out, alg.monomial(in.monomial(c, k - j), j));
      binom = binom * static_cast<long long>(k - j) / static_cast<long long>(j + 1);
    }
  }
  return out;
}

Poly<Poly<Elem>> substitute_t(const PolyXT& alg, const Poly<Elem>& p) { return alg.constant(p); }

Poly<Elem> collapse_t(const PolyX& alg, const Poly<Poly<Elem>>& q, Elem c) {
  const FiniteRing& ring = alg.ring();
  Poly<Elem> out;
  for (std::size_t j = 0; j < q.c.size(); ++j) {
    Elem pw = ring.one();
    for (std::size_t i = 0; i < q.c[j].c.size(); ++i) {
      out = alg.add(out, alg.monomial(ring.mul(q.c[j].c[i], pw), i + j));
      pw = ring.mul(pw, c);
    }
  }
  return out;
}

Word<Elem> evaluate_word(const PolyX& alg, const PolyWord& w, Elem c) {
  return map_payloads<Elem>(w, [&](const Poly<Elem>& p) { return alg.evaluate(p, c); });
}

PolyWord scale_word(const PolyX& alg, const PolyWord& w, Elem c) {
  return map_payloads<Poly<Elem>>(w, [&](const Poly<Elem>& p) { return alg.scale_var(p, c); });
}

Matrix<Poly<Elem>> scale_matrix(const PolyX& alg, const Matrix<Poly<Elem>>& m, Elem c) {
  return mat_map<Poly<Elem>>(m, [&](const Poly<Elem>& p) { return alg.scale_var(p, c); });
}

namespace {

// Every entry of m - I killed by (1 - e).
bool trivial_off_slice(const FiniteRing& ring, const Matrix<Poly<Elem>>& m, Elem e) {
  const Elem f = ring.sub(ring.one(), e);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      for (std::size_t k = 0; k < m(i, j).c.size(); ++k) {
        Elem x = m(i, j).c[k];
        if (i == j && k == 0) x = ring.sub(x, ring.one());
        if (ring.mul(f, x) != ring.zero()) return false;
      }
  return true;
}

Elem power(const FiniteRing& ring, Elem x, int k) {
  Elem r = ring.one();
  for (int i = 0; i < k; ++i) r = ring.mul(r, x);
  return r;
}

}  // namespace

DilationResult dilate(const GroupDescriptor& g, Elem s, const PolyWord& local_word, int cap) {
  const FiniteRing& ring = g.ring();
  const LocalGroup lg = localize_group(g, s);
  const PolyX alg(g.scalar()), alg_s(ScalarAlgebra(lg.g.form));
  DilationResult res;
  const auto target0 = eval(alg_s, lg.g, local_word);
  for (int l = std::max(1, lg.loc.conductor); l <= cap; ++l) {
    const Elem b = power(ring, s, l);
    if (ring.conj(b) != b) continue;
    const Elem bs = lg.loc(b);
    try {
      const PolyWord global = include_word(lg.loc, dilate_cores(alg_s, lg.g, local_word, bs));
      const auto m = eval(alg, g, global);
      const bool image_ok = mat_equal(alg_s, localize_matrix(lg.loc, m), scale_matrix(alg_s, target0, bs));
      const bool slice_ok = trivial_off_slice(ring, m, lg.loc.idempotent);
      if (image_ok && slice_ok) {
        res.b = b;
        res.l = l;
        res.word = global;
        res.certified = true;
        return res;
      }
      res.diagnostic = image_ok ? "component outside the slice is not the identity" : "localization image mismatch";
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::precondition) throw;
      res.diagnostic = e.what();
    }
  }
  fail(ErrorKind::resource_limit, "no dilation exponent up to " + std::to_string(cap) + " certified: " + res.diagnostic);
}

std::vector<LocalGroup> local_cover(const GroupDescriptor& g) {
  const FiniteRing& ring = g.ring();
  if (!ring.commutative()) fail(ErrorKind::unsupported, "local-global patching needs a commutative ring");
  std::vector<LocalGroup> out;
  const auto stable = stable_primitive_idempotents(ring);
  for (const auto& m : enumerate_maximal_ideals(ring)) {
    std::optional<Elem> e;
    for (Elem x : stable)
      if (!m.contains(x)) e = x;
    if (!e) fail(ErrorKind::invalid_ideal, "no local idempotent for a maximal ideal");
    bool dup = false;
    for (const auto& lg : out) dup = dup || lg.loc.idempotent == *e;
    if (dup) continue;
    for (Elem x : ring.elements())
      if (!is_nilpotent(ring, x) && idempotent_power(ring, x) == *e) {
        out.push_back(localize_group(g, x));
        break;
      }
  }
  return out;
}

namespace {

struct CoverCoefficients {
  int l;
  std::vector<Elem> b;
};

// b_i = c_i s_i^l with sum b_i = 1, every b_i fixed by the involution.
std::optional<CoverCoefficients> cover_coefficients(const FiniteRing& ring, const std::vector<LocalGroup>& cover, int cap) {
  int lo = 1;
  for (const auto& lg : cover) lo = std::max(lo, lg.loc.conductor);
  for (int l = lo; l <= cap; ++l) {
    std::vector<Elem> p;
    for (const auto& lg : cover) p.push_back(power(ring, lg.s, l));
    // reachable partial sums with their choices
    std::map<Elem, std::vector<Elem>> reach{{ring.zero(), {}}};
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::map<Elem, std::vector<Elem>> next;
      for (const auto& [sum, bs] : reach)
        for (Elem c : ring.elements()) {
          const Elem b = ring.mul(c, p[i]);
          if (ring.conj(b) != b) continue;
          const Elem t = ring.add(sum, b);
          if (next.count(t)) continue;
          auto nb = bs;
          nb.push_back(b);
          next.emplace(t, std::move(nb));
        }
      reach = std::move(next);
    }
    auto it = reach.find(ring.one());
    if (it != reach.end()) return CoverCoefficients{l, it->second};
  }
  return std::nullopt;
}

}  // namespace

PatchReport local_global_patch(const GroupDescriptor& g, const Matrix<Poly<Elem>>& alpha, const std::vector<PolyWord>& local_words,
                               int cap) {
  const FiniteRing& ring = g.ring();
  const PolyX alg(g.scalar());
  PatchReport rep;
  {
    auto at0 = mat_map<Elem>(alpha, [&](const Poly<Elem>& p) { return alg.coeff(p, 0); });
    if (!is_identity(g.scalar(), at0)) fail(ErrorKind::precondition, "alpha(0) is not the identity");
  }
  if (!is_member(alg, g, alpha)) fail(ErrorKind::precondition, "alpha is not a group member");
  const auto cover = local_cover(g);
  if (cover.size() != local_words.size()) fail(ErrorKind::precondition, "one local word per maximal ideal is required");
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const PolyX alg_s(ScalarAlgebra(cover[i].g.form));
    if (!mat_equal(alg_s, eval(alg_s, cover[i].g, local_words[i]), localize_matrix(cover[i].loc, alpha))) {
      rep.status = "failure";
      rep.diagnostic = "local word " + std::to_string(i) + " does not represent the localization of alpha";
      return rep;
    }
  }
  if (is_identity(alg, alpha)) {
    rep.status = "success";
    rep.verified = true;
    return rep;
  }
  if (cover.size() == 1 && cover[0].loc.idempotent == ring.one()) {
    PatchPiece piece{cover[0].s, ring.one(), ring.one(), 0, local_words[0], include_word(cover[0].loc, local_words[0])};
    rep.word = piece.global_piece;
    rep.pieces.push_back(std::move(piece));
  } else {
    const auto cc = cover_coefficients(ring, cover, cap);
    if (!cc) {
      rep.status = "unknown";
      rep.diagnostic = "no partition of unity b_i in s_i^l R found up to l = " + std::to_string(cap);
      return rep;
    }
    Elem before = ring.zero();
    std::vector<PolyWord> global;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const LocalGroup& lg = cover[i];
      const PolyX alg_s(ScalarAlgebra(lg.g.form));
      const PolyXT alg_st(alg_s);
      const PolyXT alg_t(alg);
      auto shifted = map_payloads<Poly<Poly<Elem>>>(local_words[i], [&](const Poly<Elem>& p) { return substitute_x_plus_t(alg_st, p); });
      auto base = map_payloads<Poly<Poly<Elem>>>(local_words[i], [&](const Poly<Elem>& p) { return substitute_t(alg_st, p); });
      const PolyXTWord theta = concat(shifted, word_inverse(base));
      const Elem bi = cc->b[i];
      PolyXTWord dil = dilate_cores(alg_st, lg.g, theta, alg_s.constant(lg.loc(bi)));
      PolyXTWord lifted = include_word(lg.loc, dil);
      PolyWord piece = map_payloads<Poly<Elem>>(lifted, [&](const Poly<Poly<Elem>>& q) { return collapse_t(alg, q, before); });
      const Elem after = ring.add(before, bi);
      const auto expect = mat_mul(alg, scale_matrix(alg, alpha, after), group_inverse(alg, g, scale_matrix(alg, alpha, before)));
      try {
        if (!mat_equal(alg, eval(alg, g, piece), expect)) {
          rep.status = "failure";
          rep.diagnostic = "patch piece " + std::to_string(i) + " does not evaluate to alpha(B_i X) alpha(B_{i-1} X)^{-1}";
          return rep;
        }
      } catch (const Error& e) {
        rep.status = "failure";
        rep.diagnostic = std::string("patch piece ") + std::to_string(i) + ": " + e.what();
        return rep;
      }
      rep.pieces.push_back(PatchPiece{lg.s, lg.loc.idempotent, bi, cc->l, local_words[i], piece});
      global.push_back(std::move(piece));
      before = after;
    }
    for (auto it = global.rbegin(); it != global.rend(); ++it) rep.word = concat(rep.word, *it);
  }
  rep.verified = mat_equal(alg, eval(alg, g, rep.word), alpha);
  rep.status = rep.verified ? "success" : "failure";
  if (!rep.verified) rep.diagnostic = "assembled word does not evaluate to alpha";
  return rep;
}

PatchReport local_global_patch(const GroupDescriptor& g, const PolyWord& alpha_word, int cap) {
  const PolyX alg(g.scalar());
  const auto alpha = eval(alg, g, alpha_word);
  std::vector<PolyWord> locals;
  for (const auto& lg : local_cover(g)) locals.push_back(localize_word(lg.loc, alpha_word));
  return local_global_patch(g, alpha, locals, cap);
}

std::optional<MForm> solve_m_form(const GroupDescriptor& g, const Matrix<Elem>& gen) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& ring = g.ring();
  const std::size_t m = static_cast<std::size_t>(g.dim());
  const auto psi = form_matrix(alg, g);
  const auto id = mat_identity(alg, m);
  const auto d = mat_sub(alg, gen, id);
  for (std::size_t p = 0; p < m; ++p) {
    const auto ep = basis_vector(alg, m, p);
    for (std::size_t c = 0; c < m; ++c) {
      const Elem u = psi(p, c);
      const Elem k = ring.mul(alg.lambda_bar(), u);
      if (!ring.is_unit(k)) continue;
      const Elem ki = ring.inv(k);
      for (Elem t : ring.elements()) {
        Vector<Elem> w(m);
        for (std::size_t q = 0; q < m; ++q) w[q] = ring.mul(ki, ring.sub(q == p ? t : ring.zero(), d(q, c)));
        if (mat_equal(alg, mat_add(alg, id, build_M(alg, g, ep, w)), gen)) return MForm{p, w};
      }
      break;
    }
  }
  return std::nullopt;
}

ConjugationReport conjugate_into_E(const GroupDescriptor& g, const Matrix<Elem>& beta, const Word<Elem>& alpha) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& ring = g.ring();
  const std::size_t n = static_cast<std::size_t>(g.n), m = 2 * n;
  if (!is_member(alg, g, beta)) fail(ErrorKind::precondition, "beta is not a group member");
  ConjugationReport rep;
  if (is_identity(alg, beta)) {
    rep.word = alpha;
    return rep;
  }
  const auto bi = group_inverse(alg, g, beta);
  const PolyX px(alg);
  std::vector<LocalGroup> cover;  // built on first use
  for (const auto& l : positive_word(alg, g, alpha)) {
    const auto gm = gen_matrix(alg, g, l.s);
    const auto target = mat_mul(alg, mat_mul(alg, beta, gm), bi);
    if (mat_equal(alg, target, gm)) {
      rep.word.push_back(l);
      ++rep.commuting;
      continue;
    }
    Word<Elem> piece;
    if (auto mf = solve_m_form(g, gm)) {
      Vector<Elem> v(m), w = mat_vec(alg, beta, mf->w);
      for (std::size_t k = 0; k < m; ++k) v[k] = beta(k, mf->p);
      // gamma(X) = I + X M(v, w), factored locally and patched.
      Vector<Poly<Elem>> vx, wx;
      for (std::size_t k = 0; k < m; ++k) {
        vx.push_back(px.constant(v[k]));
        wx.push_back(px.monomial(w[k], 1));
      }
      const auto gamma = mat_add(px, mat_identity(px, m), build_M(px, g, vx, wx));
      if (cover.empty()) cover = local_cover(g);
      std::vector<PolyWord> locals;
      for (const auto& lg : cover) {
        const ScalarAlgebra as(lg.g.form);
        const PolyX pxs(as);
        Vector<Elem> vs;
        for (Elem x : v) vs.push_back(lg.loc(x));
        const auto red = reduce_isotropic_unimodular(lg.g, vs);
        const auto eps = constant_word(pxs, word_inverse(red.word));
        Vector<Poly<Elem>> ws;
        for (Elem x : w) ws.push_back(pxs.monomial(lg.loc(x), 1));
        locals.push_back(factor_I_plus_M(pxs, lg.g, eps, ws));
      }
      const auto patch = local_global_patch(g, gamma, locals);
      if (patch.status != "success") fail(ErrorKind::certification, "patching gamma(X) failed: " + patch.diagnostic);
      piece = evaluate_word(px, patch.word, ring.one());
      ++rep.via_patch;
    } else if (!is_vector_family(l.s.family) && !is_e_family(l.s.family) && l.s.i == l.s.j) {
      // gm = I + c v v~ for a basis vector; move beta v to e_{2n} and read the diagonal generator off.
      const std::size_t col = is_r_family(l.s.family) ? static_cast<std::size_t>(l.s.i) : n + static_cast<std::size_t>(l.s.i);
      Vector<Elem> v(m);
      for (std::size_t k = 0; k < m; ++k) v[k] = beta(k, col);
      const auto red = reduce_isotropic_unimodular(g, v);
      const auto h = eval(alg, g, red.word);
      const auto core = mat_mul(alg, mat_mul(alg, h, target), group_inverse(alg, g, h));
      const int last = static_cast<int>(n) - 1;
      auto d = recognize(alg, g, l_family(g), last, last, core);
      if (!d) fail(ErrorKind::certification, "conjugated diagonal generator is not a diagonal l-generator at index n");
      piece = concat(concat(word_inverse(red.word), single(*d)), red.word);
      ++rep.via_rank_one;
    } else {
      fail(ErrorKind::unsupported, "no M(v, w) form for " + show_symbol(alg, l.s));
    }
    if (!mat_equal(alg, eval(alg, g, piece), target)) fail(ErrorKind::certification, "conjugated piece does not verify");
    rep.word = concat(rep.word, piece);
  }
  if (!mat_equal(alg, eval(alg, g, rep.word), mat_mul(alg, mat_mul(alg, beta, eval(alg, g, alpha)), bi)))
    fail(ErrorKind::certification, "conjugated word does not verify");
  return rep;
}

ContainmentReport commutator_containment_check(const GroupDescriptor& g, Elem s, int l, std::size_t samples, std::uint64_t seed,
                                               const Closure* oracle) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& ring = g.ring();
  ContainmentReport rep;
  rep.l = l;
  rep.mode = oracle && oracle->complete() ? "oracle" : "constructive";
  const LocalGroup lg = localize_group(g, s);
  const FiniteRing& rs = *lg.loc.target;
  const Elem s_inv = rs.inv(lg.loc(s));
  const Elem sl = power(ring, s, l);
  const auto small = ideal_generated(ring, {sl}).members();
  const auto sigma_gens = enumerate_symbols(g, small);
  const auto all = ring.elements();
  std::mt19937_64 rng(seed);
  const Family ef = e_family(g);
  for (std::size_t k = 0; k < samples; ++k) {
    int i = static_cast<int>(rng() % static_cast<std::uint64_t>(g.n)), j = i;
    while (j == i || (g.hermitian() && i < g.r())) {
      i = static_cast<int>(rng() % static_cast<std::uint64_t>(g.n));
      j = static_cast<int>(rng() % static_cast<std::uint64_t>(g.n));
    }
    const Elem a = all[rng() % all.size()];
    const Elem pulled = lg.loc.lift(rs.mul(lg.loc(a), s_inv));
    const auto theta = make_symbol(alg, ef, i, j, pulled);
    Word<Elem> sw;
    if (!sigma_gens.empty())
      for (int t = 0; t < 4; ++t) sw.push_back(Letter<Elem>{sigma_gens[rng() % sigma_gens.size()], 1});
    auto sigma = eval(alg, g, sw);
    // A hyperbolic diagonal factor diag(u, conj(u)^{-1}) with u = 1 + s^l c a unit, when it is a member.
    const Elem u = ring.add(ring.one(), ring.mul(sl, all[rng() % all.size()]));
    if (ring.is_unit(u)) {
      auto dmat = mat_identity(alg, static_cast<std::size_t>(g.dim()));
      const std::size_t p = static_cast<std::size_t>(g.n) - 1;
      dmat(p, p) = u;
      dmat(2 * p + 1, 2 * p + 1) = ring.inv(ring.conj(u));
      if (is_member(alg, g, dmat)) sigma = mat_mul(alg, dmat, sigma);
    }
    const auto th = gen_matrix(alg, g, theta);
    const auto comm = commutator(alg, g, th, sigma);
    if (rep.mode == "oracle") {
      (oracle->contains(comm) ? rep.pass : rep.fail)++;
      continue;
    }
    try {
      const auto conj = conjugate_into_E(g, sigma, gen_inverse(alg, g, theta));
      const Word<Elem> witness = concat(single(theta), conj.word);
      if (mat_equal(alg, eval(alg, g, witness), comm))
        ++rep.pass;
      else
        ++rep.fail;
    } catch (const Error& e) {
      ++rep.unknown;
      rep.notes.push_back(e.what());
    }
  }
  return rep;
}

}  // namespace formring
