#pragma once

// Generator identities: splitting, commutator witnesses, the interleaving identity,
// the normal form for words congruent to I mod X, factorization of I + M(v, w),
// conjugation splitting and a greedy peeling factorizer.

#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "formring/generators.hpp"

namespace formring {

template <class V>
struct SplitCertificate {
  Word<V> lhs, rhs;
  bool holds = false;
};

// theta(x + y) = theta(x) theta(y) for the additive families.
template <class A>
SplitCertificate<typename A::value_type> split(const A& alg, const GroupDescriptor& g, Family f, int i, int j,
                                               const typename A::value_type& x, const typename A::value_type& y) {
  SplitCertificate<typename A::value_type> c;
  c.lhs = single(make_symbol(alg, f, i, j, alg.add(x, y)));
  c.rhs = concat(single(make_symbol(alg, f, i, j, x)), single(make_symbol(alg, f, i, j, y)));
  c.holds = mat_equal(alg, eval(alg, g, c.lhs), eval(alg, g, c.rhs));
  return c;
}

// hm(zeta) hm(xi) = hm(zeta+xi) hl_ii(conj(zeta_f) + conj(xi_f) + conj(zeta) A1 xi - conj((zeta+xi)_f))
// hrv(zeta) hrv(xi) = hrv(zeta+xi) hr_ii((zeta+xi)_f - xi_f - zeta_f - conj(xi) A1 zeta)
template <class A>
SplitCertificate<typename A::value_type> split_vector(const A& alg, const GroupDescriptor& g, Family f, int i,
                                                      const std::vector<typename A::value_type>& zeta,
                                                      const std::vector<typename A::value_type>& xi) {
  using V = typename A::value_type;
  SplitCertificate<V> c;
  std::vector<V> sum;
  for (std::size_t k = 0; k < zeta.size(); ++k) sum.push_back(alg.add(zeta[k], xi[k]));
  auto sz = make_vector_symbol(alg, g, f, i, zeta), sx = make_vector_symbol(alg, g, f, i, xi),
       ss = make_vector_symbol(alg, g, f, i, sum);
  if (!sz || !sx || !ss) fail(ErrorKind::constraint, "vector payload outside C");
  V corr;
  Family cf;
  if (f == Family::HM) {
    corr = alg.sub(alg.add(alg.add(alg.conj(sz->zeta_f), alg.conj(sx->zeta_f)), a_pairing(alg, g, zeta, xi)),
                   alg.conj(ss->zeta_f));
    cf = Family::HL;
  } else {
    corr = alg.sub(alg.sub(alg.sub(ss->zeta_f, sx->zeta_f), sz->zeta_f), a_pairing(alg, g, xi, zeta));
    cf = Family::HR;
  }
  c.lhs = concat(single(*ss), single(make_symbol(alg, cf, i, i, corr)));
  c.rhs = concat(single(*sz), single(*sx));
  try {
    c.holds = mat_equal(alg, eval(alg, g, c.lhs), eval(alg, g, c.rhs));
  } catch (const Error&) {
    c.holds = false;
  }
  return c;
}

struct CommutatorWitness {
  Word<Elem> w1, w2;
  std::string method;
};

// Words w1, w2 with w1 w2 w1^{-1} w2^{-1} = gen_matrix(s); every witness is verified before it is returned.
CommutatorWitness commutator_witness(const GroupDescriptor& g, const Symbol<Elem>& s, std::uint64_t seed = 1);

template <class A>
Matrix<typename A::value_type> commutator(const A& alg, const GroupDescriptor& g, const Matrix<typename A::value_type>& x,
                                          const Matrix<typename A::value_type>& y) {
  return mat_mul(alg, mat_mul(alg, mat_mul(alg, x, y), group_inverse(alg, g, x)), group_inverse(alg, g, y));
}

// prod a_i b_i = prod (r_i b_i r_i^{-1}) prod a_i with r_i = a_1 ... a_i.
template <class V>
Word<V> interleave_identity(const std::vector<Word<V>>& a, const std::vector<Word<V>>& b) {
  if (a.size() != b.size()) fail(ErrorKind::precondition, "interleave_identity needs equal lengths");
  Word<V> out, r, tail;
  for (std::size_t k = 0; k < a.size(); ++k) {
    r = concat(r, a[k]);
    if (!b[k].empty()) out = concat(concat(concat(out, r), b[k]), word_inverse(r));
  }
  for (const auto& w : a) tail = concat(tail, w);
  return concat(out, tail);
}

// Greedy left peeling of a matrix into generators: M = s_1 s_2 ... s_k.
// Every emitted symbol passes accept(); nullopt when the greedy descent stalls.
template <class A, class Accept>
std::optional<Word<typename A::value_type>> peel(const A& alg, const GroupDescriptor& g, Matrix<typename A::value_type> m,
                                                  const Accept& accept, std::size_t max_steps = 256) {
  using V = typename A::value_type;
  const std::size_t n = static_cast<std::size_t>(g.n);
  auto potential = [&](const Matrix<V>& x) {
    std::size_t p = 0;
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j) {
        const V e = i == j ? alg.sub(x(i, j), alg.one()) : x(i, j);
        if (!alg.is_zero(e)) ++p;
      }
    return p;
  };
  auto read = [&](const Matrix<V>& x, std::size_t p, std::size_t q) { return p == q ? alg.sub(x(p, q), alg.one()) : x(p, q); };
  Word<V> out;
  std::size_t cur = potential(m);
  for (std::size_t step = 0; step < max_steps && cur > 0; ++step) {
    std::optional<Symbol<V>> best;
    Matrix<V> best_m;
    std::size_t best_p = cur;
    auto consider = [&](const Symbol<V>& s) {
      if (is_identity_symbol(alg, s) || !symbol_valid(alg, g, s) || !accept(s)) return;
      Matrix<V> next = mat_mul(alg, group_inverse(alg, g, raw_gen_matrix(alg, g, s)), m);
      const std::size_t p = potential(next);
      if (p < best_p) {
        best_p = p;
        best = s;
        best_m = std::move(next);
      }
    };
    for (Family f : families_for(g)) {
      if (is_vector_family(f)) {
        for (int i = g.r(); i < g.n; ++i) {
          std::vector<V> z;
          for (std::size_t k = 0; k < g.a.size(); ++k)
            z.push_back(f == Family::HM ? read(m, k, static_cast<std::size_t>(i)) : read(m, k, n + static_cast<std::size_t>(i)));
          if (auto s = make_vector_symbol(alg, g, f, i, z)) consider(*s);
        }
        continue;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          V a;
          if (is_e_family(f)) {
            if (i == j) continue;
            a = read(m, i, j);
          } else if (is_r_family(f)) {
            a = read(m, i, n + j);
          } else {
            a = read(m, n + i, j);
          }
          consider(make_symbol(alg, f, static_cast<int>(i), static_cast<int>(j), a));
        }
    }
    if (!best) return std::nullopt;
    out.push_back(Letter<V>{*best, 1});
    m = std::move(best_m);
    cur = best_p;
  }
  if (cur > 0) return std::nullopt;
  return out;
}

// Symbol matrix congruent to I modulo X^k (coefficientwise).
template <class A>
bool symbol_congruent(const A& alg, const GroupDescriptor& g, const Symbol<typename A::value_type>& s, int k) {
  return congruent_identity_mod_x(alg, raw_gen_matrix(alg, g, s), k);
}

template <class IV, class OV>
struct NormalFormPiece {
  Word<IV> eps;    // over the coefficient ring
  Symbol<OV> core; // congruent to I mod X
};

// Constant polynomial lift of a coefficient-ring word.
template <class Inner>
Word<Poly<typename Inner::value_type>> constant_word(const PolyAlgebra<Inner>& alg, const Word<typename Inner::value_type>& w) {
  return map_payloads<Poly<typename Inner::value_type>>(w, [&](const typename Inner::value_type& c) { return alg.constant(c); });
}

// Writes eval(w) (with eval(w)(0) = I) as prod eps_k core_k eps_k^{-1}.
template <class Inner>
std::vector<NormalFormPiece<typename Inner::value_type, Poly<typename Inner::value_type>>> normal_form_congruent_X(
    const PolyAlgebra<Inner>& alg, const GroupDescriptor& g, const Word<Poly<typename Inner::value_type>>& w) {
  using IV = typename Inner::value_type;
  using OV = Poly<IV>;
  const Inner& in = alg.inner();
  const auto target = eval(alg, g, w);
  {
    auto at0 = mat_map<IV>(target, [&](const OV& p) { return alg.coeff(p, 0); });
    if (!is_identity(in, at0)) fail(ErrorKind::precondition, "word does not evaluate to I at X = 0");
  }
  std::vector<Word<IV>> consts;
  std::vector<Word<OV>> cores;
  auto push_core = [&](const Symbol<OV>& s) {
    if (is_identity_symbol(alg, s)) return;
    consts.emplace_back();
    cores.push_back(single(s));
  };
  for (const auto& l : positive_word(alg, g, w)) {
    const Symbol<OV>& s = l.s;
    if (!is_vector_family(s.family)) {
      const IV a0 = alg.coeff(s.a, 0);
      consts.push_back(single(make_symbol(in, s.family, s.i, s.j, a0)));
      cores.emplace_back();
      push_core(make_symbol(alg, s.family, s.i, s.j, alg.sub(s.a, alg.constant(a0))));
      continue;
    }
    std::vector<IV> z0;
    std::vector<OV> z1;
    for (const auto& z : s.zeta) {
      z0.push_back(alg.coeff(z, 0));
      z1.push_back(alg.sub(z, alg.constant(z0.back())));
    }
    Symbol<IV> s0;
    s0.family = s.family;
    s0.i = s0.j = s.i;
    s0.a = in.zero();
    s0.zeta = z0;
    s0.zeta_f = alg.coeff(s.zeta_f, 0);
    auto s1 = make_vector_symbol(alg, g, s.family, s.i, z1);
    if (!s1) fail(ErrorKind::certification, "X-part of a vector payload left C");
    consts.push_back(single(s0));
    cores.emplace_back();
    push_core(*s1);
    // Exact diagonal correction: (s0 s1)^{-1} s.
    const auto lifted0 = raw_gen_matrix(alg, g, constant_word(alg, single(s0)).front().s);
    const auto corr = mat_mul(alg, group_inverse(alg, g, mat_mul(alg, lifted0, raw_gen_matrix(alg, g, *s1))),
                              raw_gen_matrix(alg, g, s));
    if (!is_identity(alg, corr)) {
      const Family cf = s.family == Family::HM ? Family::HL : Family::HR;
      auto c = recognize(alg, g, cf, s.i, s.i, corr);
      if (!c) fail(ErrorKind::certification, "vector split correction is not a diagonal generator");
      push_core(*c);
    }
  }
  std::vector<NormalFormPiece<IV, OV>> out;
  Word<IV> prefix;
  for (std::size_t k = 0; k < consts.size(); ++k) {
    prefix = concat(prefix, consts[k]);
    for (const auto& l : cores[k]) out.push_back({prefix, l.s});
  }
  if (!is_identity(in, eval(in, g, prefix))) fail(ErrorKind::certification, "constant parts do not cancel");
  for (const auto& p : out)
    if (!symbol_congruent(alg, g, p.core, 1)) fail(ErrorKind::certification, "core is not congruent to I mod X");
  return out;
}

template <class Inner>
Word<Poly<typename Inner::value_type>> assemble_normal_form(
    const PolyAlgebra<Inner>& alg,
    const std::vector<NormalFormPiece<typename Inner::value_type, Poly<typename Inner::value_type>>>& pieces) {
  Word<Poly<typename Inner::value_type>> out;
  for (const auto& p : pieces) {
    auto e = constant_word(alg, p.eps);
    out = concat(concat(concat(out, e), single(p.core)), word_inverse(e));
  }
  return out;
}

// Word for I + M(v, w) where v = eval(eps) e_{2n}, <v, w> = 0 and I + M(v, w) is a group member.
template <class A>
Word<typename A::value_type> factor_I_plus_M(const A& alg, const GroupDescriptor& g, const Word<typename A::value_type>& eps,
                                             const Vector<typename A::value_type>& w) {
  using V = typename A::value_type;
  const std::size_t n = static_cast<std::size_t>(g.n), m = 2 * n;
  const auto E = eval(alg, g, eps);
  Vector<V> v(m, alg.zero());
  for (std::size_t k = 0; k < m; ++k) v[k] = E(k, m - 1);
  if (!alg.is_zero(inner(alg, g, v, w))) fail(ErrorKind::pairing, "<v, w> is not zero");
  const auto target = mat_add(alg, mat_identity(alg, m), build_M(alg, g, v, w));
  if (!is_member(alg, g, target)) fail(ErrorKind::precondition, "I + M(v, w) is not a group member (<w, w> must vanish)");
  const auto w1 = mat_vec(alg, group_inverse(alg, g, E), w);
  auto rest = mat_add(alg, mat_identity(alg, m), build_M(alg, g, basis_vector(alg, m, m - 1), w1));
  const std::size_t c = n - 1;  // column of the peeled entries
  Word<V> pieces;
  auto apply = [&](const Symbol<V>& s) {
    if (is_identity_symbol(alg, s)) return;
    if (!symbol_valid(alg, g, s))
      fail(ErrorKind::certification, "peeled symbol " + show_symbol(alg, s) + " is invalid: " + symbol_violation(alg, g, s));
    rest = mat_mul(alg, group_inverse(alg, g, raw_gen_matrix(alg, g, s)), rest);
    pieces.push_back(Letter<V>{s, 1});
  };
  if (g.r() > 0) {
    std::vector<V> z;
    for (std::size_t k = 0; k < g.a.size(); ++k) z.push_back(rest(k, c));
    auto s = make_vector_symbol(alg, g, Family::HM, static_cast<int>(c), z);
    if (!s) fail(ErrorKind::certification, "hm payload outside C in the I + M factorization");
    apply(*s);
  }
  for (std::size_t j = static_cast<std::size_t>(g.r()); j < c; ++j)
    apply(make_symbol(alg, e_family(g), static_cast<int>(j), static_cast<int>(c), rest(j, c)));
  for (std::size_t i = 0; i < c; ++i)
    apply(make_symbol(alg, l_family(g), static_cast<int>(i), static_cast<int>(c), rest(n + i, c)));
  if (!is_identity(alg, rest)) {
    auto d = recognize(alg, g, l_family(g), static_cast<int>(c), static_cast<int>(c), rest);
    if (!d) fail(ErrorKind::certification, "residual of the I + M factorization is not a diagonal l-generator");
    pieces.push_back(Letter<V>{*d, 1});
  }
  Word<V> out = concat(concat(eps, pieces), word_inverse(eps));
  if (!mat_equal(alg, eval(alg, g, out), target)) fail(ErrorKind::certification, "I + M factorization does not verify");
  return out;
}

namespace detail {

// Rewrites conjugates g x g^{-1} of letters x over R[X] into letters congruent to I mod X^floor.
// Three verified routes, tried in order: direct peeling; writing x = [y1, y2] z through a spare
// index with y1, y2 congruent to I mod X^floor; splitting g itself into a commutator of constant words.
template <class Inner>
class ConjugationSplitter {
 public:
  using IV = typename Inner::value_type;
  using OV = Poly<IV>;
  using PM = Matrix<OV>;

  ConjugationSplitter(const PolyAlgebra<Inner>& alg, const GroupDescriptor& g, int floor)
      : alg_(alg), in_(alg.inner()), g_(g), floor_(floor) {}

  std::optional<Word<OV>> conj_word(const Word<IV>& by, const Word<OV>& w, int depth) const {
    Word<OV> cur = w;
    for (auto it = by.rbegin(); it != by.rend(); ++it) {
      Word<OV> next;
      for (const auto& l : cur) {
        auto piece = conj_letter(it->s, l, depth);
        if (!piece) return std::nullopt;
        next = concat(next, *piece);
      }
      cur = simplify(alg_, next);
    }
    return cur;
  }

  std::optional<Word<OV>> conj_letter(const Symbol<IV>& gs, const Letter<OV>& x, int depth) const {
    const PM G = lift(gs), Gi = group_inverse(alg_, g_, G);
    const PM Xm = letter_matrix(alg_, g_, x);
    if (mat_equal(alg_, mat_mul(alg_, G, Xm), mat_mul(alg_, Xm, G))) return single(x.s, x.exp);
    const PM target = mat_mul(alg_, mat_mul(alg_, G, Xm), Gi);
    auto accept = [&](const Symbol<OV>& s) { return symbol_congruent(alg_, g_, s, floor_); };
    if (auto pw = peel(alg_, g_, target, accept, 64)) return pw;
    if (depth <= 0) return std::nullopt;
    if (symbol_congruent(alg_, g_, x.s, 2 * floor_))
      if (auto w = via_commutator_of_x(gs, x, Xm)) return w;
    if constexpr (std::is_same_v<Inner, ScalarAlgebra>) {
      if (depth >= 2 && !is_vector_family(gs.family)) {
        try {
          const CommutatorWitness cw = commutator_witness(g_, gs);
          const Word<IV> u = positive_word(in_, g_, concat(concat(cw.w1, cw.w2), concat(word_inverse(cw.w1), word_inverse(cw.w2))));
          if (auto w = conj_word(u, single(x.s, x.exp), depth - 1)) return w;
        } catch (const Error&) {
        }
      }
    }
    return std::nullopt;
  }

 private:
  struct Candidate {
    Symbol<OV> s;
    PM m, mi;
    Matrix<IV> at1, at1i;
    unsigned mask = 0;
  };

  PM lift(const Symbol<IV>& s) const { return raw_gen_matrix(alg_, g_, constant_word(alg_, single(s)).front().s); }

  Matrix<IV> at_one(const PM& m) const {
    return mat_map<IV>(m, [&](const OV& p) { return alg_.evaluate(p, in_.one()); });
  }

  // Coordinates touched by m - I, folded mod n. Taken over R[X]: evaluating first can hide terms.
  unsigned support(const PM& m) const {
    const std::size_t n = static_cast<std::size_t>(g_.n);
    unsigned mask = 0;
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) {
        const OV e = i == j ? alg_.sub(m(i, j), alg_.one()) : m(i, j);
        if (!alg_.is_zero(e)) mask |= (1u << (i % n)) | (1u << (j % n));
      }
    return mask;
  }

  // Payload bases: the payload of x divided by X^floor, and X^floor itself, times units.
  std::vector<OV> payloads(const Symbol<OV>& x) const {
    std::vector<OV> base;
    auto shifted = [&](const OV& p) {
      OV q;
      for (std::size_t k = static_cast<std::size_t>(floor_); k < p.c.size(); ++k) q.c.push_back(p.c[k]);
      return alg_.trim(q);
    };
    if (is_vector_family(x.family)) {
      for (const auto& z : x.zeta)
        if (!alg_.is_zero(z)) base.push_back(shifted(z));
    } else {
      base.push_back(shifted(x.a));
    }
    std::vector<OV> out;
    const auto& ring = in_.ring();
    for (const auto& b : base)
      for (Elem u : ring.units()) out.push_back(alg_.mul(alg_.scalar(u), b));
    for (Elem u : ring.units()) out.push_back(alg_.monomial(in_.scalar(u), static_cast<std::size_t>(floor_)));
    return out;
  }

  std::vector<Candidate> candidates(const Symbol<OV>& x) const {
    std::vector<Candidate> out;
    const auto pays = payloads(x);
    auto add = [&](const Symbol<OV>& s) {
      if (is_identity_symbol(alg_, s) || !symbol_valid(alg_, g_, s)) return;
      Candidate c;
      c.s = s;
      c.m = raw_gen_matrix(alg_, g_, s);
      c.mi = group_inverse(alg_, g_, c.m);
      c.at1 = at_one(c.m);
      c.at1i = at_one(c.mi);
      c.mask = support(c.m);
      out.push_back(std::move(c));
    };
    for (Family f : families_for(g_))
      for (const auto& p : pays) {
        if (is_vector_family(f)) {
          for (int i = g_.r(); i < g_.n; ++i)
            for (std::size_t k = 0; k < g_.a.size(); ++k) {
              std::vector<OV> z(g_.a.size(), alg_.zero());
              z[k] = p;
              if (auto s = make_vector_symbol(alg_, g_, f, i, z)) add(*s);
            }
          continue;
        }
        for (int i = 0; i < g_.n; ++i)
          for (int j = 0; j < g_.n; ++j)
            if (!(is_e_family(f) && i == j)) add(make_symbol(alg_, f, i, j, p));
      }
    return out;
  }

  // Factors are conjugated by peeling alone; results are memoized per candidate.
  std::optional<Word<OV>> via_commutator_of_x(const Symbol<IV>& gs, const Letter<OV>& x, const PM& Xm) const {
    const auto cands = candidates(x.s);
    const Matrix<IV> x1 = at_one(Xm);
    const unsigned xmask = support(Xm);
    const std::size_t sparse = static_cast<std::size_t>(3 * g_.r() + 4);
    std::vector<int> state(cands.size(), 0);  // 0 unknown, 1 peelable, 2 not
    std::vector<Word<OV>> done(cands.size());
    auto conj_cand = [&](std::size_t k) {
      if (state[k] == 0) {
        auto w = conj_letter(gs, Letter<OV>{cands[k].s, 1}, 0);
        state[k] = w ? 1 : 2;
        if (w) done[k] = std::move(*w);
      }
      return state[k] == 1;
    };
    for (std::size_t ia = 0; ia < cands.size(); ++ia)
      for (std::size_t ib = 0; ib < cands.size(); ++ib) {
        const auto &a = cands[ia], &b = cands[ib];
        if (!(a.mask & b.mask) || (xmask & ~(a.mask | b.mask))) continue;
        if (state[ia] == 2 || state[ib] == 2) continue;
        // Cheap screen at X = 1: [a, b]^{-1} x must be I or as sparse as a single letter.
        const Matrix<IV> c1 = mat_mul(in_, mat_mul(in_, mat_mul(in_, a.at1, b.at1), a.at1i), b.at1i);
        const Matrix<IV> z1 = mat_mul(in_, group_inverse(in_, g_, c1), x1);
        if (!is_identity(in_, z1) && offdiag_nonzeros(in_, z1) > sparse) continue;
        if (!conj_cand(ia) || !conj_cand(ib)) continue;
        const PM c = mat_mul(alg_, mat_mul(alg_, mat_mul(alg_, a.m, b.m), a.mi), b.mi);
        const PM z = mat_mul(alg_, group_inverse(alg_, g_, c), Xm);
        Word<OV> out = concat(concat(done[ia], done[ib]), concat(word_inverse(done[ia]), word_inverse(done[ib])));
        if (!is_identity(alg_, z)) {
          // The remainder is peeled into letters that each conjugate by peeling.
          auto accept = [&](const Symbol<OV>& s) {
            return symbol_congruent(alg_, g_, s, floor_) && conj_letter(gs, Letter<OV>{s, 1}, 0).has_value();
          };
          const auto zw = peel(alg_, g_, z, accept, 16);
          if (!zw) continue;
          for (const auto& l : *zw) out = concat(out, *conj_letter(gs, l, 0));
        }
        return out;
      }
    return std::nullopt;
  }

  const PolyAlgebra<Inner>& alg_;
  const Inner& in_;
  const GroupDescriptor& g_;
  int floor_;
};

}  // namespace detail

// g theta g^{-1} as a word whose symbols are congruent to I mod X^m, given theta congruent to I mod X^{2m}.
template <class Inner>
Word<Poly<typename Inner::value_type>> conjugation_split(const PolyAlgebra<Inner>& alg, const GroupDescriptor& g,
                                                         const Symbol<typename Inner::value_type>& gs,
                                                         const Word<Poly<typename Inner::value_type>>& theta, int m,
                                                         int depth = 2) {
  using OV = Poly<typename Inner::value_type>;
  if (m <= 0) fail(ErrorKind::precondition, "conjugation_split needs m > 0");
  const auto th = eval(alg, g, theta);
  if (!congruent_identity_mod_x(alg, th, 2 * m)) fail(ErrorKind::precondition, "theta is not congruent to I mod X^{2m}");
  if (theta.empty()) return {};
  // Letters of theta, each congruent to I mod X^{2m}.
  Word<OV> letters = theta;
  for (const auto& l : theta)
    if (!symbol_congruent(alg, g, l.s, 2 * m)) {
      auto accept = [&](const Symbol<OV>& s) { return symbol_congruent(alg, g, s, 2 * m); };
      auto pw = peel(alg, g, th, accept);
      if (!pw) fail(ErrorKind::certification, "theta could not be rewritten with letters congruent to I mod X^{2m}");
      letters = *pw;
      break;
    }
  const detail::ConjugationSplitter<Inner> splitter(alg, g, m);
  auto out = splitter.conj_word(single(gs), letters, depth);
  if (!out) fail(ErrorKind::resource_limit, "bounded search found no rewriting of the conjugate into letters congruent to I mod X^m");
  const auto G = raw_gen_matrix(alg, g, constant_word(alg, single(gs)).front().s);
  if (!mat_equal(alg, eval(alg, g, *out), mat_mul(alg, mat_mul(alg, G, th), group_inverse(alg, g, G))))
    fail(ErrorKind::certification, "conjugation split does not verify");
  for (const auto& l : *out)
    if (!symbol_congruent(alg, g, l.s, m)) fail(ErrorKind::certification, "emitted symbol is not congruent to I mod X^m");
  return *out;
}

}  // namespace formring
