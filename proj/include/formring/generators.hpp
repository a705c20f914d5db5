#pragma once

// Elementary generators and words over them.
//
//   QE/HE  i,j      I + a E(i,j) - conj(a) E(n+j,n+i)
//   QR/HR  i,j      I + a E(i,n+j) - lambda conj(a) E(j,n+i)       (i == j: I + a E(i,n+i))
//   QL/HL  i,j      I + a E(n+i,j) - conj(lambda) conj(a) E(n+j,i)  (i == j: I + a E(n+i,i))
//   HM     i, zeta  columns: E(k,i) zeta_k, E(n+k,i) -conj(a_k) zeta_k, E(n+i,n+k) -conj(zeta_k), E(n+i,i) conj(zeta_f)
//   HRV    i, zeta  E(k,n+i) zeta_k, E(i,n+k) -lambda conj(zeta_k), E(n+k,n+i) -conj(a_k) zeta_k, E(i,n+i) lambda conj(zeta_f)
//
// zeta_f is a solution of zeta_f + lambda conj(zeta_f) = sum conj(zeta_k) a_k zeta_k.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "formring/group.hpp"

namespace formring {

enum class Family : std::uint8_t { QE, QR, QL, HE, HR, HL, HM, HRV };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);
inline bool is_vector_family(Family f) { return f == Family::HM || f == Family::HRV; }
inline bool is_quadratic_family(Family f) { return f == Family::QE || f == Family::QR || f == Family::QL; }
inline bool is_e_family(Family f) { return f == Family::QE || f == Family::HE; }
inline bool is_r_family(Family f) { return f == Family::QR || f == Family::HR; }
inline bool is_l_family(Family f) { return f == Family::QL || f == Family::HL; }
std::vector<Family> families_for(const GroupDescriptor& g);
Family e_family(const GroupDescriptor& g);
Family r_family(const GroupDescriptor& g);
Family l_family(const GroupDescriptor& g);

template <class V>
struct Symbol {
  Family family = Family::QE;
  int i = 0, j = 0;
  V a{};
  std::vector<V> zeta;
  V zeta_f{};
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

template <class V>
struct Letter {
  Symbol<V> s;
  int exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

template <class V>
using Word = std::vector<Letter<V>>;

template <class V>
Word<V> single(const Symbol<V>& s, int exp = 1) {
  return Word<V>{Letter<V>{s, exp}};
}

template <class V>
Word<V> concat(Word<V> x, const Word<V>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// Formal inverse: reversed letters with flipped exponents.
template <class V>
Word<V> word_inverse(const Word<V>& w) {
  Word<V> out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

template <class A>
typename A::value_type zeta_target(const A& alg, const GroupDescriptor& g, const std::vector<typename A::value_type>& z) {
  auto t = alg.zero();
  for (std::size_t k = 0; k < z.size() && k < g.a.size(); ++k)
    t = alg.add(t, alg.mul(alg.mul(alg.conj(z[k]), alg.scalar(g.a[k])), z[k]));
  return t;
}

// Sum conj(x_k) a_k y_k.
template <class A>
typename A::value_type a_pairing(const A& alg, const GroupDescriptor& g, const std::vector<typename A::value_type>& x,
                                 const std::vector<typename A::value_type>& y) {
  auto t = alg.zero();
  for (std::size_t k = 0; k < g.a.size(); ++k)
    t = alg.add(t, alg.mul(alg.mul(alg.conj(x[k]), alg.scalar(g.a[k])), y[k]));
  return t;
}

template <class A>
std::optional<typename A::value_type> least_zeta_f(const A& alg, const GroupDescriptor& g,
                                                   const std::vector<typename A::value_type>& z) {
  return alg.solve_trace(zeta_target(alg, g, z));
}

template <class A>
Symbol<typename A::value_type> make_symbol(const A& alg, Family f, int i, int j, const typename A::value_type& a) {
  Symbol<typename A::value_type> s;
  s.family = f;
  s.i = i;
  s.j = j;
  s.a = a;
  s.zeta_f = alg.zero();
  return s;
}

// Vector generator with the least zeta_f; nullopt when zeta lies outside C.
template <class A>
std::optional<Symbol<typename A::value_type>> make_vector_symbol(const A& alg, const GroupDescriptor& g, Family f, int i,
                                                                 std::vector<typename A::value_type> zeta) {
  auto zf = least_zeta_f(alg, g, zeta);
  if (!zf) return std::nullopt;
  Symbol<typename A::value_type> s;
  s.family = f;
  s.i = i;
  s.j = i;
  s.a = alg.zero();
  s.zeta = std::move(zeta);
  s.zeta_f = *zf;
  return s;
}

// Empty string when valid, otherwise the violated constraint.
template <class A>
std::string symbol_violation(const A& alg, const GroupDescriptor& g, const Symbol<typename A::value_type>& s) {
  const int n = g.n, r = g.r();
  if (is_quadratic_family(s.family) == g.hermitian()) return std::string(family_name(s.family)) + " does not belong to this group flavor";
  if (s.i < 0 || s.i >= n || s.j < 0 || s.j >= n) return "index out of range";
  switch (s.family) {
    case Family::QE:
    case Family::HE:
      if (s.i == s.j) return "e-type generator needs i != j";
      if (s.family == Family::HE && s.i < r) return "he_ij needs i > r";
      return {};
    case Family::QR:
    case Family::QL:
      if (s.i == s.j && !alg.in_lambda(s.a)) return "diagonal payload " + alg.show(s.a) + " not in Lambda";
      return {};
    case Family::HR:
      if (s.i < r || s.j < r) return "hr_ij needs i, j > r";
      [[fallthrough]];
    case Family::HL:
      if (s.i == s.j && !alg.in_lambda_max(s.a)) return "diagonal payload " + alg.show(s.a) + " not in Lambda_max";
      return {};
    case Family::HM:
    case Family::HRV: {
      if (s.i < r) return "vector generator needs i > r";
      if (static_cast<int>(s.zeta.size()) != r) return "zeta has the wrong length";
      const auto lhs = alg.add(s.zeta_f, alg.mul(alg.lambda(), alg.conj(s.zeta_f)));
      if (!alg.equal(lhs, zeta_target(alg, g, s.zeta))) return "zeta_f does not solve its defining equation";
      return {};
    }
  }
  return "unknown family";
}

template <class A>
bool symbol_valid(const A& alg, const GroupDescriptor& g, const Symbol<typename A::value_type>& s) {
  return symbol_violation(alg, g, s).empty();
}

template <class A>
Matrix<typename A::value_type> raw_gen_matrix(const A& alg, const GroupDescriptor& g,
                                              const Symbol<typename A::value_type>& s) {
  const std::size_t n = static_cast<std::size_t>(g.n), i = static_cast<std::size_t>(s.i), j = static_cast<std::size_t>(s.j);
  auto m = mat_identity(alg, 2 * n);
  auto put = [&](std::size_t p, std::size_t q, const typename A::value_type& v) { m(p, q) = alg.add(m(p, q), v); };
  const auto lam = alg.lambda(), lb = alg.lambda_bar();
  switch (s.family) {
    case Family::QE:
    case Family::HE:
      put(i, j, s.a);
      put(n + j, n + i, alg.neg(alg.conj(s.a)));
      break;
    case Family::QR:
    case Family::HR:
      put(i, n + j, s.a);
      if (i != j) put(j, n + i, alg.neg(alg.mul(lam, alg.conj(s.a))));
      break;
    case Family::QL:
    case Family::HL:
      put(n + i, j, s.a);
      if (i != j) put(n + j, i, alg.neg(alg.mul(lb, alg.conj(s.a))));
      break;
    case Family::HM:
      for (std::size_t k = 0; k < s.zeta.size(); ++k) {
        put(k, i, s.zeta[k]);
        put(n + k, i, alg.neg(alg.mul(alg.conj(alg.scalar(g.a[k])), s.zeta[k])));
        put(n + i, n + k, alg.neg(alg.conj(s.zeta[k])));
      }
      put(n + i, i, alg.conj(s.zeta_f));
      break;
    case Family::HRV:
      for (std::size_t k = 0; k < s.zeta.size(); ++k) {
        put(k, n + i, s.zeta[k]);
        put(i, n + k, alg.neg(alg.mul(lam, alg.conj(s.zeta[k]))));
        put(n + k, n + i, alg.neg(alg.mul(alg.conj(alg.scalar(g.a[k])), s.zeta[k])));
      }
      put(i, n + i, alg.mul(lam, alg.conj(s.zeta_f)));
      break;
  }
  return m;
}

template <class A>
Matrix<typename A::value_type> gen_matrix(const A& alg, const GroupDescriptor& g, const Symbol<typename A::value_type>& s) {
  const std::string why = symbol_violation(alg, g, s);
  if (!why.empty()) fail(ErrorKind::constraint, std::string(family_name(s.family)) + ": " + why);
  return raw_gen_matrix(alg, g, s);
}

template <class A>
Matrix<typename A::value_type> letter_matrix(const A& alg, const GroupDescriptor& g, const Letter<typename A::value_type>& l) {
  auto m = gen_matrix(alg, g, l.s);
  return l.exp >= 0 ? m : group_inverse(alg, g, m);
}

template <class A>
Matrix<typename A::value_type> eval(const A& alg, const GroupDescriptor& g, const Word<typename A::value_type>& w) {
  auto acc = mat_identity(alg, static_cast<std::size_t>(g.dim()));
  for (const auto& l : w) acc = mat_mul(alg, acc, letter_matrix(alg, g, l));
  return acc;
}

template <class A>
bool word_valid(const A& alg, const GroupDescriptor& g, const Word<typename A::value_type>& w) {
  for (const auto& l : w)
    if (!symbol_valid(alg, g, l.s)) return false;
  return true;
}

// Reads a symbol of the given family and indices off a matrix; nullopt unless the matrix is exactly that generator.
template <class A>
std::optional<Symbol<typename A::value_type>> recognize(const A& alg, const GroupDescriptor& g, Family f, int i, int j,
                                                        const Matrix<typename A::value_type>& m) {
  const std::size_t n = static_cast<std::size_t>(g.n), ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  auto off = [&](std::size_t p, std::size_t q) { return p == q ? alg.sub(m(p, q), alg.one()) : m(p, q); };
  Symbol<typename A::value_type> s = make_symbol(alg, f, i, j, alg.zero());
  if (is_e_family(f)) {
    s.a = off(ui, uj);
  } else if (is_r_family(f)) {
    s.a = off(ui, n + uj);
  } else if (is_l_family(f)) {
    s.a = off(n + ui, uj);
  } else {
    s.j = i;
    const std::size_t r = g.a.size();
    s.zeta.assign(r, alg.zero());
    if (f == Family::HM) {
      for (std::size_t k = 0; k < r; ++k) s.zeta[k] = off(k, ui);
      s.zeta_f = alg.conj(off(n + ui, ui));
    } else {
      for (std::size_t k = 0; k < r; ++k) s.zeta[k] = off(k, n + ui);
      s.zeta_f = alg.conj(alg.mul(alg.lambda_bar(), off(ui, n + ui)));
    }
  }
  if (!symbol_valid(alg, g, s)) return std::nullopt;
  if (!mat_equal(alg, raw_gen_matrix(alg, g, s), m)) return std::nullopt;
  return s;
}

template <class A>
bool is_identity_symbol(const A& alg, const Symbol<typename A::value_type>& s) {
  if (!is_vector_family(s.family)) return alg.is_zero(s.a);
  for (const auto& z : s.zeta)
    if (!alg.is_zero(z)) return false;
  return alg.is_zero(s.zeta_f);
}

// Word whose evaluation is the inverse of gen_matrix(s); vector families get a diagonal correction read off exactly.
template <class A>
Word<typename A::value_type> gen_inverse(const A& alg, const GroupDescriptor& g, const Symbol<typename A::value_type>& s) {
  using V = typename A::value_type;
  if (!is_vector_family(s.family)) {
    Symbol<V> t = s;
    t.a = alg.neg(s.a);
    return single(t);
  }
  std::vector<V> nz;
  for (const auto& z : s.zeta) nz.push_back(alg.neg(z));
  auto t = make_vector_symbol(alg, g, s.family, s.i, nz);
  if (!t) fail(ErrorKind::certification, "negated vector payload left the set C");
  // correction = (s t)^{-1}
  const auto corr = group_inverse(alg, g, mat_mul(alg, gen_matrix(alg, g, s), gen_matrix(alg, g, *t)));
  const Family cf = s.family == Family::HM ? Family::HL : Family::HR;
  Word<V> out = single(*t);
  if (is_identity(alg, corr)) return out;
  auto c = recognize(alg, g, cf, s.i, s.i, corr);
  if (!c) fail(ErrorKind::certification, "vector generator inverse correction is not a diagonal generator");
  out.push_back(Letter<V>{*c, 1});
  return out;
}

// Rewrites every exponent -1 letter through gen_inverse.
template <class A>
Word<typename A::value_type> positive_word(const A& alg, const GroupDescriptor& g, const Word<typename A::value_type>& w) {
  Word<typename A::value_type> out;
  for (const auto& l : w) {
    if (l.exp >= 0) {
      out.push_back(l);
    } else {
      auto inv = gen_inverse(alg, g, l.s);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}

// Greedy merge of adjacent same-position additive letters and removal of identity letters.
template <class A>
Word<typename A::value_type> simplify(const A& alg, const Word<typename A::value_type>& w) {
  Word<typename A::value_type> out;
  for (auto l : w) {
    if (!is_vector_family(l.s.family) && l.exp < 0) {
      l.s.a = alg.neg(l.s.a);
      l.exp = 1;
    }
    if (is_identity_symbol(alg, l.s)) continue;
    if (!out.empty() && !is_vector_family(l.s.family)) {
      auto& b = out.back();
      if (b.exp == 1 && b.s.family == l.s.family && b.s.i == l.s.i && b.s.j == l.s.j) {
        b.s.a = alg.add(b.s.a, l.s.a);
        if (is_identity_symbol(alg, b.s)) out.pop_back();
        continue;
      }
    }
    out.push_back(l);
  }
  return out;
}

// Applies f to every payload coefficient (ring maps, substitutions, lifts).
template <class W, class V, class F>
Word<W> map_payloads(const Word<V>& w, const F& f) {
  Word<W> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    Letter<W> m;
    m.exp = l.exp;
    m.s.family = l.s.family;
    m.s.i = l.s.i;
    m.s.j = l.s.j;
    m.s.a = f(l.s.a);
    for (const auto& z : l.s.zeta) m.s.zeta.push_back(f(z));
    m.s.zeta_f = f(l.s.zeta_f);
    out.push_back(std::move(m));
  }
  return out;
}

template <class A>
std::string show_symbol(const A& alg, const Symbol<typename A::value_type>& s) {
  std::string out = family_name(s.family);
  if (is_vector_family(s.family)) {
    out += "_" + std::to_string(s.i + 1) + "(";
    for (std::size_t k = 0; k < s.zeta.size(); ++k) out += (k ? "," : "") + alg.show(s.zeta[k]);
    out += "; f=" + alg.show(s.zeta_f) + ")";
  } else {
    out += "_" + std::to_string(s.i + 1) + std::to_string(s.j + 1) + "(" + alg.show(s.a) + ")";
  }
  return out;
}

template <class A>
std::string show_word(const A& alg, const Word<typename A::value_type>& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += " ";
    out += show_symbol(alg, l.s);
    if (l.exp < 0) out += "^-1";
  }
  return out.empty() ? "1" : out;
}

// ---- scalar helpers ---------------------------------------------------------------------------

// Every valid symbol whose payload coefficients are drawn from the given pools.
// Diagonal payloads are filtered by the family constraint; vector payloads range over pool^r.
std::vector<Symbol<Elem>> enumerate_symbols(const GroupDescriptor& g, const std::vector<Elem>& pool,
                                            bool skip_identity = true);

Symbol<Elem> random_symbol(const GroupDescriptor& g, std::mt19937_64& rng);
Symbol<Elem> random_symbol(const GroupDescriptor& g, Family f, std::mt19937_64& rng);
Word<Elem> random_word(const GroupDescriptor& g, std::size_t length, std::mt19937_64& rng);

// Elements usable as diagonal payloads of the r/l families.
std::vector<Elem> diagonal_pool(const GroupDescriptor& g);

// Image of the GL elementary matrix I + a E(i, j) under gl_embedding, over the hyperbolic double of base:
// qe_ij((a, 0)) qe_ji((0, -a)). The two letters commute.
Word<Elem> gl_generator_word(const GroupDescriptor& g, const FiniteRing& base, int i, int j, Elem a);

}  // namespace formring
