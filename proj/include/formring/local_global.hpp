#pragma once

// Dilation, local-global patching over R[X], conjugation of elementary words into E,
// and commutator containment spot checks. Localizations of a finite commutative ring
// are realized as slices eR (see ideals.hpp).

#include <optional>
#include <string>
#include <vector>

#include "formring/closure.hpp"
#include "formring/identities.hpp"
#include "formring/reduction.hpp"

namespace formring {

using PolyWord = Word<Poly<Elem>>;       // over R[X]
using PolyXTWord = Word<Poly<Poly<Elem>>>;  // over R[T][X]

struct LocalGroup {
  LocalizationMap loc;
  GroupDescriptor g;  // over the localized form ring
  Elem s;             // inverted element of R
};

LocalGroup localize_group(const GroupDescriptor& g, Elem s);

// ---- scalar maps through a localization -------------------------------------------------------

template <class V>
V localize_value(const LocalizationMap& loc, const V& x) {
  return map_scalars(x, [&](Elem a) { return loc(a); });
}
template <class V>
V include_value(const LocalizationMap& loc, const V& x) {
  return map_scalars(x, [&](Elem a) { return loc.lift(a); });
}
template <class V>
Word<V> localize_word(const LocalizationMap& loc, const Word<V>& w) {
  return map_payloads<V>(w, [&](const V& x) { return localize_value(loc, x); });
}
template <class V>
Word<V> include_word(const LocalizationMap& loc, const Word<V>& w) {
  return map_payloads<V>(w, [&](const V& x) { return include_value(loc, x); });
}
template <class V>
Matrix<V> localize_matrix(const LocalizationMap& loc, const Matrix<V>& m) {
  return mat_map<V>(m, [&](const V& x) { return localize_value(loc, x); });
}

// ---- substitutions ----------------------------------------------------------------------------

// p(X) -> p(X + T), outer variable X, coefficients in R[T].
Poly<Poly<Elem>> substitute_x_plus_t(const PolyXT& alg, const Poly<Elem>& p);
// p(X) -> p(T), constant in X.
Poly<Poly<Elem>> substitute_t(const PolyXT& alg, const Poly<Elem>& p);
// q(X, T) -> q(X, cX).
Poly<Elem> collapse_t(const PolyX& alg, const Poly<Poly<Elem>>& q, Elem c);
// p(X) -> p(c).
Word<Elem> evaluate_word(const PolyX& alg, const PolyWord& w, Elem c);
// p(X) -> p(cX) on every payload.
PolyWord scale_word(const PolyX& alg, const PolyWord& w, Elem c);
Matrix<Poly<Elem>> scale_matrix(const PolyX& alg, const Matrix<Poly<Elem>>& m, Elem c);

// Normal form followed by X -> bX on the cores; evaluates to eval(w)(bX).
template <class Inner>
Word<Poly<typename Inner::value_type>> dilate_cores(const PolyAlgebra<Inner>& alg, const GroupDescriptor& g,
                                                    const Word<Poly<typename Inner::value_type>>& w,
                                                    const typename Inner::value_type& b) {
  auto pieces = normal_form_congruent_X(alg, g, w);
  for (auto& p : pieces) {
    p.core.a = alg.scale_var(p.core.a, b);
    for (auto& z : p.core.zeta) z = alg.scale_var(z, b);
    p.core.zeta_f = alg.scale_var(p.core.zeta_f, b);
  }
  return assemble_normal_form(alg, pieces);
}

struct DilationResult {
  Elem b;      // s^l
  int l = 0;
  PolyWord word;  // over R[X]
  bool certified = false;
  std::string diagnostic;
};

// local_word over R_s[X] with value I at X = 0.
DilationResult dilate(const GroupDescriptor& g, Elem s, const PolyWord& local_word, int cap = 16);

// ---- patching ---------------------------------------------------------------------------------

struct PatchPiece {
  Elem s, e, b;
  int l = 0;
  PolyWord local_word;    // over R_s[X]
  PolyWord global_piece;  // over R[X]
};

struct PatchReport {
  std::string status = "failure";  // success | failure | unknown
  std::vector<PatchPiece> pieces;
  PolyWord word;
  bool verified = false;
  std::string diagnostic;
};

// One local group per maximal ideal, at the least element whose idempotent power is the local idempotent.
std::vector<LocalGroup> local_cover(const GroupDescriptor& g);

// local_words[i] lives over local_cover(g)[i].
PatchReport local_global_patch(const GroupDescriptor& g, const Matrix<Poly<Elem>>& alpha,
                               const std::vector<PolyWord>& local_words, int cap = 16);
// Local words taken as localization images of a word for alpha.
PatchReport local_global_patch(const GroupDescriptor& g, const PolyWord& alpha_word, int cap = 16);

// ---- normality --------------------------------------------------------------------------------

struct MForm {
  std::size_t p;
  Vector<Elem> w;  // gen - I = M(e_p, w)
};
std::optional<MForm> solve_m_form(const GroupDescriptor& g, const Matrix<Elem>& gen);

struct ConjugationReport {
  Word<Elem> word;  // eval(word) = beta eval(alpha) beta^{-1}
  std::size_t via_patch = 0, via_rank_one = 0, commuting = 0;
};

ConjugationReport conjugate_into_E(const GroupDescriptor& g, const Matrix<Elem>& beta, const Word<Elem>& alpha);

// ---- commutator containment -------------------------------------------------------------------

struct ContainmentReport {
  std::size_t pass = 0, fail = 0, unknown = 0;
  int l = 0;
  std::string mode;  // oracle | constructive
  std::vector<std::string> notes;
};

// Samples sigma congruent to I mod s^l and theta_ij(a/s) pulled back to R; checks [theta, sigma] in E.
ContainmentReport commutator_containment_check(const GroupDescriptor& g, Elem s, int l, std::size_t samples,
                                               std::uint64_t seed, const Closure* oracle = nullptr);

}  // namespace formring
