#pragma once

// Transitive action on isotropic unimodular vectors and diagonalization modulo a radical ideal.

#include <optional>
#include <string>
#include <vector>

#include "formring/generators.hpp"
#include "formring/ideals.hpp"

namespace formring {

struct UnimodularCertificate {
  Vector<Elem> v, u;  // sum v_i u_i = 1
};

// Dual vector found by additive search over R v_1 + ... + R v_m; nullopt when v is not unimodular.
std::optional<UnimodularCertificate> unimodular_certificate(const FiniteRing& ring, const Vector<Elem>& v);
bool check_certificate(const FiniteRing& ring, const UnimodularCertificate& c);

struct CosetUnit {
  Elem i, u, e;  // a + i = u e with e idempotent generating R a + I
};

// Semisimple commutative R only.
CosetUnit find_unit_in_coset(const FiniteRing& ring, Elem a, const ElementSet& ideal);

struct ColumnReduction {
  Word<Elem> word;  // eval(word) applied to the vector moves its x-block to (0, ..., 0, e)
  Elem e;
};

// Elementary moves on the x-block of a length-2n vector over a semisimple ring.
ColumnReduction column_reduce_semisimple(const GroupDescriptor& g, const Vector<Elem>& v);

// The group over R/J together with the quotient map.
struct QuotientGroup {
  GroupDescriptor g;
  QuotientData q;
};
QuotientGroup quotient_group(const GroupDescriptor& g, const ElementSet& ideal);

// Lift of a quotient symbol with least preimages subject to the family constraints; nullopt if none exists.
std::optional<Symbol<Elem>> lift_symbol(const GroupDescriptor& g, const QuotientGroup& qg, const Symbol<Elem>& s);
Vector<Elem> project_vector(const QuotientGroup& qg, const Vector<Elem>& v);

// Word w with eval(w) v having a unit in coordinate n (the last x-coordinate); ideal ascent.
// With qg given, every emitted symbol is liftable to R.
Word<Elem> improve_to_unit(const GroupDescriptor& g, const Vector<Elem>& v, const GroupDescriptor* lift_target = nullptr,
                           const QuotientGroup* qg = nullptr);

struct IsotropyReport {
  bool unimodular = false;
  bool isotropic = false;
  std::string diagnostic;
  std::optional<UnimodularCertificate> certificate;
};
IsotropyReport check_isotropic_unimodular(const GroupDescriptor& g, const Vector<Elem>& v);

struct ReductionResult {
  Vector<Elem> input;
  Word<Elem> word;  // eval(word) input = e_{2n}
  std::string direction = "to e_2n";
  std::vector<std::string> steps;
};

ReductionResult reduce_isotropic_unimodular(const GroupDescriptor& g, const Vector<Elem>& v);

struct Diagonalization {
  Word<Elem> theta;  // beta eval(theta) = d
  Matrix<Elem> d;
};

// beta congruent to I modulo an ideal inside the Jacobson radical.
Diagonalization diagonalize_mod_radical(const GroupDescriptor& g, const Matrix<Elem>& beta, const ElementSet& ideal);

}  // namespace formring
