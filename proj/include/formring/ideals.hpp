#pragma once

// Ideals, radicals, idempotent decompositions and localizations of finite rings.

#include <optional>
#include <vector>

#include "formring/ring.hpp"

namespace formring {

ElementSet ideal_generated(const FiniteRing& ring, const std::vector<Elem>& gens);
ElementSet additive_closure(const FiniteRing& ring, const std::vector<Elem>& gens);

// Elements r with 1 + x r a unit for every x.
ElementSet jacobson_radical(const FiniteRing& ring);
bool is_semisimple(const FiniteRing& ring);
bool is_nilpotent(const FiniteRing& ring, Elem a);

std::vector<Elem> idempotents(const FiniteRing& ring);
// Minimal nonzero central idempotents; they are orthogonal and sum to 1.
std::vector<Elem> primitive_idempotents(const FiniteRing& ring);
// Minimal nonzero involution-stable central idempotents.
std::vector<Elem> stable_primitive_idempotents(const FiniteRing& ring);
// Idempotent e with ideal(gens) = R e (commutative ring); nullopt when not principal-idempotent.
std::optional<Elem> idempotent_generator(const FiniteRing& ring, const ElementSet& ideal);

// Maximal ideals of a finite commutative ring, one per local factor.
std::vector<ElementSet> enumerate_maximal_ideals(const FiniteRing& ring);
bool is_maximal_ideal(const FiniteRing& ring, const ElementSet& ideal);

struct LocalizationMap {
  RingPtr source;
  RingPtr target;
  std::optional<Elem> inverted;   // s, when localizing at an element
  Elem idempotent;                // e with R_s = eR
  std::vector<Elem> table;        // source index -> target element (r -> e r)
  std::vector<Elem> inclusion;    // target index -> source element
  int conductor = 1;              // least k with s^k R meeting ker(r -> e r) only in 0

  Elem operator()(Elem a) const { return table.at(a.index); }
  Elem lift(Elem a) const { return inclusion.at(a.index); }
};

LocalizationMap localize_at_element(const RingPtr& ring, Elem s);
LocalizationMap localize_at_maximal(const RingPtr& ring, const ElementSet& m);
// Least k >= 1 such that no nonzero x in s^k R satisfies e x = 0.
int injectivity_conductor(const FiniteRing& ring, Elem s, Elem e);

// The unique idempotent among the powers of s.
Elem idempotent_power(const FiniteRing& ring, Elem s);

}  // namespace formring
