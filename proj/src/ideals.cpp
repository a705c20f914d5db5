#include "formring/ideals.hpp"

#include <algorithm>
#include <deque>

namespace formring {

ElementSet additive_closure(const FiniteRing& ring, const std::vector<Elem>& gens) {
  ElementSet out(ring.size());
  out.insert(ring.zero());
  std::deque<Elem> queue{ring.zero()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (Elem g : gens) {
      Elem y = ring.add(x, g);
      if (!out.contains(y)) {
        out.insert(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

ElementSet ideal_generated(const FiniteRing& ring, const std::vector<Elem>& gens) {
  std::vector<Elem> spanning;
  for (Elem g : gens)
    for (Elem x : ring.elements())
      for (Elem y : ring.elements()) spanning.push_back(ring.mul(ring.mul(x, g), y));
  std::sort(spanning.begin(), spanning.end());
  spanning.erase(std::unique(spanning.begin(), spanning.end()), spanning.end());
  return additive_closure(ring, spanning);
}

ElementSet jacobson_radical(const FiniteRing& ring) {
  ElementSet out(ring.size());
  for (Elem r : ring.elements()) {
    bool in = true;
    for (Elem x : ring.elements()) {
      if (!ring.is_unit(ring.add(ring.one(), ring.mul(x, r)))) {
        in = false;
        break;
      }
    }
    if (in) out.insert(r);
  }
  return out;
}

bool is_semisimple(const FiniteRing& ring) { return jacobson_radical(ring).count() == 1; }

bool is_nilpotent(const FiniteRing& ring, Elem a) {
  Elem p = a;
  for (std::size_t k = 0; k <= ring.size(); ++k) {
    if (p == ring.zero()) return true;
    p = ring.mul(p, a);
  }
  return false;
}

std::vector<Elem> idempotents(const FiniteRing& ring) {
  std::vector<Elem> out;
  for (Elem e : ring.elements())
    if (ring.mul(e, e) == e) out.push_back(e);
  return out;
}

namespace {

std::vector<Elem> minimal_idempotents(const FiniteRing& ring, bool stable) {
  std::vector<Elem> pool;
  for (Elem e : idempotents(ring))
    if (e != ring.zero() && ring.is_central(e) && (!stable || ring.conj(e) == e)) pool.push_back(e);
  std::vector<Elem> out;
  for (Elem e : pool) {
    bool minimal = true;
    for (Elem f : pool)
      if (f != e && ring.mul(e, f) == f) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<Elem> primitive_idempotents(const FiniteRing& ring) { return minimal_idempotents(ring, false); }

std::vector<Elem> stable_primitive_idempotents(const FiniteRing& ring) { return minimal_idempotents(ring, true); }

std::optional<Elem> idempotent_generator(const FiniteRing& ring, const ElementSet& ideal) {
  for (Elem e : idempotents(ring)) {
    if (!ideal.contains(e)) continue;
    bool generates = true;
    for (Elem x : ideal.members())
      if (ring.mul(x, e) != x) {
        generates = false;
        break;
      }
    if (generates) return e;
  }
  return std::nullopt;
}

std::vector<ElementSet> enumerate_maximal_ideals(const FiniteRing& ring) {
  if (!ring.commutative()) fail(ErrorKind::precondition, "maximal-ideal enumeration requires a commutative ring");
  std::vector<ElementSet> out;
  for (Elem e : primitive_idempotents(ring)) {
    // m = {r : e r is not a unit of the local factor e R}.
    ElementSet m(ring.size());
    for (Elem r : ring.elements()) {
      Elem er = ring.mul(e, r);
      bool unit = false;
      for (Elem y : ring.elements())
        if (ring.mul(er, y) == e) {
          unit = true;
          break;
        }
      if (!unit) m.insert(r);
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool is_maximal_ideal(const FiniteRing& ring, const ElementSet& ideal) {
  for (const auto& m : enumerate_maximal_ideals(ring))
    if (m == ideal) return true;
  return false;
}

Elem idempotent_power(const FiniteRing& ring, Elem s) {
  Elem p = s;
  for (std::size_t k = 1; k <= 2 * ring.size() + 2; ++k) {
    if (ring.mul(p, p) == p) return p;
    p = ring.mul(p, s);
  }
  fail(ErrorKind::precondition, "no idempotent power found for " + ring.label(s));
}

int injectivity_conductor(const FiniteRing& ring, Elem s, Elem e) {
  Elem sk = s;
  for (int k = 1; k <= static_cast<int>(ring.size()) + 1; ++k) {
    bool injective = true;
    for (Elem x : ring.elements()) {
      Elem y = ring.mul(sk, x);
      if (y != ring.zero() && ring.mul(e, y) == ring.zero()) {
        injective = false;
        break;
      }
    }
    if (injective) return k;
    sk = ring.mul(sk, s);
  }
  fail(ErrorKind::resource_limit, "no injectivity conductor found");
}

namespace {

LocalizationMap from_slice(const RingPtr& ring, Elem e) {
  SliceData slice = slice_ring(ring, e);
  LocalizationMap out;
  out.source = ring;
  out.target = slice.projection.target;
  out.idempotent = e;
  out.table = slice.projection.table;
  out.inclusion = slice.inclusion;
  return out;
}

}  // namespace

LocalizationMap localize_at_element(const RingPtr& ring, Elem s) {
  const FiniteRing& r = *ring;
  if (!r.commutative()) fail(ErrorKind::precondition, "localization requires a commutative ring");
  if (is_nilpotent(r, s)) fail(ErrorKind::localization_zero, r.label(s) + " is nilpotent in " + r.name());
  Elem e = idempotent_power(r, s);
  LocalizationMap out = from_slice(ring, e);
  out.inverted = s;
  out.conductor = injectivity_conductor(r, s, e);
  return out;
}

LocalizationMap localize_at_maximal(const RingPtr& ring, const ElementSet& m) {
  const FiniteRing& r = *ring;
  if (!is_maximal_ideal(r, m)) fail(ErrorKind::invalid_ideal, "ideal is not maximal in " + r.name());
  // Involution-stable local factor: the stable primitive idempotent outside m.
  for (Elem e : stable_primitive_idempotents(r)) {
    if (m.contains(e)) continue;
    LocalizationMap out = from_slice(ring, e);
    out.inverted = e;
    out.conductor = 1;
    return out;
  }
  fail(ErrorKind::invalid_ideal, "no local factor found for the given maximal ideal");
}

}  // namespace formring
