#pragma once

#include <memory>
#include <vector>

#include "formring/identities.hpp"
#include "formring/local_global.hpp"

namespace test_support {

using namespace formring;

inline FormRingPtr zform(unsigned n, long long lambda, std::vector<long long> gens) {
  const auto base = make_zmod(n, lambda);
  std::vector<Elem> g;
  for (long long x : gens) g.push_back(base.ring->from_int(x));
  return std::make_shared<const FormRing>(make_form_ring(base, g));
}

inline FormRingPtr hypform(unsigned n) {
  return std::make_shared<const FormRing>(hyperbolic_form_ring(zmod_ring(n)));
}

inline GroupDescriptor quad(FormRingPtr f, int n = 3) { return make_group(Flavor::quadratic, n, std::move(f)); }

inline GroupDescriptor herm(FormRingPtr f, std::vector<long long> a, int n = 4) {
  std::vector<Elem> e;
  for (long long x : a) e.push_back(f->ring().from_int(x));
  return make_group(Flavor::hermitian, n, std::move(f), e);
}

inline Elem el(const GroupDescriptor& g, long long v) { return g.ring().from_int(v); }

inline Vector<Elem> column(const Matrix<Elem>& m, std::size_t j) {
  Vector<Elem> v(m.rows);
  for (std::size_t k = 0; k < m.rows; ++k) v[k] = m(k, j);
  return v;
}

inline std::vector<Elem> members(const ElementSet& s) { return s.members(); }

inline std::vector<Elem> elems(std::initializer_list<int> xs) {
  std::vector<Elem> out;
  for (int x : xs) out.push_back(Elem(static_cast<std::uint16_t>(x)));
  return out;
}

}  // namespace test_support
