#pragma once

// Finite rings with involution, stored as full operation tables.
// Element 0 is always the additive identity.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "formring/error.hpp"

namespace formring {

struct Elem {
  std::uint16_t index = 0;
  constexpr Elem() = default;
  constexpr explicit Elem(std::uint16_t i) : index(i) {}
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// Subset of a finite ring, indexed by canonical element index.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe, 0) {}

  std::size_t universe() const { return bits_.size(); }
  bool contains(Elem e) const { return e.index < bits_.size() && bits_[e.index] != 0; }
  void insert(Elem e) { bits_.at(e.index) = 1; }
  std::size_t count() const;
  std::vector<Elem> members() const;
  bool subset_of(const ElementSet& other) const;
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class FiniteRing {
 public:
  enum class Kind { zmod, hyperbolic, product, quotient, slice };

  using BinaryOp = std::function<std::size_t(std::size_t, std::size_t)>;
  using UnaryOp = std::function<std::size_t(std::size_t)>;

  // Builds all tables eagerly and checks the ring-with-involution axioms.
  FiniteRing(std::string name, Kind kind, std::size_t size, std::size_t one, const BinaryOp& add,
             const BinaryOp& mul, const UnaryOp& conj, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  // Modulus for Z/n rings, 0 otherwise.
  std::uint32_t modulus() const { return modulus_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a.index * size_ + b.index]; }
  Elem mul(Elem a, Elem b) const { return mul_[a.index * size_ + b.index]; }
  Elem neg(Elem a) const { return neg_[a.index]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem conj(Elem a) const { return conj_[a.index]; }
  bool is_unit(Elem a) const { return inv_[a.index] != kNoInverse; }
  Elem inv(Elem a) const;
  Elem element(std::size_t index) const;
  // Reduction of an arbitrary integer through the additive structure (n * 1).
  Elem from_int(long long v) const;

  bool commutative() const { return commutative_; }
  bool trivial_involution() const { return trivial_involution_; }
  bool is_central(Elem a) const;

  const std::string& label(Elem a) const { return labels_.at(a.index); }
  std::vector<Elem> elements() const;
  std::vector<Elem> units() const;

  void set_modulus(std::uint32_t m) { modulus_ = m; }

 private:
  static constexpr std::uint16_t kNoInverse = 0xFFFF;

  std::string name_;
  Kind kind_;
  std::size_t size_;
  Elem one_;
  std::uint32_t modulus_ = 0;
  std::vector<Elem> add_, mul_;
  std::vector<Elem> neg_, conj_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::string> labels_;
  bool commutative_ = true;
  bool trivial_involution_ = true;
};

// Z/n with trivial involution.
RingPtr zmod_ring(unsigned n);
// R + R° with swap involution; (x, y) has index x*|R| + y.
RingPtr hyperbolic_ring(const RingPtr& base);
// Direct product with componentwise involution; mixed-radix indices, first factor most significant.
RingPtr product_ring(const std::vector<RingPtr>& factors);

// Ring homomorphism between two finite rings, stored as a table.
struct RingMap {
  RingPtr source;
  RingPtr target;
  std::vector<Elem> table;  // source index -> target element
  Elem operator()(Elem a) const { return table.at(a.index); }
};

struct QuotientData {
  RingMap projection;
  std::vector<Elem> lift;  // target index -> least source representative
};

// R/I for a two-sided ideal I with conj(I) = I.
QuotientData quotient_ring(const RingPtr& ring, const ElementSet& ideal);

struct SliceData {
  RingMap projection;             // r -> e r
  std::vector<Elem> inclusion;    // target index -> source element
  Elem idempotent;
};

// The ring eR (identity e) for a central idempotent e with conj(e) = e.
SliceData slice_ring(const RingPtr& ring, Elem e);

// Multiplier lambda with lambda * conj(lambda) = 1, central.
struct LambdaRing {
  RingPtr ring;
  Elem lambda;
};

void check_multiplier(const FiniteRing& ring, Elem lambda);
LambdaRing make_zmod(unsigned n, long long lambda);
LambdaRing make_hyperbolic_double(const RingPtr& base);

}  // namespace formring
