#include "formring/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace formring {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::multiplier_invalid: return "multiplier-invalid";
    case ErrorKind::invalid_form_parameter: return "invalid-form-parameter";
    case ErrorKind::invalid_ring: return "invalid-ring";
    case ErrorKind::invalid_ideal: return "invalid-ideal";
    case ErrorKind::localization_zero: return "localization-is-zero";
    case ErrorKind::constraint: return "constraint";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::pairing: return "pairing";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::certification: return "certification";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::parse: return "parse";
  }
  return "error";
}

std::size_t ElementSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Elem> ElementSet::members() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.emplace_back(static_cast<std::uint16_t>(i));
  return out;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.contains(Elem(static_cast<std::uint16_t>(i)))) return false;
  return true;
}

namespace {

constexpr std::size_t kMaxRingSize = 4096;

Elem as_elem(std::size_t i) { return Elem(static_cast<std::uint16_t>(i)); }

}  // namespace

FiniteRing::FiniteRing(std::string name, Kind kind, std::size_t size, std::size_t one,
                       const BinaryOp& add, const BinaryOp& mul, const UnaryOp& conj,
                       std::vector<std::string> labels)
    : name_(std::move(name)), kind_(kind), size_(size), one_(as_elem(one)), labels_(std::move(labels)) {
  if (size < 2) fail(ErrorKind::invalid_ring, "ring must have at least two elements (zero ring rejected)");
  if (size > kMaxRingSize) fail(ErrorKind::resource_limit, "ring too large for table representation");
  if (one == 0) fail(ErrorKind::invalid_ring, "identity equals zero");
  add_.resize(size * size);
  mul_.resize(size * size);
  neg_.resize(size);
  conj_.resize(size);
  inv_.assign(size, kNoInverse);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      add_[a * size + b] = as_elem(add(a, b));
      mul_[a * size + b] = as_elem(mul(a, b));
    }
    conj_[a] = as_elem(conj(a));
  }
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      if (add_[a * size + b].index == 0) neg_[a] = as_elem(b);
      if (mul_[a * size + b] == one_ && mul_[b * size + a] == one_) inv_[a] = static_cast<std::uint16_t>(b);
      if (mul_[a * size + b] != mul_[b * size + a]) commutative_ = false;
    }
    if (conj_[a].index != a) trivial_involution_ = false;
  }
  if (labels_.size() != size) {
    labels_.clear();
    for (std::size_t i = 0; i < size; ++i) labels_.push_back(std::to_string(i));
  }
  // Involution axioms: additive, anti-multiplicative, self-inverse, fixes 1.
  if (conj_[one_.index] != one_) fail(ErrorKind::invalid_ring, name_ + ": involution does not fix 1");
  for (std::size_t a = 0; a < size; ++a) {
    if (conj_[conj_[a].index].index != a) fail(ErrorKind::invalid_ring, name_ + ": involution not self-inverse");
    for (std::size_t b = 0; b < size; ++b) {
      const Elem ea = as_elem(a), eb = as_elem(b);
      if (this->conj(this->add(ea, eb)) != this->add(this->conj(ea), this->conj(eb)))
        fail(ErrorKind::invalid_ring, name_ + ": involution not additive");
      if (this->conj(this->mul(ea, eb)) != this->mul(this->conj(eb), this->conj(ea)))
        fail(ErrorKind::invalid_ring, name_ + ": involution not anti-multiplicative");
    }
  }
}

Elem FiniteRing::inv(Elem a) const {
  if (!is_unit(a)) fail(ErrorKind::precondition, "element " + label(a) + " is not a unit in " + name_);
  return as_elem(inv_[a.index]);
}

Elem FiniteRing::element(std::size_t index) const {
  if (index >= size_) fail(ErrorKind::parse, "element index " + std::to_string(index) + " out of range for " + name_);
  return as_elem(index);
}

Elem FiniteRing::from_int(long long v) const {
  Elem acc = zero();
  Elem step = v >= 0 ? one_ : neg(one_);
  long long n = v >= 0 ? v : -v;
  n %= static_cast<long long>(size_);  // the characteristic divides |R|
  for (long long k = 0; k < n; ++k) acc = add(acc, step);
  return acc;
}

bool FiniteRing::is_central(Elem a) const {
  for (std::size_t x = 0; x < size_; ++x)
    if (mul(a, as_elem(x)) != mul(as_elem(x), a)) return false;
  return true;
}

std::vector<Elem> FiniteRing::elements() const {
  std::vector<Elem> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(as_elem(i));
  return out;
}

std::vector<Elem> FiniteRing::units() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (inv_[i] != kNoInverse) out.push_back(as_elem(i));
  return out;
}

RingPtr zmod_ring(unsigned n) {
  if (n < 2) fail(ErrorKind::invalid_ring, "zmod requires n >= 2");
  auto ring = std::make_shared<FiniteRing>(
      "zmod:" + std::to_string(n), FiniteRing::Kind::zmod, n, 1,
      [n](std::size_t a, std::size_t b) { return (a + b) % n; },
      [n](std::size_t a, std::size_t b) { return (a * b) % n; }, [](std::size_t a) { return a; },
      std::vector<std::string>{});
  ring->set_modulus(n);
  return ring;
}

RingPtr hyperbolic_ring(const RingPtr& base) {
  const std::size_t m = base->size();
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      labels.push_back("(" + base->label(as_elem(x)) + "," + base->label(as_elem(y)) + ")");
  const FiniteRing& b = *base;
  // Second coordinate lives in the opposite ring: (x,y)(x',y') = (xx', y'y).
  return std::make_shared<FiniteRing>(
      "hyp:" + base->name(), FiniteRing::Kind::hyperbolic, m * m, b.one().index * m + b.one().index,
      [&b, m](std::size_t p, std::size_t q) {
        return b.add(as_elem(p / m), as_elem(q / m)).index * m + b.add(as_elem(p % m), as_elem(q % m)).index;
      },
      [&b, m](std::size_t p, std::size_t q) {
        return b.mul(as_elem(p / m), as_elem(q / m)).index * m + b.mul(as_elem(q % m), as_elem(p % m)).index;
      },
      [m](std::size_t p) { return (p % m) * m + p / m; }, std::move(labels));
}

RingPtr product_ring(const std::vector<RingPtr>& factors) {
  if (factors.empty()) fail(ErrorKind::invalid_ring, "empty product");
  std::size_t total = 1;
  for (const auto& f : factors) total *= f->size();
  if (total > kMaxRingSize) fail(ErrorKind::resource_limit, "product ring too large");
  auto split = [factors](std::size_t idx) {
    std::vector<Elem> parts(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      parts[k] = as_elem(idx % factors[k]->size());
      idx /= factors[k]->size();
    }
    return parts;
  };
  auto join = [factors](const std::vector<Elem>& parts) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) idx = idx * factors[k]->size() + parts[k].index;
    return idx;
  };
  auto componentwise = [factors, split, join](auto op) {
    return [factors, split, join, op](std::size_t a, std::size_t b) {
      auto pa = split(a), pb = split(b);
      for (std::size_t k = 0; k < factors.size(); ++k) pa[k] = op(*factors[k], pa[k], pb[k]);
      return join(pa);
    };
  };
  std::vector<Elem> ones;
  std::string name = "prod:";
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    ones.push_back(factors[k]->one());
    name += (k ? "," : "") + factors[k]->name();
  }
  for (std::size_t i = 0; i < total; ++i) {
    auto parts = split(i);
    std::string l = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) l += (k ? "," : "") + factors[k]->label(parts[k]);
    labels.push_back(l + ")");
  }
  return std::make_shared<FiniteRing>(
      name, FiniteRing::Kind::product, total, join(ones),
      componentwise([](const FiniteRing& r, Elem x, Elem y) { return r.add(x, y); }),
      componentwise([](const FiniteRing& r, Elem x, Elem y) { return r.mul(x, y); }),
      [factors, split, join](std::size_t a) {
        auto pa = split(a);
        for (std::size_t k = 0; k < factors.size(); ++k) pa[k] = factors[k]->conj(pa[k]);
        return join(pa);
      },
      std::move(labels));
}

QuotientData quotient_ring(const RingPtr& ring, const ElementSet& ideal) {
  const FiniteRing& r = *ring;
  const std::size_t n = r.size();
  if (ideal.universe() != n || !ideal.contains(r.zero()))
    fail(ErrorKind::invalid_ideal, "ideal does not belong to " + r.name());
  if (ideal.contains(r.one())) fail(ErrorKind::invalid_ring, "quotient by the unit ideal is the zero ring");
  // Coset representatives: least index in each coset, cosets ordered by representative.
  std::vector<std::size_t> coset_of(n, SIZE_MAX);
  std::vector<Elem> reps;
  auto members = ideal.members();
  for (std::size_t a = 0; a < n; ++a) {
    if (coset_of[a] != SIZE_MAX) continue;
    const std::size_t c = reps.size();
    reps.push_back(as_elem(a));
    for (Elem i : members) coset_of[r.add(as_elem(a), i).index] = c;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (Elem i : members) {
      if (!ideal.contains(r.mul(as_elem(a), i)) || !ideal.contains(r.mul(i, as_elem(a))))
        fail(ErrorKind::invalid_ideal, "subset is not a two-sided ideal");
      if (!ideal.contains(r.conj(i))) fail(ErrorKind::invalid_ideal, "ideal is not involution-stable");
    }
  std::vector<std::string> labels;
  for (Elem rep : reps) labels.push_back("[" + r.label(rep) + "]");
  auto target = std::make_shared<FiniteRing>(
      r.name() + "/I", FiniteRing::Kind::quotient, reps.size(), coset_of[r.one().index],
      [&r, reps, coset_of](std::size_t a, std::size_t b) { return coset_of[r.add(reps[a], reps[b]).index]; },
      [&r, reps, coset_of](std::size_t a, std::size_t b) { return coset_of[r.mul(reps[a], reps[b]).index]; },
      [&r, reps, coset_of](std::size_t a) { return coset_of[r.conj(reps[a]).index]; }, std::move(labels));
  QuotientData out;
  out.projection.source = ring;
  out.projection.target = target;
  for (std::size_t a = 0; a < n; ++a) out.projection.table.push_back(as_elem(coset_of[a]));
  out.lift = reps;
  return out;
}

SliceData slice_ring(const RingPtr& ring, Elem e) {
  const FiniteRing& r = *ring;
  if (r.mul(e, e) != e) fail(ErrorKind::precondition, "slice requires an idempotent");
  if (e == r.zero()) fail(ErrorKind::localization_zero, "slice at the zero idempotent is the zero ring");
  if (!r.is_central(e)) fail(ErrorKind::precondition, "slice requires a central idempotent");
  if (r.conj(e) != e) fail(ErrorKind::precondition, "slice idempotent is not involution-stable");
  std::map<std::uint16_t, std::size_t> index_of;
  std::vector<Elem> incl;
  for (std::size_t a = 0; a < r.size(); ++a) {
    Elem ea = r.mul(e, as_elem(a));
    if (!index_of.count(ea.index)) {
      index_of[ea.index] = 0;
    }
  }
  for (auto& [src, idx] : index_of) {
    idx = incl.size();
    incl.push_back(Elem(src));
  }
  std::vector<std::string> labels;
  for (Elem x : incl) labels.push_back(r.label(x));
  auto idx = [index_of](Elem x) { return index_of.at(x.index); };
  auto target = std::make_shared<FiniteRing>(
      r.name() + "*" + r.label(e), FiniteRing::Kind::slice, incl.size(), idx(e),
      [&r, incl, idx](std::size_t a, std::size_t b) { return idx(r.add(incl[a], incl[b])); },
      [&r, incl, idx](std::size_t a, std::size_t b) { return idx(r.mul(incl[a], incl[b])); },
      [&r, incl, idx](std::size_t a) { return idx(r.conj(incl[a])); }, std::move(labels));
  SliceData out;
  out.projection.source = ring;
  out.projection.target = target;
  for (std::size_t a = 0; a < r.size(); ++a) out.projection.table.push_back(as_elem(idx(r.mul(e, as_elem(a)))));
  out.inclusion = incl;
  out.idempotent = e;
  return out;
}

void check_multiplier(const FiniteRing& ring, Elem lambda) {
  if (ring.mul(lambda, ring.conj(lambda)) != ring.one())
    fail(ErrorKind::multiplier_invalid, "lambda=" + ring.label(lambda) + " does not satisfy lambda*conj(lambda)=1 in " +
                                            ring.name());
  if (!ring.is_central(lambda))
    fail(ErrorKind::multiplier_invalid, "lambda=" + ring.label(lambda) + " is not central in " + ring.name());
}

LambdaRing make_zmod(unsigned n, long long lambda) {
  auto ring = zmod_ring(n);
  long long v = lambda % static_cast<long long>(n);
  if (v < 0) v += n;
  Elem l = ring->element(static_cast<std::size_t>(v));
  check_multiplier(*ring, l);
  return {ring, l};
}

LambdaRing make_hyperbolic_double(const RingPtr& base) {
  auto ring = hyperbolic_ring(base);
  check_multiplier(*ring, ring->one());
  return {ring, ring->one()};
}

}  // namespace formring
