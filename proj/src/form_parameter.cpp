#include "formring/form_parameter.hpp"

#include <deque>

namespace formring {

ElementSet lambda_min(const FiniteRing& ring, Elem lambda) {
  std::vector<Elem> image;
  for (Elem a : ring.elements()) image.push_back(ring.sub(a, ring.mul(lambda, ring.conj(a))));
  return additive_closure(ring, image);
}

ElementSet lambda_max(const FiniteRing& ring, Elem lambda) {
  ElementSet out(ring.size());
  for (Elem a : ring.elements())
    if (a == ring.neg(ring.mul(lambda, ring.conj(a)))) out.insert(a);
  return out;
}

namespace {

// Closure of seeds under addition and a -> conj(x) a x.
ElementSet form_closure(const FiniteRing& ring, const std::vector<Elem>& seeds) {
  ElementSet out(ring.size());
  out.insert(ring.zero());
  std::deque<Elem> queue{ring.zero()};
  std::vector<Elem> found{ring.zero()};
  auto push = [&](Elem y) {
    if (!out.contains(y)) {
      out.insert(y);
      queue.push_back(y);
      found.push_back(y);
    }
  };
  for (Elem s : seeds) push(s);
  while (!queue.empty()) {
    Elem a = queue.front();
    queue.pop_front();
    for (Elem x : ring.elements()) push(ring.mul(ring.mul(ring.conj(x), a), x));
    for (std::size_t k = 0; k < found.size(); ++k) push(ring.add(a, found[k]));
  }
  return out;
}

}  // namespace

FormParameter build_form_parameter(const FiniteRing& ring, Elem lambda, const std::vector<Elem>& gens) {
  check_multiplier(ring, lambda);
  std::vector<Elem> seeds = lambda_min(ring, lambda).members();
  seeds.insert(seeds.end(), gens.begin(), gens.end());
  ElementSet lam = form_closure(ring, seeds);
  ElementSet mx = lambda_max(ring, lambda);
  for (Elem a : lam.members())
    if (!mx.contains(a))
      fail(ErrorKind::invalid_form_parameter,
           "closure contains " + ring.label(a) + " which is not in Lambda_max of " + ring.name());
  return FormParameter{std::move(lam), gens};
}

FormAxiomReport check_form_axioms(const FiniteRing& ring, Elem lambda, const ElementSet& lam) {
  FormAxiomReport rep;
  ElementSet mn = lambda_min(ring, lambda), mx = lambda_max(ring, lambda);
  auto members = lam.members();
  if (!lam.contains(ring.zero())) {
    rep.additive = false;
    rep.diagnostic = "0 not in Lambda";
  }
  for (Elem a : members) {
    for (Elem b : members)
      if (rep.additive && !lam.contains(ring.add(a, b))) {
        rep.additive = false;
        rep.diagnostic = "not closed under addition at " + ring.label(a) + "+" + ring.label(b);
      }
    for (Elem x : ring.elements())
      if (rep.conjugation_closed && !lam.contains(ring.mul(ring.mul(ring.conj(x), a), x))) {
        rep.conjugation_closed = false;
        rep.diagnostic = "not closed under conjugation by " + ring.label(x);
      }
  }
  if (!mn.subset_of(lam)) {
    rep.contains_min = false;
    rep.diagnostic = "Lambda_min not contained in Lambda";
  }
  if (!lam.subset_of(mx)) {
    rep.inside_max = false;
    rep.diagnostic = "Lambda not contained in Lambda_max";
  }
  return rep;
}

FormRing::FormRing(RingPtr ring, Elem lambda, FormParameter lam)
    : ring_(std::move(ring)), lambda_(lambda), lam_(std::move(lam)) {
  check_multiplier(*ring_, lambda_);
  min_ = lambda_min(*ring_, lambda_);
  max_ = lambda_max(*ring_, lambda_);
  FormAxiomReport rep = check_form_axioms(*ring_, lambda_, lam_.members);
  if (!rep.ok()) fail(ErrorKind::invalid_form_parameter, rep.diagnostic);
  trace_solution_.assign(ring_->size(), -1);
  for (Elem z : ring_->elements()) {
    Elem t = ring_->add(z, ring_->mul(lambda_, ring_->conj(z)));
    if (trace_solution_[t.index] < 0) trace_solution_[t.index] = z.index;
  }
}

std::optional<Elem> FormRing::solve_trace(Elem t) const {
  const std::int32_t z = trace_solution_.at(t.index);
  if (z < 0) return std::nullopt;
  return Elem(static_cast<std::uint16_t>(z));
}

FormRing make_form_ring(const LambdaRing& base, const std::vector<Elem>& gens) {
  return FormRing(base.ring, base.lambda, build_form_parameter(*base.ring, base.lambda, gens));
}

FormRing hyperbolic_form_ring(const RingPtr& base) {
  LambdaRing lr = make_hyperbolic_double(base);
  const std::size_t m = base->size();
  std::vector<Elem> gens;
  for (Elem x : base->elements())
    gens.emplace_back(static_cast<std::uint16_t>(x.index * m + base->neg(x).index));
  FormParameter p = build_form_parameter(*lr.ring, lr.lambda, gens);
  return FormRing(lr.ring, lr.lambda, std::move(p));
}

bool poly_parameter_contains(const FormRing& form, const std::vector<Elem>& coeffs) {
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const ElementSet& slice = (k % 2 == 0) ? form.lam() : form.lam_min();
    if (!slice.contains(coeffs[k])) return false;
  }
  return true;
}

FormRing induce_parameter(const FormRing& form, const RingMap& map) {
  const FiniteRing& t = *map.target;
  std::vector<Elem> image;
  for (Elem a : form.lam().members()) image.push_back(map(a));
  Elem lam = map(form.lambda());
  return FormRing(map.target, lam, build_form_parameter(t, lam, image));
}

FormRing induce_localized_parameter(const FormRing& form, const LocalizationMap& loc) {
  RingMap m{loc.source, loc.target, loc.table};
  return induce_parameter(form, m);
}

}  // namespace formring
