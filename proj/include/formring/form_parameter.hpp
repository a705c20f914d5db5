#pragma once

// Form parameters Lambda_min <= Lambda <= Lambda_max and form rings.

#include <string>
#include <vector>

#include "formring/ideals.hpp"
#include "formring/ring.hpp"

namespace formring {

ElementSet lambda_min(const FiniteRing& ring, Elem lambda);
ElementSet lambda_max(const FiniteRing& ring, Elem lambda);

struct FormParameter {
  ElementSet members;
  std::vector<Elem> generators;
  bool contains(Elem a) const { return members.contains(a); }
};

// Smallest form parameter containing Lambda_min and gens; throws when it escapes Lambda_max.
FormParameter build_form_parameter(const FiniteRing& ring, Elem lambda, const std::vector<Elem>& gens);

struct FormAxiomReport {
  bool additive = true;
  bool contains_min = true;
  bool inside_max = true;
  bool conjugation_closed = true;
  std::string diagnostic;
  bool ok() const { return additive && contains_min && inside_max && conjugation_closed; }
};

FormAxiomReport check_form_axioms(const FiniteRing& ring, Elem lambda, const ElementSet& lam);

class FormRing {
 public:
  FormRing(RingPtr ring, Elem lambda, FormParameter lam);

  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  Elem lambda() const { return lambda_; }
  const FormParameter& parameter() const { return lam_; }
  const ElementSet& lam() const { return lam_.members; }
  const ElementSet& lam_min() const { return min_; }
  const ElementSet& lam_max() const { return max_; }
  // Least z (enumeration order) with z + lambda*conj(z) = t.
  std::optional<Elem> solve_trace(Elem t) const;

 private:
  RingPtr ring_;
  Elem lambda_;
  FormParameter lam_;
  ElementSet min_, max_;
  std::vector<std::int32_t> trace_solution_;
};

FormRing make_form_ring(const LambdaRing& base, const std::vector<Elem>& gens);
// Canonical parameter {(x, -x)} on the hyperbolic double.
FormRing hyperbolic_form_ring(const RingPtr& base);

// Membership in the parameter induced on R[X] (coefficient of X^k: Lambda for even k, Lambda_min for odd k).
bool poly_parameter_contains(const FormRing& form, const std::vector<Elem>& coeffs);

// Image of Lambda under a ring map onto target, closed additively and under conjugation.
FormRing induce_parameter(const FormRing& form, const RingMap& map);
FormRing induce_localized_parameter(const FormRing& form, const LocalizationMap& loc);

}  // namespace formring
