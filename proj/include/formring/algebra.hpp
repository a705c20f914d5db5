#pragma once

// Coefficient algebras used by the matrix and word machinery:
// ScalarAlgebra is a finite form ring, PolyAlgebra<Inner> is Inner[X].
// Both expose the same interface so every algorithm is written once.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "formring/form_parameter.hpp"

namespace formring {

using FormRingPtr = std::shared_ptr<const FormRing>;

class ScalarAlgebra {
 public:
  using value_type = Elem;

  ScalarAlgebra() = default;
  explicit ScalarAlgebra(FormRingPtr form) : form_(std::move(form)), ring_(&form_->ring()) {}

  const FormRing& form() const { return *form_; }
  const FormRingPtr& form_ptr() const { return form_; }
  const FiniteRing& ring() const { return *ring_; }

  Elem zero() const { return ring_->zero(); }
  Elem one() const { return ring_->one(); }
  Elem add(Elem a, Elem b) const { return ring_->add(a, b); }
  Elem sub(Elem a, Elem b) const { return ring_->sub(a, b); }
  Elem neg(Elem a) const { return ring_->neg(a); }
  Elem mul(Elem a, Elem b) const { return ring_->mul(a, b); }
  Elem conj(Elem a) const { return ring_->conj(a); }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool is_zero(Elem a) const { return a == ring_->zero(); }
  Elem scalar(Elem a) const { return a; }
  Elem lambda() const { return form_->lambda(); }
  Elem lambda_bar() const { return ring_->conj(form_->lambda()); }

  bool in_lambda(Elem a) const { return form_->lam().contains(a); }
  bool in_lambda_min(Elem a) const { return form_->lam_min().contains(a); }
  bool in_lambda_max(Elem a) const { return form_->lam_max().contains(a); }
  std::optional<Elem> solve_trace(Elem t) const { return form_->solve_trace(t); }
  // Vanishing modulo X^k is meaningless for scalars beyond k = 0.
  bool zero_below(Elem a, int k) const { return k <= 0 || is_zero(a); }

  std::string show(Elem a) const { return ring_->label(a); }

 private:
  FormRingPtr form_;
  const FiniteRing* ring_ = nullptr;
};

template <class V>
struct Poly {
  std::vector<V> c;  // c[k] is the coefficient of X^k; no trailing zeros
  friend bool operator==(const Poly&, const Poly&) = default;
};

template <class Inner>
class PolyAlgebra {
 public:
  using coeff_type = typename Inner::value_type;
  using value_type = Poly<coeff_type>;

  PolyAlgebra() = default;
  explicit PolyAlgebra(Inner inner) : inner_(std::move(inner)) {}

  const Inner& inner() const { return inner_; }
  const FormRing& form() const { return inner_.form(); }
  const FiniteRing& ring() const { return inner_.ring(); }

  value_type zero() const { return {}; }
  value_type one() const { return constant(inner_.one()); }
  value_type constant(const coeff_type& a) const {
    value_type p;
    p.c.push_back(a);
    return trim(std::move(p));
  }
  value_type var() const {
    value_type p;
    p.c = {inner_.zero(), inner_.one()};
    return p;
  }
  value_type monomial(const coeff_type& a, std::size_t k) const {
    value_type p;
    p.c.assign(k + 1, inner_.zero());
    p.c[k] = a;
    return trim(std::move(p));
  }
  value_type scalar(Elem a) const { return constant(inner_.scalar(a)); }

  value_type trim(value_type p) const {
    while (!p.c.empty() && inner_.is_zero(p.c.back())) p.c.pop_back();
    return p;
  }
  int degree(const value_type& p) const { return static_cast<int>(p.c.size()) - 1; }
  coeff_type coeff(const value_type& p, std::size_t k) const { return k < p.c.size() ? p.c[k] : inner_.zero(); }

  value_type add(const value_type& a, const value_type& b) const {
    value_type r;
    r.c.resize(std::max(a.c.size(), b.c.size()), inner_.zero());
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = inner_.add(coeff(a, k), coeff(b, k));
    return trim(std::move(r));
  }
  value_type neg(const value_type& a) const {
    value_type r = a;
    for (auto& x : r.c) x = inner_.neg(x);
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
  value_type mul(const value_type& a, const value_type& b) const {
    if (a.c.empty() || b.c.empty()) return {};
    value_type r;
    r.c.assign(a.c.size() + b.c.size() - 1, inner_.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (inner_.is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = inner_.add(r.c[i + j], inner_.mul(a.c[i], b.c[j]));
    }
    return trim(std::move(r));
  }
  value_type conj(const value_type& a) const {
    value_type r = a;
    for (auto& x : r.c) x = inner_.conj(x);
    return r;
  }
  bool equal(const value_type& a, const value_type& b) const { return trim(a) == trim(b); }
  bool is_zero(const value_type& a) const { return trim(a).c.empty(); }
  value_type lambda() const { return constant(inner_.lambda()); }
  value_type lambda_bar() const { return constant(inner_.lambda_bar()); }

  bool in_lambda(const value_type& p) const {
    for (std::size_t k = 0; k < p.c.size(); ++k)
      if (!(k % 2 == 0 ? inner_.in_lambda(p.c[k]) : inner_.in_lambda_min(p.c[k]))) return false;
    return true;
  }
  bool in_lambda_min(const value_type& p) const {
    for (const auto& x : p.c)
      if (!inner_.in_lambda_min(x)) return false;
    return true;
  }
  bool in_lambda_max(const value_type& p) const {
    for (const auto& x : p.c)
      if (!inner_.in_lambda_max(x)) return false;
    return true;
  }
  // The trace equation acts coefficientwise because X is fixed by the involution.
  std::optional<value_type> solve_trace(const value_type& t) const {
    value_type z;
    for (const auto& x : t.c) {
      auto s = inner_.solve_trace(x);
      if (!s) return std::nullopt;
      z.c.push_back(*s);
    }
    return trim(std::move(z));
  }
  // True when every coefficient of X^j, j < k, vanishes.
  bool zero_below(const value_type& p, int k) const {
    for (int j = 0; j < k && j < static_cast<int>(p.c.size()); ++j)
      if (!inner_.is_zero(p.c[j])) return false;
    return true;
  }

  // X -> c X
  value_type scale_var(const value_type& p, const coeff_type& c) const {
    value_type r = p;
    coeff_type pw = inner_.one();
    for (auto& x : r.c) {
      x = inner_.mul(x, pw);
      pw = inner_.mul(pw, c);
    }
    return trim(std::move(r));
  }
  // X -> constant
  coeff_type evaluate(const value_type& p, const coeff_type& c) const {
    coeff_type acc = inner_.zero();
    for (std::size_t k = p.c.size(); k-- > 0;) acc = inner_.add(inner_.mul(acc, c), p.c[k]);
    return acc;
  }
  value_type shift(const value_type& p, std::size_t k) const {
    if (p.c.empty()) return p;
    value_type r;
    r.c.assign(k, inner_.zero());
    r.c.insert(r.c.end(), p.c.begin(), p.c.end());
    return r;
  }

  std::string show(const value_type& p) const {
    if (p.c.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
      if (inner_.is_zero(p.c[k])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + inner_.show(p.c[k]) + ")";
      if (k > 0) s += "X^" + std::to_string(k);
    }
    return s;
  }

 private:
  Inner inner_;
};

using PolyX = PolyAlgebra<ScalarAlgebra>;
using PolyXT = PolyAlgebra<PolyX>;  // outer variable X, coefficients in R[T]

template <class A>
typename A::value_type alg_pow(const A& alg, typename A::value_type x, unsigned k) {
  typename A::value_type r = alg.one();
  while (k) {
    if (k & 1u) r = alg.mul(r, x);
    x = alg.mul(x, x);
    k >>= 1u;
  }
  return r;
}

inline bool is_all_zero(const Elem& a) { return a.index == 0; }
template <class V>
bool is_all_zero(const Poly<V>& p) {
  for (const auto& x : p.c)
    if (!is_all_zero(x)) return false;
  return true;
}

// Maps every scalar coefficient through f, recursing through polynomial layers.
template <class F>
Elem map_scalars(const Elem& a, const F& f) {
  return f(a);
}
template <class V, class F>
Poly<V> map_scalars(const Poly<V>& p, const F& f) {
  Poly<V> r;
  for (const auto& x : p.c) r.c.push_back(map_scalars(x, f));
  while (!r.c.empty() && is_all_zero(r.c.back())) r.c.pop_back();
  return r;
}

}  // namespace formring
