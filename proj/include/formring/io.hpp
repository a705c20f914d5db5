#pragma once

// Text specifications for rings and groups, and JSON forms of elements, matrices, vectors and words.
//
//   ring   := zmod:<n>[:lambda=<v>] | hyp:<ring> | poly:<ring>
//   group  := [<flavor>:<n>:]<ring>[;gens=<i,...>][;a=<i,...>]
//   flavor := quadratic | q | hermitian | h
//
// Elements in gens= and a= are integers: residues for Z/n, canonical indices otherwise.
// JSON indices (i, j) are 1-based.

#include <string>

#include "json.hpp"

#include "formring/local_global.hpp"

namespace formring {

using json = nlohmann::json;

struct RingSpec {
  LambdaRing base;
  FormRingPtr form;
  bool polynomial = false;  // poly:<ring>, the coefficient ring is `base`
  bool hyperbolic = false;
  std::string text;
};

struct GroupSpec {
  RingSpec ring;
  GroupDescriptor group;
  std::string text;
};

// Parse errors carry the character position of the offending token.
RingSpec parse_ring_spec(const std::string& text);
GroupSpec parse_group_spec(const std::string& text, int default_n = 3);

json element_json(const FiniteRing& ring, Elem a);
Elem element_from_json(const FiniteRing& ring, const json& j);

json matrix_json(const GroupSpec& spec, const Matrix<Elem>& m);
Matrix<Elem> matrix_from_json(const GroupDescriptor& g, const json& j);
json vector_json(const Vector<Elem>& v);
Vector<Elem> vector_from_json(const GroupDescriptor& g, const json& j);

json word_json(const Word<Elem>& w);
Word<Elem> word_from_json(const GroupDescriptor& g, const json& j);
// Polynomial payloads are coefficient lists, constant term first.
json poly_word_json(const PolyWord& w);
PolyWord poly_word_from_json(const GroupDescriptor& g, const json& j);

json form_parameter_json(const FormRing& form);

}  // namespace formring
