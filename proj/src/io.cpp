#include "formring/io.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

namespace formring {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::parse, "position " + std::to_string(pos_ + 1) + ": " + what + " in '" + s_ + "'");
  }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  std::string ident() {
    const std::size_t start = pos_;
    while (!done() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (start == pos_) error("expected a name");
    return s_.substr(start, pos_ - start);
  }
  long long integer() {
    const std::size_t start = pos_;
    accept('-');
    const std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      error("expected an integer");
    }
    try {
      return std::stoll(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      pos_ = start;
      error("integer out of range");
    }
  }
  std::vector<long long> integer_list() {
    std::vector<long long> out;
    if (done() || peek() == ';') return out;
    out.push_back(integer());
    while (accept(',')) out.push_back(integer());
    return out;
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

// Syntax is checked in full before any ring is built, so parse errors win over semantic ones.
struct RingSyntax {
  std::string kind;
  long long n = 0, lambda = 1;
  std::shared_ptr<RingSyntax> inner;
};

struct RawRing {
  LambdaRing base;
  bool polynomial = false;
  bool hyperbolic = false;
  RingPtr inner;  // base of a hyperbolic double
};

std::shared_ptr<RingSyntax> parse_ring(Parser& p) {
  const std::size_t at = p.pos();
  auto out = std::make_shared<RingSyntax>();
  out->kind = p.ident();
  if (out->kind == "zmod") {
    p.expect(':');
    out->n = p.integer();
    if (out->n < 2 || out->n > 65535) {
      p.set_pos(at);
      p.error("modulus must lie in 2..65535");
    }
    if (p.accept(':')) {
      const std::size_t key_at = p.pos();
      if (p.ident() != "lambda") {
        p.set_pos(key_at);
        p.error("expected 'lambda='");
      }
      p.expect('=');
      out->lambda = p.integer();
    }
    return out;
  }
  if (out->kind == "hyp" || out->kind == "poly") {
    p.expect(':');
    const std::size_t inner_at = p.pos();
    out->inner = parse_ring(p);
    if (out->inner->kind == "poly") {
      p.set_pos(inner_at);
      p.error(out->kind == "hyp" ? "hyperbolic double of a polynomial ring is not supported"
                                 : "only one polynomial variable is supported");
    }
    return out;
  }
  p.set_pos(at);
  p.error("unknown ring kind '" + out->kind + "'");
}

RawRing build_ring(const RingSyntax& r) {
  if (r.kind == "zmod") return {make_zmod(static_cast<unsigned>(r.n), r.lambda), false, false, nullptr};
  RawRing inner = build_ring(*r.inner);
  if (r.kind == "hyp") return {make_hyperbolic_double(inner.base.ring), false, true, inner.base.ring};
  inner.polynomial = true;
  return inner;
}

Elem spec_element(const FiniteRing& ring, long long v) {
  if (ring.kind() == FiniteRing::Kind::zmod) return ring.from_int(v);
  if (v < 0) fail(ErrorKind::parse, "negative element index " + std::to_string(v));
  return ring.element(static_cast<std::size_t>(v));
}

struct Options {
  std::optional<std::vector<long long>> gens, a;
};

Options parse_options(Parser& p) {
  Options o;
  while (p.accept(';')) {
    const std::size_t at = p.pos();
    const std::string key = p.ident();
    p.expect('=');
    if (key == "gens" && !o.gens) {
      o.gens = p.integer_list();
    } else if (key == "a" && !o.a) {
      o.a = p.integer_list();
    } else {
      p.set_pos(at);
      p.error("unknown or repeated option '" + key + "'");
    }
  }
  if (!p.done()) p.error("unexpected trailing text");
  return o;
}

RingSpec finish_ring(const RawRing& raw, const Options& o, const std::string& text) {
  RingSpec r;
  r.base = raw.base;
  r.polynomial = raw.polynomial;
  r.hyperbolic = raw.hyperbolic;
  r.text = text;
  if (raw.hyperbolic && !o.gens) {
    r.form = std::make_shared<const FormRing>(hyperbolic_form_ring(raw.inner));
  }
  if (!r.form) {
    std::vector<Elem> gens;
    if (o.gens)
      for (long long v : *o.gens) gens.push_back(spec_element(*raw.base.ring, v));
    r.form = std::make_shared<const FormRing>(make_form_ring(raw.base, gens));
  }
  return r;
}

}  // namespace

RingSpec parse_ring_spec(const std::string& text) {
  Parser p(text);
  const auto syntax = parse_ring(p);
  Options o = parse_options(p);
  if (o.a) fail(ErrorKind::parse, "option 'a' needs a group spec");
  return finish_ring(build_ring(*syntax), o, text);
}

GroupSpec parse_group_spec(const std::string& text, int default_n) {
  Parser p(text);
  Flavor flavor = Flavor::quadratic;
  int n = default_n;
  {
    const std::size_t at = p.pos();
    const std::string head = p.ident();
    if (head == "quadratic" || head == "q" || head == "hermitian" || head == "h") {
      flavor = (head[0] == 'q') ? Flavor::quadratic : Flavor::hermitian;
      p.expect(':');
      const std::size_t n_at = p.pos();
      const long long nn = p.integer();
      if (nn < 1 || nn > 16) {
        p.set_pos(n_at);
        p.error("half-rank must lie in 1..16");
      }
      n = static_cast<int>(nn);
      p.expect(':');
    } else {
      p.set_pos(at);
    }
  }
  const auto syntax = parse_ring(p);
  Options o = parse_options(p);
  if (o.a && !o.a->empty() && flavor != Flavor::hermitian) fail(ErrorKind::parse, "option 'a' applies only to Hermitian groups");
  const RawRing raw = build_ring(*syntax);
  if (raw.polynomial) fail(ErrorKind::unsupported, "groups over polynomial rings are built from words, not specs");
  GroupSpec g;
  g.text = text;
  g.ring = finish_ring(raw, o, text);
  std::vector<Elem> a;
  if (flavor == Flavor::hermitian) {
    if (o.a) {
      for (long long v : *o.a) a.push_back(spec_element(*raw.base.ring, v));
    } else {
      a.push_back(raw.base.ring->zero());
    }
  }
  g.group = make_group(flavor, n, g.ring.form, a);
  return g;
}

json element_json(const FiniteRing&, Elem a) { return a.index; }

Elem element_from_json(const FiniteRing& ring, const json& j) {
  if (!j.is_number_integer()) fail(ErrorKind::parse, "element must be an integer index, got " + j.dump());
  const long long v = j.get<long long>();
  if (v < 0) fail(ErrorKind::parse, "negative element index " + j.dump());
  return ring.element(static_cast<std::size_t>(v));
}

json matrix_json(const GroupSpec& spec, const Matrix<Elem>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j).index);
    rows.push_back(std::move(row));
  }
  return json{{"group", spec.text}, {"rows", rows}};
}

Matrix<Elem> matrix_from_json(const GroupDescriptor& g, const json& j) {
  const json& rows = j.is_object() ? j.at("rows") : j;
  const std::size_t m = static_cast<std::size_t>(g.dim());
  if (!rows.is_array() || rows.size() != m) fail(ErrorKind::parse, "matrix needs " + std::to_string(m) + " rows");
  Matrix<Elem> out(m, m, g.ring().zero());
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m)
      fail(ErrorKind::parse, "matrix row " + std::to_string(i + 1) + " needs " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < m; ++k) out(i, k) = element_from_json(g.ring(), rows[i][k]);
  }
  return out;
}

json vector_json(const Vector<Elem>& v) {
  json out = json::array();
  for (Elem e : v) out.push_back(e.index);
  return out;
}

Vector<Elem> vector_from_json(const GroupDescriptor& g, const json& j) {
  const json& arr = j.is_object() ? j.at("vector") : j;
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(g.dim()))
    fail(ErrorKind::parse, "vector needs " + std::to_string(g.dim()) + " entries");
  Vector<Elem> v;
  for (const auto& e : arr) v.push_back(element_from_json(g.ring(), e));
  return v;
}

namespace {

template <class V, class ToJson>
json letters_json(const Word<V>& w, const ToJson& to_json) {
  json out = json::array();
  for (const auto& l : w) {
    json e{{"family", family_name(l.s.family)}, {"i", l.s.i + 1}, {"exp", l.exp}};
    if (is_vector_family(l.s.family)) {
      json z = json::array();
      for (const auto& x : l.s.zeta) z.push_back(to_json(x));
      e["zeta"] = z;
      e["zeta_f"] = to_json(l.s.zeta_f);
    } else {
      e["j"] = l.s.j + 1;
      e["payload"] = to_json(l.s.a);
    }
    out.push_back(std::move(e));
  }
  return out;
}

template <class A, class FromJson>
Word<typename A::value_type> letters_from_json(const A& alg, const GroupDescriptor& g, const json& j,
                                               const FromJson& from_json) {
  using V = typename A::value_type;
  const json& arr = j.is_object() ? j.at("word") : j;
  if (!arr.is_array()) fail(ErrorKind::parse, "word must be a JSON array");
  Word<V> w;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const json& e = arr[k];
    const std::string where = "letter " + std::to_string(k + 1) + ": ";
    if (!e.is_object() || !e.contains("family")) fail(ErrorKind::parse, where + "needs a family");
    auto f = family_from_name(e.at("family").get<std::string>());
    if (!f) fail(ErrorKind::parse, where + "unknown family " + e.at("family").dump());
    const int i = e.at("i").get<int>() - 1;
    Letter<V> l;
    l.exp = e.value("exp", 1);
    if (l.exp != 1 && l.exp != -1) fail(ErrorKind::parse, where + "exp must be 1 or -1");
    if (is_vector_family(*f)) {
      std::vector<V> z;
      for (const auto& x : e.at("zeta")) z.push_back(from_json(x));
      if (e.contains("zeta_f")) {
        l.s.family = *f;
        l.s.i = l.s.j = i;
        l.s.a = alg.zero();
        l.s.zeta = z;
        l.s.zeta_f = from_json(e.at("zeta_f"));
      } else {
        auto s = make_vector_symbol(alg, g, *f, i, z);
        if (!s) fail(ErrorKind::constraint, where + "zeta lies outside C");
        l.s = *s;
      }
    } else {
      l.s = make_symbol(alg, *f, i, e.at("j").get<int>() - 1, from_json(e.at("payload")));
    }
    const std::string why = symbol_violation(alg, g, l.s);
    if (!why.empty()) fail(ErrorKind::constraint, where + why);
    w.push_back(std::move(l));
  }
  return w;
}

}  // namespace

json word_json(const Word<Elem>& w) {
  return letters_json(w, [](Elem a) { return json(a.index); });
}

Word<Elem> word_from_json(const GroupDescriptor& g, const json& j) {
  const auto alg = g.scalar();
  return letters_from_json(alg, g, j, [&](const json& x) { return element_from_json(g.ring(), x); });
}

json poly_word_json(const PolyWord& w) {
  return letters_json(w, [](const Poly<Elem>& p) {
    json c = json::array();
    for (Elem e : p.c) c.push_back(e.index);
    return c;
  });
}

PolyWord poly_word_from_json(const GroupDescriptor& g, const json& j) {
  const PolyX px(g.scalar());
  return letters_from_json(px, g, j, [&](const json& x) {
    Poly<Elem> p;
    if (x.is_array()) {
      for (const auto& c : x) p.c.push_back(element_from_json(g.ring(), c));
    } else {
      p.c.push_back(element_from_json(g.ring(), x));
    }
    return px.trim(p);
  });
}

json form_parameter_json(const FormRing& form) {
  auto set_json = [&](const ElementSet& s) {
    json out = json::array();
    for (Elem e : s.members()) out.push_back(form.ring().label(e));
    return out;
  };
  return json{{"ring", form.ring().name()},
              {"size", form.ring().size()},
              {"lambda", form.ring().label(form.lambda())},
              {"Lambda", set_json(form.lam())},
              {"Lambda_min", set_json(form.lam_min())},
              {"Lambda_max", set_json(form.lam_max())}};
}

}  // namespace formring
