#include "formring/generators.hpp"

#include <array>

namespace formring {

namespace {

constexpr std::array<const char*, 8> kNames{"qe", "qr", "ql", "he", "hr", "hl", "hm", "hrv"};

Elem pick(const std::vector<Elem>& pool, std::mt19937_64& rng) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

int pick_index(int lo, int hi, std::mt19937_64& rng) { return std::uniform_int_distribution<int>(lo, hi - 1)(rng); }

}  // namespace

const char* family_name(Family f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<Family> family_from_name(const std::string& name) {
  for (std::size_t k = 0; k < kNames.size(); ++k)
    if (name == kNames[k]) return static_cast<Family>(k);
  return std::nullopt;
}

std::vector<Family> families_for(const GroupDescriptor& g) {
  if (!g.hermitian()) return {Family::QE, Family::QR, Family::QL};
  return {Family::HE, Family::HR, Family::HL, Family::HM, Family::HRV};
}

Family e_family(const GroupDescriptor& g) { return g.hermitian() ? Family::HE : Family::QE; }
Family r_family(const GroupDescriptor& g) { return g.hermitian() ? Family::HR : Family::QR; }
Family l_family(const GroupDescriptor& g) { return g.hermitian() ? Family::HL : Family::QL; }

std::vector<Elem> diagonal_pool(const GroupDescriptor& g) {
  return g.hermitian() ? g.form->lam_max().members() : g.form->lam().members();
}

std::vector<Symbol<Elem>> enumerate_symbols(const GroupDescriptor& g, const std::vector<Elem>& pool, bool skip_identity) {
  const ScalarAlgebra alg = g.scalar();
  const int n = g.n, r = g.r();
  std::vector<Symbol<Elem>> out;
  auto keep = [&](const Symbol<Elem>& s) {
    if (skip_identity && is_identity_symbol(alg, s)) return;
    if (symbol_valid(alg, g, s)) out.push_back(s);
  };
  for (Family f : families_for(g)) {
    if (is_vector_family(f)) {
      if (r == 0) continue;
      std::vector<std::size_t> digits(static_cast<std::size_t>(r), 0);
      for (int i = r; i < n; ++i) {
        std::fill(digits.begin(), digits.end(), 0);
        while (true) {
          std::vector<Elem> z;
          for (std::size_t d : digits) z.push_back(pool[d]);
          if (auto s = make_vector_symbol(alg, g, f, i, z)) keep(*s);
          std::size_t k = 0;
          while (k < digits.size() && ++digits[k] == pool.size()) digits[k++] = 0;
          if (k == digits.size()) break;
        }
      }
      continue;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (Elem a : pool) keep(make_symbol(alg, f, i, j, a));
  }
  return out;
}

Symbol<Elem> random_symbol(const GroupDescriptor& g, Family f, std::mt19937_64& rng) {
  const ScalarAlgebra alg = g.scalar();
  const int n = g.n, r = g.r();
  const auto all = g.ring().elements();
  const int lo = (f == Family::HE || f == Family::HR || is_vector_family(f)) ? r : 0;
  if (is_vector_family(f)) {
    const int i = pick_index(r, n, rng);
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Elem> z;
      for (int k = 0; k < r; ++k) z.push_back(pick(all, rng));
      if (auto s = make_vector_symbol(alg, g, f, i, z)) return *s;
    }
    return *make_vector_symbol(alg, g, f, i, std::vector<Elem>(static_cast<std::size_t>(r), g.ring().zero()));
  }
  int i = pick_index(lo, n, rng);
  int j = pick_index(f == Family::HR ? r : 0, n, rng);
  if (is_e_family(f))
    while (j == i) j = pick_index(0, n, rng);
  const Elem a = (i == j) ? pick(diagonal_pool(g), rng) : pick(all, rng);
  return make_symbol(alg, f, i, j, a);
}

Symbol<Elem> random_symbol(const GroupDescriptor& g, std::mt19937_64& rng) {
  const auto fams = families_for(g);
  return random_symbol(g, fams[std::uniform_int_distribution<std::size_t>(0, fams.size() - 1)(rng)], rng);
}

Word<Elem> random_word(const GroupDescriptor& g, std::size_t length, std::mt19937_64& rng) {
  Word<Elem> w;
  for (std::size_t k = 0; k < length; ++k) w.push_back(Letter<Elem>{random_symbol(g, rng), 1});
  return w;
}

Word<Elem> gl_generator_word(const GroupDescriptor& g, const FiniteRing& base, int i, int j, Elem a) {
  const std::size_t m = base.size();
  if (i == j || g.ring().kind() != FiniteRing::Kind::hyperbolic || g.ring().size() != m * m)
    fail(ErrorKind::precondition, "gl_generator_word needs i != j over the hyperbolic double of the base ring");
  const auto alg = g.scalar();
  const Elem left(static_cast<std::uint16_t>(a.index * m + base.zero().index));
  const Elem right(static_cast<std::uint16_t>(base.zero().index * m + base.neg(a).index));
  return Word<Elem>{Letter<Elem>{make_symbol(alg, Family::QE, i, j, left), 1},
                    Letter<Elem>{make_symbol(alg, Family::QE, j, i, right), 1}};
}

}  // namespace formring
