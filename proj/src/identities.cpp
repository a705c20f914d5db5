#include "formring/identities.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

namespace formring {

namespace {

using Mat = Matrix<Elem>;

std::vector<Elem> unit_twists(const ScalarAlgebra& alg) {
  const Elem l = alg.lambda(), lb = alg.lambda_bar(), one = alg.one();
  std::set<Elem> s{one, l, lb};
  std::vector<Elem> out;
  for (Elem u : s) {
    out.push_back(u);
    out.push_back(alg.neg(u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Elem> payload_variants(const ScalarAlgebra& alg, Elem a) {
  std::vector<Elem> out{alg.zero()};
  for (Elem u : unit_twists(alg)) {
    out.push_back(alg.mul(u, a));
    out.push_back(alg.mul(u, alg.conj(a)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Indices p in [0, n) whose row or column (or partner's) the generator touches.
unsigned support_mask(const GroupDescriptor& g, const Mat& m) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  unsigned mask = 0;
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const bool off = i == j ? m(i, j) != g.ring().one() : m(i, j) != Elem{0};
      if (off) mask |= (1u << (i % n)) | (1u << (j % n));
    }
  return mask;
}

struct Cand {
  Symbol<Elem> s;
  Mat m, mi;
  unsigned mask;
};

std::vector<Cand> candidates(const GroupDescriptor& g, const std::vector<Elem>& pool) {
  const ScalarAlgebra alg = g.scalar();
  std::vector<Cand> out;
  for (const auto& s : enumerate_symbols(g, pool)) {
    Cand c{s, gen_matrix(alg, g, s), {}, 0};
    c.mi = group_inverse(alg, g, c.m);
    c.mask = support_mask(g, c.m);
    out.push_back(std::move(c));
  }
  return out;
}

bool verify(const GroupDescriptor& g, const CommutatorWitness& w, const Mat& target) {
  const ScalarAlgebra alg = g.scalar();
  return mat_equal(alg, commutator(alg, g, eval(alg, g, w.w1), eval(alg, g, w.w2)), target);
}

std::optional<CommutatorWitness> tier_single(const GroupDescriptor& g, const Symbol<Elem>& s, const Mat& target) {
  const ScalarAlgebra alg = g.scalar();
  std::vector<Elem> p1;
  if (is_vector_family(s.family)) {
    for (Elem z : s.zeta)
      for (Elem v : payload_variants(alg, z)) p1.push_back(v);
    std::sort(p1.begin(), p1.end());
    p1.erase(std::unique(p1.begin(), p1.end()), p1.end());
  } else {
    p1 = payload_variants(alg, s.a);
  }
  auto p2 = unit_twists(alg);
  p2.push_back(alg.zero());
  const auto c1 = candidates(g, p1), c2 = candidates(g, p2);
  const unsigned tmask = support_mask(g, target);
  for (int order = 0; order < 2; ++order)
    for (const auto& x : order == 0 ? c1 : c2)
      for (const auto& y : order == 0 ? c2 : c1) {
        if (!(x.mask & y.mask) || (tmask & ~(x.mask | y.mask))) continue;
        const Mat c = mat_mul(alg, mat_mul(alg, mat_mul(alg, x.m, y.m), x.mi), y.mi);
        if (mat_equal(alg, c, target)) return CommutatorWitness{single(x.s), single(y.s), "pair of generators"};
      }
  return std::nullopt;
}

// Block shape of a matrix: 1 = upper unipotent, 2 = lower unipotent, 3 = block diagonal, 0 = other.
int block_shape(const GroupDescriptor& g, const Mat& m) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  bool beta = false, gamma = false, diag_id = true;
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const bool top = i < n, left = j < n;
      if (top && !left && m(i, j) != Elem{0}) beta = true;
      if (!top && left && m(i, j) != Elem{0}) gamma = true;
      if (top == left && m(i, j) != (i == j ? g.ring().one() : Elem{0})) diag_id = false;
    }
  if (!beta && !gamma) return 3;
  if (diag_id && beta && !gamma) return 1;
  if (diag_id && gamma && !beta) return 2;
  return 0;
}

// Off-diagonal block (beta for upper, gamma for lower) flattened.
std::vector<std::uint16_t> block_key(const GroupDescriptor& g, const Mat& m, bool upper) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<std::uint16_t> k;
  k.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k.push_back(upper ? m(i, n + j).index : m(n + i, j).index);
  return k;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Commutators [g, u] with g block diagonal and u in the abelian unipotent radical, matched by additivity.
std::optional<CommutatorWitness> tier_levi(const GroupDescriptor& g, const Mat& target, bool upper, std::uint64_t seed) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& R = g.ring();
  const int n = g.n;
  const auto all = R.elements();
  const auto tkey = block_key(g, target, upper);
  const unsigned tmask = support_mask(g, target);

  // Slots: one per matrix position of the unipotent radical, options = every valid payload.
  struct Slot {
    std::vector<Symbol<Elem>> opts;
    unsigned mask = 0;
  };
  std::vector<Slot> slots;
  {
    std::map<std::tuple<int, int, int>, Slot> by_pos;
    for (const auto& s : enumerate_symbols(g, all, false)) {
      if (!is_vector_family(s.family) && s.i > s.j) continue;
      const Mat m = raw_gen_matrix(alg, g, s);
      if (!is_identity_symbol(alg, s) && block_shape(g, m) != (upper ? 1 : 2)) continue;
      auto& slot = by_pos[{static_cast<int>(s.family), s.i, s.j}];
      slot.opts.push_back(s);
    }
    for (auto& [pos, slot] : by_pos) {
      bool any = false;
      for (const auto& s : slot.opts)
        if (!is_identity_symbol(alg, s)) {
          any = true;
          slot.mask |= support_mask(g, raw_gen_matrix(alg, g, s));
        }
      if (any) slots.push_back(std::move(slot));
    }
  }
  std::vector<Symbol<Elem>> levi;
  for (const auto& s : enumerate_symbols(g, all)) {
    const Mat m = raw_gen_matrix(alg, g, s);
    if (block_shape(g, m) == 3) levi.push_back(s);
  }
  if (levi.empty() || slots.empty()) return std::nullopt;

  std::mt19937_64 rng(seed);
  std::vector<unsigned> windows;
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    if ((mask & tmask) == tmask && std::popcount(mask) <= 3) windows.push_back(mask);
  std::sort(windows.begin(), windows.end(), [](unsigned a, unsigned b) { return std::popcount(a) > std::popcount(b); });

  for (unsigned window : windows) {
    std::vector<const Slot*> ws;
    double space = 1;
    for (const auto& s : slots)
      if ((s.mask & ~window) == 0) {
        ws.push_back(&s);
        space *= static_cast<double>(s.opts.size());
      }
    if (ws.empty() || space > 4e12) continue;
    std::vector<Symbol<Elem>> wl;
    for (const auto& s : levi)
      if ((support_mask(g, raw_gen_matrix(alg, g, s)) & ~window) == 0) wl.push_back(s);
    if (wl.empty()) continue;
    // Split slots into halves of comparable size.
    std::size_t half = 0;
    double left = 1;
    while (half < ws.size() && left * static_cast<double>(ws[half]->opts.size()) <= std::sqrt(space) + 1) left *= static_cast<double>(ws[half++]->opts.size());
    if (half == 0) half = 1;
    double right = 1;
    for (std::size_t k = half; k < ws.size(); ++k) right *= static_cast<double>(ws[k]->opts.size());
    left = 1;
    for (std::size_t k = 0; k < half; ++k) left *= static_cast<double>(ws[k]->opts.size());
    if (left > 2e6 || right > 2e6) continue;

    for (int attempt = 0; attempt < 96; ++attempt) {
      Word<Elem> lw;
      const int len = 1 + static_cast<int>(rng() % 2);
      for (int k = 0; k < len; ++k) lw.push_back(Letter<Elem>{wl[rng() % wl.size()], 1});
      const Mat L = eval(alg, g, lw), Li = group_inverse(alg, g, L);
      // Per slot option: off-diagonal block of [L, u].
      std::vector<std::vector<std::vector<std::uint16_t>>> contrib(ws.size());
      for (std::size_t k = 0; k < ws.size(); ++k)
        for (const auto& s : ws[k]->opts) {
          const Mat u = raw_gen_matrix(alg, g, s);
          contrib[k].push_back(block_key(g, mat_mul(alg, mat_mul(alg, mat_mul(alg, L, u), Li), group_inverse(alg, g, u)), upper));
        }
      auto add_keys = [&](std::vector<std::uint16_t> a, const std::vector<std::uint16_t>& b) {
        for (std::size_t t = 0; t < a.size(); ++t) a[t] = R.add(Elem{a[t]}, Elem{b[t]}).index;
        return a;
      };
      auto sub_keys = [&](std::vector<std::uint16_t> a, const std::vector<std::uint16_t>& b) {
        for (std::size_t t = 0; t < a.size(); ++t) a[t] = R.sub(Elem{a[t]}, Elem{b[t]}).index;
        return a;
      };
      // Enumerate sums over a range of slots.
      auto enumerate = [&](std::size_t lo, std::size_t hi, auto&& visit) {
        std::vector<std::size_t> idx(hi - lo, 0);
        while (true) {
          std::vector<std::uint16_t> acc(tkey.size(), 0);
          for (std::size_t k = lo; k < hi; ++k) acc = add_keys(acc, contrib[k][idx[k - lo]]);
          visit(acc, idx);
          std::size_t p = 0;
          while (p < idx.size() && ++idx[p] == ws[lo + p]->opts.size()) idx[p++] = 0;
          if (p == idx.size()) break;
        }
      };
      std::unordered_map<std::vector<std::uint16_t>, std::vector<std::size_t>, KeyHash> table;
      enumerate(0, half, [&](const std::vector<std::uint16_t>& acc, const std::vector<std::size_t>& idx) { table.emplace(acc, idx); });
      std::optional<CommutatorWitness> found;
      enumerate(half, ws.size(), [&](const std::vector<std::uint16_t>& acc, const std::vector<std::size_t>& idx) {
        if (found) return;
        auto it = table.find(sub_keys(tkey, acc));
        if (it == table.end()) return;
        Word<Elem> u;
        for (std::size_t k = 0; k < half; ++k) u.push_back(Letter<Elem>{ws[k]->opts[it->second[k]], 1});
        for (std::size_t k = half; k < ws.size(); ++k) u.push_back(Letter<Elem>{ws[k]->opts[idx[k - half]], 1});
        Word<Elem> clean;
        for (const auto& l : u)
          if (!is_identity_symbol(alg, l.s)) clean.push_back(l);
        CommutatorWitness w{lw, clean, "block-diagonal conjugator against the unipotent radical"};
        if (verify(g, w, target)) found = std::move(w);
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

}  // namespace

CommutatorWitness commutator_witness(const GroupDescriptor& g, const Symbol<Elem>& s, std::uint64_t seed) {
  const ScalarAlgebra alg = g.scalar();
  const Mat target = gen_matrix(alg, g, s);
  if (is_identity(alg, target)) return CommutatorWitness{{}, {}, "identity"};
  if (auto w = tier_single(g, s, target)) return *w;
  const int shape = block_shape(g, target);
  if (shape == 1 || shape == 2)
    if (auto w = tier_levi(g, target, shape == 1, seed)) return *w;
  fail(ErrorKind::unsupported, "no commutator witness found for " + show_symbol(alg, s));
}

}  // namespace formring
